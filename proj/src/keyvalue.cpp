#include "corplex/keyvalue.hpp"

#include <fstream>
#include <sstream>

#include "corplex/error.hpp"
#include "corplex/text.hpp"

namespace corplex {

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text::trim(text.substr(pos, eol - pos));
    ++line_no;
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw IngestionError("config line " + std::to_string(line_no) + ": expected key = value",
                           IngestionError::Unit::line, line_no);
    }
    auto key = text::trim(line.substr(0, eq));
    auto value = text::trim(line.substr(eq + 1));
    if (key.empty()) {
      throw IngestionError("config line " + std::to_string(line_no) + ": empty key",
                           IngestionError::Unit::line, line_no);
    }
    // strip matching quotes
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    cfg.values_[std::string(key)] = std::string(value);
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const std::string& KeyValueConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ArgumentError("missing config key '" + key + "'");
  return it->second;
}

std::vector<std::string> KeyValueConfig::list(const std::string& key) const {
  return text::split_ws(get(key));
}

}  // namespace corplex
