#include "corplex/dlevel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>

#include "corplex/error.hpp"
#include "corplex/text.hpp"

namespace corplex {

std::string ParseTree::category() const {
  if (label.empty() || label[0] == '-') return label;
  const auto cut = label.find_first_of("-=");
  return cut == std::string::npos ? label : label.substr(0, cut);
}

std::vector<std::string> ParseTree::function_tags() const {
  std::vector<std::string> tags;
  if (label.empty() || label[0] == '-') return tags;
  std::size_t pos = label.find('-');
  while (pos != std::string::npos) {
    const std::size_t next = label.find_first_of("-=", pos + 1);
    std::string tag = label.substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1);
    const bool index = !tag.empty() && std::all_of(tag.begin(), tag.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (!tag.empty() && !index) tags.push_back(tag);
    if (next == std::string::npos || label[next] == '=') break;
    pos = next;
  }
  return tags;
}

std::size_t ParseTree::leaf_count() const {
  if (leaf) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

std::vector<std::string> ParseTree::words() const {
  std::vector<std::string> out;
  auto walk = [&](const ParseTree& t, auto& self) -> void {
    if (t.leaf) {
      out.push_back(*t.leaf);
      return;
    }
    for (const auto& c : t.children) self(c, self);
  };
  walk(*this, walk);
  return out;
}

namespace {

class BracketParser {
 public:
  explicit BracketParser(std::string_view s) : s_(s) {}

  ParseTree parse() {
    skip_ws();
    ParseTree t = node();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing text after the tree");
    while ((t.label.empty() || t.label == "ROOT" || t.label == "TOP") && !t.leaf && t.children.size() == 1) {
      ParseTree inner = std::move(t.children.front());
      t = std::move(inner);
    }
    if (!t.leaf && t.children.empty()) fail("empty tree");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw IngestionError("bracketed tree: " + why + " at column " + std::to_string(pos_ + 1),
                         IngestionError::Unit::line, 1);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r' || s_[pos_] == '\n')) ++pos_;
  }

  std::string atom() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')' && s_[pos_] != ' ' && s_[pos_] != '\t' &&
           s_[pos_] != '\r' && s_[pos_] != '\n') {
      ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  ParseTree node() {
    if (pos_ >= s_.size() || s_[pos_] != '(') fail("expected '('");
    ++pos_;
    ParseTree t;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')') t.label = atom();
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) fail("unbalanced parentheses");
      const char c = s_[pos_];
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c == '(') {
        if (t.leaf) fail("node has both a word and children");
        t.children.push_back(node());
      } else {
        if (t.leaf || !t.children.empty()) fail("unexpected word");
        t.leaf = atom();
      }
    }
    if (t.label.empty() && t.leaf) fail("word without a category");
    if (!t.leaf && t.children.empty()) fail("empty constituent");
    return t;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

bool is_empty_element(const ParseTree& t) {
  if (t.leaf) return t.label == "-NONE-";
  return std::all_of(t.children.begin(), t.children.end(), is_empty_element);
}

std::string lower_word(const ParseTree& t) {
  const auto w = t.words();
  return w.empty() ? std::string() : text::lowercase(w.front());
}

class Classifier {
 public:
  Classifier(const ParseTree& root, const DLevelRules& rules) : rules_(rules) {
    collect_mains(root);
    for (const ParseTree* m : mains_) {
      if (const ParseTree* s = subject_of(*m)) main_subjects_.push_back(s);
    }
    visit(root);
  }

  std::set<int> triggers;

 private:
  using Kids = std::vector<const ParseTree*>;

  static Kids kids(const ParseTree& t) {
    Kids out;
    for (const auto& c : t.children) {
      if (!is_empty_element(c)) out.push_back(&c);
    }
    return out;
  }

  bool is_clause(const ParseTree& t) const { return rules_.clause_labels.count(t.category()) != 0; }
  bool is_verb(const ParseTree& t) const { return rules_.verb_tags.count(t.category()) != 0; }
  bool is_coordinator(const ParseTree& t) const { return rules_.coordinator_tags.count(t.category()) != 0; }

  // Clause coordination: a coordinator plus at least two clause daughters.
  bool coordinates_clauses(const ParseTree& t) const {
    std::size_t clauses = 0;
    bool cc = false;
    for (const ParseTree* k : kids(t)) {
      clauses += is_clause(*k) ? 1 : 0;
      cc = cc || is_coordinator(*k);
    }
    return cc && clauses >= 2;
  }

  void collect_mains(const ParseTree& t) {
    const std::string cat = t.category();
    if (cat == "SBARQ") {
      for (const ParseTree* k : kids(t)) {
        if (is_clause(*k)) collect_mains(*k);
      }
      return;
    }
    if (!is_clause(t)) return;
    mains_.push_back(&t);
    if (coordinates_clauses(t)) {
      for (const ParseTree* k : kids(t)) {
        if (is_clause(*k)) collect_mains(*k);
      }
    }
  }

  // Subject NP of a clause, or nullptr when the subject is absent or empty.
  const ParseTree* subject_of(const ParseTree& clause) const {
    for (const auto& c : clause.children) {
      const auto tags = c.function_tags();
      if (std::find(tags.begin(), tags.end(), "SBJ") != tags.end()) return is_empty_element(c) ? nullptr : &c;
    }
    const Kids k = kids(clause);
    const std::string cat = clause.category();
    if (cat == "SQ" || cat == "SINV") {
      for (const ParseTree* c : k) {
        if (c->category() == "NP") return c;
      }
      return nullptr;
    }
    const ParseTree* subject = nullptr;
    for (const ParseTree* c : k) {
      const std::string cc = c->category();
      if (cc == "VP") break;
      if (cc == "NP") subject = c;
    }
    return subject;
  }

  enum class Finiteness { finite, nonfinite, none };

  Finiteness finiteness_of_vp(const ParseTree& vp) const {
    for (const ParseTree* k : kids(vp)) {
      const std::string cat = k->category();
      if (cat == "TO") return Finiteness::nonfinite;
      if (is_verb(*k)) return rules_.finite_verb_tags.count(cat) ? Finiteness::finite : Finiteness::nonfinite;
      if (cat == "VP") return finiteness_of_vp(*k);
    }
    return Finiteness::none;
  }

  Finiteness finiteness(const ParseTree& clause) const {
    for (const ParseTree* k : kids(clause)) {
      if (k->category() == "VP") return finiteness_of_vp(*k);
    }
    return Finiteness::none;
  }

  std::string introducer(const ParseTree& sbar) const {
    const Kids k = kids(sbar);
    if (k.empty()) return {};
    const std::string cat = k.front()->category();
    if (cat == "S" || is_clause(*k.front())) return {};
    return lower_word(*k.front());
  }

  // Previous sibling after skipping transparent material, or nullptr.
  const ParseTree* previous(const Kids& k, std::size_t i) const {
    while (i > 0) {
      --i;
      if (!rules_.transparent_tags.count(k[i]->category())) return k[i];
    }
    return nullptr;
  }

  bool directly_after_verb(const Kids& k, std::size_t i) const {
    const ParseTree* p = previous(k, i);
    return p && is_verb(*p);
  }

  bool after_object(const Kids& k, std::size_t i) const {
    const ParseTree* p = previous(k, i);
    return p && p->category() == "NP";
  }

  bool in_main_subject(std::size_t depth) const {
    // walk up through NP ancestors starting at path_[depth]
    for (std::size_t d = depth + 1; d-- > 0;) {
      const ParseTree* n = path_[d];
      if (std::find(main_subjects_.begin(), main_subjects_.end(), n) != main_subjects_.end()) return true;
      if (n->category() != "NP") return false;
    }
    return false;
  }

  bool clausal_subject(const ParseTree& clause, const Kids& k, std::size_t i) const {
    if (clause.category() != "S" || subject_of(clause) != nullptr) return false;
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      if (k[j]->category() == "VP") return true;
    }
    return false;
  }

  bool is_subject(const ParseTree& np, const ParseTree* parent) const {
    return parent && is_clause(*parent) && subject_of(*parent) == &np;
  }

  void sbar(const ParseTree& n, const ParseTree& p, const Kids& k, std::size_t i, std::size_t depth) {
    const std::string pc = p.category();
    const std::string intro = introducer(n);
    const bool adverbial = rules_.adverbial_subordinators.count(intro) != 0;
    const bool complement = rules_.complement_words.count(intro) != 0;
    if (pc == "NP") {
      triggers.insert(in_main_subject(depth - 1) ? 6 : 3);
    } else if (rules_.comparative_words.count(intro)) {
      triggers.insert(4);
    } else if (pc == "PP") {
      // handled with the PP
    } else if (is_clause(p)) {
      triggers.insert(clausal_subject(p, k, i) ? 6 : 5);
    } else if (pc == "VP") {
      if (intro.empty() || intro == "that") {
        triggers.insert(3);
      } else if (adverbial) {
        triggers.insert(complement && (directly_after_verb(k, i) || after_object(k, i)) ? 3 : 5);
      } else {
        triggers.insert(3);
      }
    } else {
      triggers.insert(adverbial && !complement ? 5 : 3);
    }
  }

  void clause_s(const ParseTree& n, const ParseTree& p, const Kids& k, std::size_t i, std::size_t depth) {
    const std::string pc = p.category();
    const Finiteness fin = finiteness(n);
    const bool subj = subject_of(n) != nullptr;
    if (pc == "SBAR") {
      if (fin == Finiteness::nonfinite && subj) triggers.insert(4);
    } else if (is_clause(p)) {
      if (coordinates_clauses(p)) return;
      if (clausal_subject(p, k, i)) {
        triggers.insert(6);
      } else if (fin == Finiteness::finite && subj) {
        triggers.insert(3);
      } else {
        triggers.insert(5);
      }
    } else if (pc == "VP") {
      if (fin == Finiteness::finite && subj) {
        triggers.insert(3);
      } else if (subj) {
        triggers.insert(4);
      } else if (directly_after_verb(k, i)) {
        triggers.insert(1);
      } else if (after_object(k, i)) {
        triggers.insert(4);
      } else {
        triggers.insert(5);
      }
    } else if (pc == "ADJP") {
      triggers.insert(subj ? 4 : 1);
    } else if (pc == "NP") {
      const bool only_clauses = std::all_of(k.begin(), k.end(), [&](const ParseTree* c) {
        return is_clause(*c) || c->category() == "SBAR";
      });
      if (!only_clauses) triggers.insert(in_main_subject(depth - 1) ? 6 : 3);
    }
  }

  void visit(const ParseTree& n) {
    path_.push_back(&n);
    const std::size_t depth = path_.size() - 1;
    const ParseTree* parent = depth > 0 ? path_[depth - 1] : nullptr;
    const std::string cat = n.category();

    if (parent) {
      const Kids pk = kids(*parent);
      const auto it = std::find(pk.begin(), pk.end(), &n);
      const std::size_t i = static_cast<std::size_t>(it - pk.begin());
      if (it != pk.end()) {
        if (cat == "SBAR") {
          sbar(n, *parent, pk, i, depth);
        } else if (cat == "S") {
          clause_s(n, *parent, pk, i, depth);
        } else if (cat == "VP" && parent->category() == "NP" && i > 0) {
          // reduced relative
          triggers.insert(in_main_subject(depth - 1) ? 6 : 3);
        }
      }
    }

    if (!n.leaf) {
      const Kids k = kids(n);
      bool cc = false;
      std::size_t vps = 0;
      for (const ParseTree* c : k) {
        cc = cc || is_coordinator(*c);
        vps += c->category() == "VP" ? 1 : 0;
      }
      if (is_clause(n) && coordinates_clauses(n)) triggers.insert(2);
      if (cat == "VP" && cc && vps >= 2) triggers.insert(2);
      if (cat == "NP") {
        if (cc && is_subject(n, parent)) triggers.insert(2);
        if (is_subject(n, parent) && !k.empty() &&
            std::all_of(k.begin(), k.end(), [&](const ParseTree* c) {
              return c->category() == "S" || c->category() == "SBAR";
            })) {
          triggers.insert(6);
        }
        // apposition: NP , NP [,] without a coordinator
        if (!cc && (k.size() == 3 || (k.size() == 4 && k[3]->category() == ",")) &&
            k[0]->category() == "NP" && k[1]->category() == "," && k[2]->category() == "NP") {
          triggers.insert(4);
        }
      }
      if (cat == "PP" && parent && (parent->category() == "VP" || is_clause(*parent))) {
        for (const ParseTree* c : k) {
          if (c->category() == "S" || c->category() == "SBAR") triggers.insert(5);
        }
      }
      if (cat != "QP") {
        for (std::size_t j = 0; j + 1 < k.size(); ++j) {
          if (k[j]->leaf && rules_.comparative_words.count(text::lowercase(*k[j]->leaf))) triggers.insert(4);
        }
      }
      for (const auto& c : n.children) visit(c);
    }
    path_.pop_back();
  }

  const DLevelRules& rules_;
  std::vector<const ParseTree*> mains_;
  std::vector<const ParseTree*> main_subjects_;
  std::vector<const ParseTree*> path_;
};

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

}  // namespace

ParseTree parse_bracketed(std::string_view line) { return BracketParser(line).parse(); }

BracketedFile read_bracketed(std::istream& in) {
  BracketedFile out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (text::trim(line).empty()) continue;
    try {
      out.trees.push_back(parse_bracketed(line));
      out.lines.push_back(number);
    } catch (const IngestionError& e) {
      out.skipped.push_back(SkippedLine{number, e.what()});
    }
  }
  return out;
}

BracketedFile read_bracketed(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open " + path.string(), IngestionError::Unit::line, 0);
  return read_bracketed(in);
}

DLevelRules DLevelRules::from_config(const KeyValueConfig& config) {
  DLevelRules r;
  const std::pair<const char*, std::set<std::string>*> lists[] = {
      {"clause_labels", &r.clause_labels},
      {"verb_tags", &r.verb_tags},
      {"finite_verb_tags", &r.finite_verb_tags},
      {"coordinator_tags", &r.coordinator_tags},
      {"adverbial_subordinators", &r.adverbial_subordinators},
      {"complement_words", &r.complement_words},
      {"comparative_words", &r.comparative_words},
      {"transparent_tags", &r.transparent_tags},
  };
  for (const auto& [key, value] : config.entries()) {
    if (key == "length_cap") {
      try {
        r.length_cap = std::stoul(value);
      } catch (const std::exception&) {
        throw ArgumentError("D-level rules: length_cap must be a non-negative integer");
      }
      continue;
    }
    const auto it = std::find_if(std::begin(lists), std::end(lists), [&](const auto& l) { return key == l.first; });
    if (it == std::end(lists)) throw ArgumentError("D-level rules: unknown key '" + key + "'");
    *it->second = as_set(config.list(key));
  }
  return r;
}

DLevelRules DLevelRules::load(const std::filesystem::path& path) { return from_config(KeyValueConfig::load(path)); }

DLevelResult classify_dlevel(const ParseTree& tree, const DLevelRules& rules) {
  Classifier c(tree, rules);
  DLevelResult r;
  r.triggers = std::move(c.triggers);
  if (r.triggers.size() >= 2) {
    r.level = 7;
  } else if (!r.triggers.empty()) {
    r.level = *r.triggers.begin();
  }
  r.over_length_cap = tree.leaf_count() > rules.length_cap;
  return r;
}

DLevelDistribution dlevel_distribution(std::span<const DLevelResult> results, std::size_t skipped) {
  if (results.empty()) throw UndefinedMeasure("D-level distribution: no sentence was classified");
  DLevelDistribution d;
  d.skipped = skipped;
  d.classified = results.size();
  double sum = 0;
  for (const auto& r : results) {
    ++d.counts.at(static_cast<std::size_t>(r.level));
    sum += r.level;
  }
  const double n = static_cast<double>(results.size());
  d.mean = sum / n;
  double ss = 0;
  for (const auto& r : results) ss += (r.level - d.mean) * (r.level - d.mean);
  d.sd = std::sqrt(ss / n);
  return d;
}

}  // namespace corplex
