#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "corplex/error.hpp"
#include "corplex/report.hpp"
#include "doctest.h"

using namespace corplex;
using namespace corplex::report;

namespace {

const std::string kData = CORPLEX_TEST_DATA;

CorpusInput load_fixture(const std::string& name) {
  std::ifstream in(kData + "/" + name + ".vrt");
  return CorpusInput{name, name + ".vrt", "vertical", read_vertical(in), std::nullopt, ""};
}

const CorpusInput& narrow() {
  static const CorpusInput c = load_fixture("narrow");
  return c;
}

const CorpusInput& broad() {
  static const CorpusInput c = load_fixture("broad");
  return c;
}

const ComplexityReport& pair_report() {
  static const ComplexityReport r = build_report(narrow(), &broad(), ReportConfig{});
  return r;
}

CorpusInput plain(const std::string& label, const std::string& text) {
  return CorpusInput{label, label + ".txt", "plain", tokenize_plain(text), std::nullopt, ""};
}

// Walks `a` and `b` together; numbers may differ by a relative 1e-9, all else must match.
void compare_json(const nlohmann::json& a, const nlohmann::json& b, const std::string& path, std::size_t& mismatches) {
  if (a.is_number_float() || b.is_number_float()) {
    const double x = a.get<double>(), y = b.get<double>();
    if (std::fabs(x - y) > 1e-9 * std::max(std::fabs(x), std::fabs(y)) + 1e-300) {
      if (mismatches++ < 10) MESSAGE(path << ": " << x << " vs " << y);
    }
    return;
  }
  if (a.type() != b.type()) {
    if (mismatches++ < 10) MESSAGE(path << ": type differs");
    return;
  }
  if (a.is_object()) {
    if (a.size() != b.size()) {
      if (mismatches++ < 10) MESSAGE(path << ": key count differs");
      return;
    }
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) {
        if (mismatches++ < 10) MESSAGE(path << ": missing key " << it.key());
        continue;
      }
      compare_json(it.value(), b.at(it.key()), path + "." + it.key(), mismatches);
    }
  } else if (a.is_array()) {
    if (a.size() != b.size()) {
      if (mismatches++ < 10) MESSAGE(path << ": array length " << a.size() << " vs " << b.size());
      return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) compare_json(a[i], b[i], path + "[" + std::to_string(i) + "]", mismatches);
  } else if (a != b) {
    if (mismatches++ < 10) MESSAGE(path << ": " << a.dump() << " vs " << b.dump());
  }
}

std::map<std::string, std::vector<std::vector<std::string>>> csv_tables(const std::string& text) {
  std::map<std::string, std::vector<std::vector<std::string>>> out;
  std::istringstream in(text);
  std::string current;
  bool header = false;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("# table: ", 0) == 0) {
      current = line.substr(9);
      header = true;
      continue;
    }
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    out[current].push_back(cells);
  }
  return out;
}

const nlohmann::json& at_path(const nlohmann::json& j, const std::string& dotted) {
  const nlohmann::json* cur = &j;
  std::istringstream in(dotted);
  for (std::string part; std::getline(in, part, '.');) cur = &cur->at(part);
  return *cur;
}

std::string text_of(const nlohmann::json& j) { return j.is_string() ? j.get<std::string>() : (j.is_null() ? "" : j.dump()); }

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("single untagged corpus marks density unavailable") {
    auto in = plain("p", "The cat sat on the mat. The dog ran to the park. A bird sang in the tree.");
    ReportConfig cfg;
    cfg.segment_size = 5;
    cfg.readability_sample = 10;
    auto r = build_report(in, nullptr, cfg);
    REQUIRE(r.corpora.size() == 1);
    CHECK_FALSE(r.comparison);
    CHECK_FALSE(r.corpora[0].density.ok());
    CHECK(r.corpora[0].density.reason == "input carries no POS tags");
    CHECK(r.corpora[0].ttr.ok());
    CHECK(r.unavailable_count() >= 1);
    auto j = to_json(r);
    CHECK(j["corpora"][0]["density"]["status"] == "unavailable");
    CHECK(j["corpora"][0]["density"]["reason"] == "input carries no POS tags");
    CHECK(j.contains("provenance"));
  }

  TEST_CASE("failing measures do not abort the report") {
    auto in = plain("tiny", "Hi.");
    auto r = build_report(in, nullptr, ReportConfig{});
    CHECK(r.corpora[0].ttr.ok());
    CHECK_FALSE(r.corpora[0].msttr.ok());
    CHECK_FALSE(r.corpora[0].readability.ok());
    CHECK_FALSE(r.corpora[0].lnre.ok());
    CHECK_NOTHROW(to_json_string(r));
  }

  TEST_CASE("corpus compared with itself") {
    auto r = build_report(narrow(), &narrow(), ReportConfig{});
    REQUIRE(r.comparison);
    for (const auto& k : r.comparison->ks) {
      REQUIRE(k.result.ok());
      CHECK(k.result->d == 0.0);
    }
    REQUIRE(r.comparison->growth_z.ok());
    CHECK(r.comparison->growth_z->z == 0.0);
  }

  TEST_CASE("golden report for the bundled pair") {
    const auto& r = pair_report();
    auto j = nlohmann::json::parse(to_json_string(r));
    j["provenance"]["tool_version"] = "golden";
    const std::string golden_path = kData + "/golden_report.json";
    if (std::getenv("CORPLEX_UPDATE_GOLDEN")) {
      std::ofstream(golden_path) << j.dump(2) << '\n';
    }
    std::ifstream in(golden_path);
    REQUIRE(in);
    auto golden = nlohmann::json::parse(in);
    std::size_t mismatches = 0;
    compare_json(j, golden, "$", mismatches);
    CHECK(mismatches == 0);
  }

  TEST_CASE("json round trip is lossless") {
    const auto text = to_json_string(pair_report());
    auto parsed = Json::parse(text);
    CHECK(parsed.dump(2) + "\n" == text);
    CHECK(Json::parse(parsed.dump()) == parsed);
    CHECK(parsed == to_json(pair_report()));
  }

  TEST_CASE("every CSV number is the JSON number") {
    const auto j = to_json(pair_report());
    std::ostringstream os;
    write_tables_csv(os, pair_report());
    const auto tables = csv_tables(os.str());
    std::map<std::string, const Json*> corpus;
    for (const auto& c : j["corpora"]) corpus[c["label"].get<std::string>()] = &c;

    std::size_t checked = 0;
    for (const auto& row : tables.at("summary")) {
      REQUIRE(row.size() == 3);
      CHECK(text_of(at_path(*corpus.at(row[0]), row[1])) == row[2]);
      ++checked;
    }
    for (const auto& row : tables.at("ks")) {
      for (const auto& k : j["comparison"]["ks"]) {
        if (k["name"] != row[0]) continue;
        CHECK(text_of(k["d"]) == row[2]);
        CHECK(text_of(k["p"]) == row[3]);
        ++checked;
      }
    }
    const auto& z = tables.at("growth_z").at(0);
    CHECK(text_of(j["comparison"]["growth_z"]["z"]) == z[1]);
    CHECK(text_of(j["comparison"]["growth_z"]["p"]) == z[2]);
    std::map<std::string, std::size_t> spectrum_row;
    for (const auto& row : tables.at("spectrum")) {
      const auto& cls = (*corpus.at(row[0]))["spectrum"]["classes"][spectrum_row[row[0]]++];
      CHECK(text_of(cls[0]) == row[1]);
      CHECK(text_of(cls[1]) == row[2]);
      ++checked;
    }
    for (const auto& row : tables.at("series")) {
      const auto& c = *corpus.at(row[0]);
      const std::size_t i = std::stoul(row[2]);
      const Json* series = nullptr;
      if (row[1] == "ttr_per_segment") series = &c["msttr"]["series"];
      if (row[1] == "flesch_per_sample") series = &c["readability"]["flesch_series"];
      if (row[1] == "flesch_kincaid_per_sample") series = &c["readability"]["flesch_kincaid_series"];
      REQUIRE(series);
      CHECK(text_of((*series)[i]) == row[3]);
      ++checked;
    }
    for (const auto& row : tables.at("lnre_models")) {
      CHECK(text_of((*corpus.at(row[0]))["lnre"]["model"]["params"][row[2]]) == row[3]);
      ++checked;
    }
    CHECK(checked > 1000);
  }

  TEST_CASE("model json exchange") {
    auto m = lnre::Model::finite_zipf_mandelbrot(0.6, 1e-7, 0.03);
    m.fitted_n = 1e4;
    m.fit = lnre::GoodnessOfFit{12.5, 13, 0.48, 15};
    auto j = model_to_json(m);
    CHECK(j["family"] == "fzm");
    auto back = model_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.family() == lnre::Family::fzm);
    CHECK(back.named_params() == m.named_params());
    CHECK(back.fitted_n == 1e4);
    auto zm = model_to_json(lnre::Model::zipf_mandelbrot(0.5, 0.1));
    CHECK(zm["S"].is_null());
    CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"family":"zm","params":{"alpha":2}})")), ArgumentError);
  }

  TEST_CASE("growth plot uses three stroke styles") {
    const auto svg = render_svg(pair_report(), PlotKind::growth);
    CHECK(svg.find("stroke-dasharray=\"2,4\"") != std::string::npos);  // observed, dotted
    CHECK(svg.find("stroke-dasharray=\"8,5\"") != std::string::npos);  // extrapolated, dashed
    CHECK(svg.find("<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points") != std::string::npos);
    CHECK(svg == render_svg(pair_report(), PlotKind::growth));
  }

  TEST_CASE("KDE overlay shows the lower-spread series with the higher peak") {
    const auto& r = pair_report();
    auto peak = [](const KdeCurve& k) {
      double best = 0;
      for (const auto& p : k.points) best = std::max(best, p.density);
      return best;
    };
    const auto& a = r.corpora[0];
    const auto& b = r.corpora[1];
    REQUIRE(a.ttr_kde.ok());
    REQUIRE(b.ttr_kde.ok());
    const double sd_a = stats::mean_sd(a.msttr->series.values).sd;
    const double sd_b = stats::mean_sd(b.msttr->series.values).sd;
    CHECK((sd_a < sd_b) == (peak(*a.ttr_kde) > peak(*b.ttr_kde)));
    const auto svg = render_svg(r, PlotKind::ttr_kde);
    CHECK(svg.find(">narrow<") != std::string::npos);
    CHECK(svg.find(">broad<") != std::string::npos);
  }

  TEST_CASE("missing series is a render error naming it") {
    try {
      render_svg(pair_report(), PlotKind::dlevel_histogram);
      FAIL("expected RenderError");
    } catch (const RenderError& e) {
      CHECK(std::string(e.what()).find("D-level") != std::string::npos);
    }
  }

  TEST_CASE("D-level block appears when trees are supplied") {
    auto in = plain("p", "I ran. You left because it rained.");
    std::istringstream trees(
        "(S (NP (PRP I)) (VP (VBD ran)) (. .))\n"
        "(S (NP (PRP You)) (VP (VBD left) (SBAR (IN because) (S (NP (PRP it)) (VP (VBD rained))))) (. .))\n(S (NP\n");
    in.trees = read_bracketed(trees);
    in.trees_path = "p.trees";
    auto r = build_report(in, nullptr, ReportConfig{});
    REQUIRE(r.corpora[0].dlevel);
    REQUIRE(r.corpora[0].dlevel->ok());
    const auto& d = (**r.corpora[0].dlevel).distribution;
    CHECK(d.counts[0] == 1);
    CHECK(d.counts[5] == 1);
    CHECK(d.skipped == 1);
    CHECK(to_json(r)["corpora"][0].contains("dlevel"));
    CHECK_NOTHROW(render_svg(r, PlotKind::dlevel_histogram));
  }

  TEST_CASE("config hash follows the settings") {
    ReportConfig a, b;
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().rfind("fnv1a64:", 0) == 0);
    b.segment_size = 50;
    CHECK(a.hash() != b.hash());
    b = ReportConfig{};
    b.tags = TagClassMap::penn(true);
    CHECK(a.hash() != b.hash());
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(2.0) == "2.0");
    CHECK(format_number(NAN).empty());
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  }
}
