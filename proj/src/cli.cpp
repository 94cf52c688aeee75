#include "corplex/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "corplex/error.hpp"
#include "corplex/report.hpp"
#include "corplex/svg.hpp"
#include "corplex/text.hpp"

namespace fs = std::filesystem;

namespace corplex::cli {

namespace {

struct RunConfig {
  std::vector<std::string> inputs;
  std::string format = "auto";
  std::size_t segment_size = 100;
  std::size_t readability_sample = 1000;
  std::string family = "auto";
  std::string type_def = "surface";
  std::string tags;
  std::string rules;
  std::string syllables;
  bool adverbs = false;
  std::uint64_t seed = 1;
  bool equalize_tokens = false;
  std::string out = ".";
  std::vector<std::string> trees;
  std::size_t budget = 0;
  std::size_t growth_step = 0;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot read " + path.string(), IngestionError::Unit::line, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error("cannot write " + path.string());
}

// Vertical if most content lines carry a TAB.
bool looks_vertical(std::string_view content) {
  std::size_t lines = 0, tabbed = 0;
  std::size_t pos = 0;
  while (pos < content.size() && lines < 200) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    const std::string_view line = text::trim(content.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '<') continue;
    ++lines;
    if (line.find('\t') != std::string_view::npos) ++tabbed;
  }
  return lines > 0 && tabbed * 2 > lines;
}

struct Loaded {
  TokenStream stream;
  std::string format;
};

Loaded load_corpus(const std::string& path, const std::string& format) {
  const std::string content = read_file(path);
  const std::string fmt = format == "auto" ? (looks_vertical(content) ? "vertical" : "plain") : format;
  try {
    if (fmt == "vertical") return {read_vertical(std::string_view(content), {}, path), fmt};
    if (fmt == "plain") return {tokenize_plain(content, {}, path), fmt};
  } catch (const IngestionError& e) {
    const char* unit = e.unit() == IngestionError::Unit::line ? "line" : "byte";
    throw IngestionError(path + ": " + unit + " " + std::to_string(e.location()) + ": " + e.what(), e.unit(),
                         e.location());
  }
  throw ArgumentError("unsupported corpus format '" + fmt + "'");
}

std::optional<lnre::Family> family_of(const std::string& name) {
  if (name == "auto") return std::nullopt;
  return lnre::parse_family(name);
}

report::ReportConfig report_config(const RunConfig& rc) {
  report::ReportConfig c;
  c.segment_size = rc.segment_size;
  c.readability_sample = rc.readability_sample;
  c.family = family_of(rc.family);
  if (rc.type_def == "lemma") {
    c.type_def = TypeDefinition::lemma;
  } else if (rc.type_def != "surface") {
    throw ArgumentError("--type-def must be surface or lemma");
  }
  c.tags = rc.tags.empty() ? TagClassMap::penn(rc.adverbs) : TagClassMap::load(rc.tags);
  if (!rc.tags.empty() && rc.adverbs) c.tags.other_lexical_tags.push_back("RB");
  c.tags.validate();
  if (!rc.rules.empty()) c.rules = DLevelRules::load(rc.rules);
  if (!rc.syllables.empty()) c.syllables = SyllableCounter::load(rc.syllables);
  c.seed = rc.seed;
  c.equalize_tokens = rc.equalize_tokens;
  c.growth_step = rc.growth_step;
  return c;
}

void check_paths(const RunConfig& rc, std::size_t expected_inputs) {
  if (rc.inputs.size() != expected_inputs) {
    throw ArgumentError("expected " + std::to_string(expected_inputs) + " input file(s), got " +
                        std::to_string(rc.inputs.size()));
  }
  std::vector<std::string> paths = rc.inputs;
  paths.insert(paths.end(), rc.trees.begin(), rc.trees.end());
  for (const std::string* p : {&rc.tags, &rc.rules, &rc.syllables}) {
    if (!p->empty()) paths.push_back(*p);
  }
  for (const auto& p : paths) {
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) throw IngestionError("cannot read " + p, IngestionError::Unit::line, 0);
  }
}

std::string label_of(const std::string& path) { return fs::path(path).stem().string(); }

report::CorpusInput corpus_input(const RunConfig& rc, std::size_t index) {
  Loaded l = load_corpus(rc.inputs[index], rc.format);
  report::CorpusInput in;
  in.label = label_of(rc.inputs[index]);
  in.path = rc.inputs[index];
  in.format = l.format;
  in.stream = std::move(l.stream);
  if (index < rc.trees.size()) {
    in.trees = read_bracketed(fs::path(rc.trees[index]));
    in.trees_path = rc.trees[index];
  }
  return in;
}

int write_report(const report::ComplexityReport& rep, const fs::path& out_dir,
                 const std::vector<std::pair<report::PlotKind, std::string>>& plots, std::ostream& err) {
  fs::create_directories(out_dir);
  write_file(out_dir / "report.json", report::to_json_string(rep));
  std::ostringstream csv;
  report::write_tables_csv(csv, rep);
  write_file(out_dir / "tables.csv", csv.str());
  bool incomplete = rep.unavailable_count() > 0;
  for (const auto& [kind, name] : plots) {
    try {
      write_file(out_dir / name, report::render_svg(rep, kind));
    } catch (const RenderError& e) {
      err << "warning: " << name << " not written: " << e.what() << '\n';
      incomplete = true;
    }
  }
  for (const auto& b : rep.corpora) {
    if (!b.density.ok()) err << "note: " << b.label << ": density unavailable: " << b.density.reason << '\n';
    if (b.dlevel && b.dlevel->ok() && !(*b.dlevel)->skipped.empty()) incomplete = true;
  }
  if (rep.unavailable_count() > 0) {
    err << "partial result: " << rep.unavailable_count() << " measure(s) unavailable (see report.json)\n";
  }
  return incomplete ? partial : ok;
}

int cmd_analyze(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  check_paths(rc, 1);
  const auto config = report_config(rc);
  const auto input = corpus_input(rc, 0);
  const auto rep = report::build_report(input, nullptr, config);
  std::vector<std::pair<report::PlotKind, std::string>> plots{{report::PlotKind::growth, "growth.svg"}};
  if (input.trees) plots.emplace_back(report::PlotKind::dlevel_histogram, "dlevel.svg");
  const int code = write_report(rep, rc.out, plots, err);
  out << "wrote report to " << rc.out << '\n';
  return code;
}

int cmd_compare(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  check_paths(rc, 2);
  const auto config = report_config(rc);
  auto a = corpus_input(rc, 0);
  auto b = corpus_input(rc, 1);
  if (a.label == b.label) {
    a.label += " (A)";
    b.label += " (B)";
  }
  if (rc.equalize_tokens) {
    report::CorpusInput& larger = a.stream.size() >= b.stream.size() ? a : b;
    const std::size_t target = std::min(a.stream.size(), b.stream.size());
    if (larger.stream.size() > target) {
      larger.stream = sample_sentences(larger.stream, target, rc.seed).stream;
      out << "sampled " << larger.label << " down to " << larger.stream.size() << " tokens (budget " << target
          << ", seed " << rc.seed << ")\n";
    }
  }
  const auto rep = report::build_report(a, &b, config);
  std::vector<std::pair<report::PlotKind, std::string>> plots{{report::PlotKind::growth, "growth.svg"},
                                                              {report::PlotKind::ttr_kde, "ttr_kde.svg"},
                                                              {report::PlotKind::flesch_kde, "flesch_kde.svg"}};
  if (a.trees || b.trees) plots.emplace_back(report::PlotKind::dlevel_histogram, "dlevel.svg");
  const int code = write_report(rep, rc.out, plots, err);
  out << "wrote comparison to " << rc.out << '\n';
  return code;
}

bool is_spectrum_file(const std::string& path, const std::string& format) {
  if (format == "spectrum") return true;
  if (format != "auto") return false;
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  return first.rfind("#N=", 0) == 0;
}

std::string growth_svg(const lnre::Model& model, const FrequencySpectrum& spectrum, const GrowthCurve* observed) {
  const double n = static_cast<double>(spectrum.tokens());
  const double step = std::max(1.0, std::ceil(n / 40.0));
  std::vector<double> checkpoints;
  for (double x = step; x < n; x += step) checkpoints.push_back(x);
  checkpoints.push_back(n);
  for (double x = n + step; x <= 2 * n; x += step) checkpoints.push_back(x);
  const auto growth = lnre::extrapolate_growth(model, checkpoints);
  auto pts = [](const GrowthCurve& c) {
    std::vector<std::pair<double, double>> p;
    for (const auto& g : c.checkpoints) p.emplace_back(g.n, g.v);
    return p;
  };
  std::vector<svg::Series> series;
  if (observed) {
    series.push_back(svg::Series{"observed", pts(*observed), "#1f77b4", svg::Stroke::dotted});
  } else {
    std::vector<std::pair<double, double>> binom;
    for (double x : checkpoints) {
      if (x <= n) binom.emplace_back(x, binomial_interpolation(spectrum, x));
    }
    series.push_back(svg::Series{"binomial interpolation", binom, "#1f77b4", svg::Stroke::dotted});
  }
  auto ext = pts(growth.extrapolated);
  if (!growth.interpolated.checkpoints.empty()) {
    ext.insert(ext.begin(), {growth.interpolated.checkpoints.back().n, growth.interpolated.checkpoints.back().v});
  }
  const std::string family(lnre::to_string(model.family()));
  series.push_back(svg::Series{family + " interpolated", pts(growth.interpolated), "#d62728", svg::Stroke::solid});
  series.push_back(svg::Series{family + " extrapolated", ext, "#d62728", svg::Stroke::dashed});
  return svg::line_chart(svg::Chart{"Vocabulary growth (" + family + ")", "N (tokens)", "V (types)", 720, 450, true},
                         series);
}

int cmd_fit(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  check_paths(rc, 1);
  FrequencySpectrum spectrum;
  std::optional<GrowthCurve> observed;
  if (is_spectrum_file(rc.inputs[0], rc.format)) {
    std::ifstream in(rc.inputs[0]);
    try {
      spectrum = read_spectrum_csv(in);
    } catch (const IngestionError& e) {
      throw IngestionError(rc.inputs[0] + ": line " + std::to_string(e.location()) + ": " + e.what(), e.unit(),
                           e.location());
    }
  } else {
    // the family list is handled below; only the type definition matters here
    RunConfig type_only = rc;
    type_only.family = "auto";
    const auto config = report_config(type_only);
    Loaded l = load_corpus(rc.inputs[0], rc.format);
    const TypeSequence seq = encode_types(l.stream, config.type_def);
    spectrum = frequency_spectrum(seq);
    if (seq.size() > 0) observed = observed_growth(seq, rc.growth_step ? rc.growth_step : default_growth_step(seq.size()));
  }

  std::vector<lnre::Family> families;
  if (rc.family == "all") {
    families = {lnre::Family::zm, lnre::Family::fzm, lnre::Family::gigp};
  } else if (rc.family == "auto") {
    families = {lnre::Family::gigp};
  } else {
    families = {lnre::parse_family(rc.family)};
  }
  fs::create_directories(rc.out);
  const bool fallback = rc.family == "auto";
  std::ostringstream table;
  table << "family,status,chisq,df,p,parameters,error\n";
  std::size_t failures = 0;
  std::size_t fitted = 0;
  for (std::size_t i = 0; i < families.size(); ++i) {
    const lnre::Family family = families[i];
    const std::string name(lnre::to_string(family));
    try {
      const lnre::Model model = lnre::fit(spectrum, family);
      write_file(fs::path(rc.out) / ("model_" + name + ".json"), report::model_to_json(model).dump(2) + "\n");
      write_file(fs::path(rc.out) / ("growth_" + name + ".svg"), growth_svg(model, spectrum, observed ? &*observed : nullptr));
      std::string params;
      for (const auto& [k, v] : model.named_params()) params += (params.empty() ? "" : " ") + k + "=" + report::format_number(v);
      table << name << ",ok," << report::format_number(model.fit->chisq) << ',' << model.fit->df << ','
            << report::format_number(model.fit->p) << ',' << params << ",\n";
      out << name << ": chisq " << report::format_number(model.fit->chisq) << " df " << model.fit->df << " ("
          << params << ")\n";
      ++fitted;
      if (fallback) break;
    } catch (const FitError& e) {
      ++failures;
      err << name << ": " << e.what() << "; simplex diameter " << report::format_number(e.simplex_diameter());
      if (!e.best_params().empty()) {
        err << "; best parameters";
        for (double p : e.best_params()) err << ' ' << report::format_number(p);
      }
      err << '\n';
      table << name << ",failed,,,,," << '"' << e.what() << "\"\n";
    } catch (const Error& e) {
      ++failures;
      err << name << ": " << e.what() << '\n';
      table << name << ",failed,,,,," << '"' << e.what() << "\"\n";
    }
    if (fallback && fitted == 0 && i + 1 == families.size() && family == lnre::Family::gigp) {
      families.push_back(lnre::Family::fzm);
    } else if (fallback && fitted == 0 && i + 1 == families.size() && family == lnre::Family::fzm) {
      families.push_back(lnre::Family::zm);
    }
  }
  if (rc.family == "all") write_file(fs::path(rc.out) / "fit_comparison.csv", table.str());
  if (fitted == 0) return fatal;
  return failures > 0 && !fallback ? partial : ok;
}

int cmd_dlevel(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  check_paths(rc, 1);
  const DLevelRules rules = rc.rules.empty() ? DLevelRules{} : DLevelRules::load(rc.rules);
  const BracketedFile file = read_bracketed(fs::path(rc.inputs[0]));
  for (const auto& s : file.skipped) err << rc.inputs[0] << ": line " << s.line << ": skipped: " << s.reason << '\n';
  if (file.trees.empty()) {
    err << "no parse tree could be read from " << rc.inputs[0] << '\n';
    return fatal;
  }
  std::vector<DLevelResult> results;
  std::ostringstream csv;
  csv << "line,level,triggers\n";
  for (std::size_t i = 0; i < file.trees.size(); ++i) {
    results.push_back(classify_dlevel(file.trees[i], rules));
    std::string trig;
    for (int t : results.back().triggers) trig += (trig.empty() ? "" : ";") + std::to_string(t);
    csv << file.lines[i] << ',' << results.back().level << ',' << trig << '\n';
  }
  const DLevelDistribution d = dlevel_distribution(results, file.skipped.size());
  report::Json j;
  j["counts"] = d.counts;
  j["mean"] = d.mean;
  j["sd"] = d.sd;
  j["classified"] = d.classified;
  j["skipped"] = d.skipped;
  report::Json skipped = report::Json::array();
  for (const auto& s : file.skipped) skipped.push_back(report::Json{{"line", s.line}, {"reason", s.reason}});
  j["skipped_lines"] = skipped;
  std::size_t long_sentences = 0;
  for (const auto& r : results) long_sentences += r.over_length_cap ? 1 : 0;
  j["over_length_cap"] = long_sentences;
  fs::create_directories(rc.out);
  write_file(fs::path(rc.out) / "dlevel.csv", csv.str());
  write_file(fs::path(rc.out) / "dlevel.json", j.dump(2) + "\n");
  out << "classified " << d.classified << " sentence(s), skipped " << d.skipped << ", mean level "
      << report::format_number(d.mean) << '\n';
  return file.skipped.empty() ? ok : partial;
}

int cmd_sample(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  check_paths(rc, 1);
  if (rc.budget < 1) throw ArgumentError("sample needs --budget");
  Loaded l = load_corpus(rc.inputs[0], rc.format);
  const SampleResult s = sample_sentences(l.stream, rc.budget, rc.seed);
  fs::create_directories(rc.out);
  std::ostringstream body;
  fs::path target;
  if (s.stream.tagged() && !s.stream.empty()) {
    write_vertical(body, s.stream);
    target = fs::path(rc.out) / "sample.vrt";
  } else {
    // one sentence per line, tokens separated by spaces
    for (std::size_t i = 0; i < s.stream.sentence_count(); ++i) {
      for (std::size_t t = s.stream.sentence_begin(i); t < s.stream.sentence_end(i); ++t) {
        body << (t == s.stream.sentence_begin(i) ? "" : " ") << s.stream.tokens()[t].surface;
      }
      body << '\n';
    }
    target = fs::path(rc.out) / "sample.txt";
  }
  write_file(target, body.str());
  out << "sampled " << s.stream.sentence_count() << " sentence(s), " << s.stream.size() << " token(s) to "
      << target.string() << '\n';
  if (s.budget_exceeds_stream) {
    err << "warning: budget " << rc.budget << " exceeds the stream (" << l.stream.size()
        << " tokens); output is the whole input\n";
    return partial;
  }
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"corplex: lexical diversity, density, readability, LNRE and D-level analysis of corpora"};
  app.name(args.empty() ? "corplex" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  app.option_defaults()->always_capture_default();

  app.add_option("--format", rc.format, "Input format: auto, vertical, plain (fit also: spectrum)")
      ->check(CLI::IsMember({"auto", "vertical", "plain", "spectrum"}));
  app.add_option("--segment-size", rc.segment_size, "Word tokens per TTR segment")->check(CLI::PositiveNumber);
  app.add_option("--readability-sample", rc.readability_sample, "Word tokens per readability sample")
      ->check(CLI::PositiveNumber);
  app.add_option("--family", rc.family, "LNRE family: auto (gigp, then fzm, then zm), gigp, fzm, zm; fit also: all")
      ->check(CLI::IsMember({"auto", "gigp", "fzm", "zm", "all"}));
  app.add_option("--type-def", rc.type_def, "Type definition: surface or lemma")
      ->check(CLI::IsMember({"surface", "lemma"}));
  app.add_option("--tags", rc.tags, "Tag-class map file (default: built-in Penn map)");
  app.add_flag("--adverbs", rc.adverbs, "Count RB* adverbs as lexical words");
  app.add_option("--rules", rc.rules, "D-level rules file (default: built-in Penn rules)");
  app.add_option("--syllables", rc.syllables, "Extra syllable exceptions file (word = count)");
  app.add_option("--seed", rc.seed, "Random seed for sentence sampling");
  app.add_flag("--equalize-tokens", rc.equalize_tokens, "compare: sample the larger corpus down to the smaller");
  app.add_option("--out", rc.out, "Output directory");
  app.add_option("--trees", rc.trees, "Bracketed parse file(s), one per corpus, for D-level scoring");
  app.add_option("--budget", rc.budget, "sample: token budget");
  app.add_option("--growth-step", rc.growth_step, "Tokens between growth checkpoints (0: N/40)");

  CLI::App* analyze = app.add_subcommand("analyze", "Analyze one corpus: report.json, tables.csv, growth.svg");
  CLI::App* compare = app.add_subcommand("compare", "Compare two corpora: report with KS tests and growth Z");
  CLI::App* fit = app.add_subcommand("fit", "Fit LNRE models to a spectrum CSV or a corpus");
  CLI::App* dlevel = app.add_subcommand("dlevel", "Score bracketed parses on the D-level scale");
  CLI::App* sample = app.add_subcommand("sample", "Sample whole sentences up to a token budget");
  analyze->add_option("input", rc.inputs, "Corpus file")->required()->expected(1);
  compare->add_option("inputs", rc.inputs, "Corpus files A and B")->required()->expected(2);
  fit->add_option("input", rc.inputs, "Spectrum CSV or corpus file")->required()->expected(1);
  dlevel->add_option("trees", rc.inputs, "Bracketed trees, one per line")->required()->expected(1);
  sample->add_option("input", rc.inputs, "Corpus file")->required()->expected(1);
  for (CLI::App* sub : {analyze, compare, fit, dlevel, sample}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : fatal;
  }

  try {
    if (rc.family == "all" && !fit->parsed()) throw ArgumentError("--family all is only valid for fit");
    if (analyze->parsed()) return cmd_analyze(rc, out, err);
    if (compare->parsed()) return cmd_compare(rc, out, err);
    if (fit->parsed()) return cmd_fit(rc, out, err);
    if (dlevel->parsed()) return cmd_dlevel(rc, out, err);
    if (sample->parsed()) return cmd_sample(rc, out, err);
  } catch (const IngestionError& e) {
    err << "error: " << e.what() << '\n';
    return fatal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return fatal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return fatal;
  }
  return fatal;
}

}  // namespace corplex::cli
