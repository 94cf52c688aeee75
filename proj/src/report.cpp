#include "corplex/report.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

#include "corplex/error.hpp"
#include "corplex/svg.hpp"

#ifndef CORPLEX_VERSION
#define CORPLEX_VERSION "unknown"
#endif

namespace corplex::report {

namespace {

template <typename T, typename F>
Measure<T> attempt(F&& compute) {
  try {
    return Measure<T>{compute(), {}};
  } catch (const Error& e) {
    return Measure<T>::unavailable(e.what());
  }
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

std::string join(const std::set<std::string>& s) { return join(std::vector<std::string>(s.begin(), s.end())); }

// Expected V, V1, V2 in a random subsample of n' of the N tokens.
GrowthCurve binomial_curve(const FrequencySpectrum& spectrum, const GrowthCurve& observed) {
  GrowthCurve out;
  out.kind = GrowthKind::interpolated;
  const double n = static_cast<double>(spectrum.tokens());
  for (const auto& pt : observed.checkpoints) {
    const double q = pt.n / n;
    double v1 = 0, v2 = 0;
    for (const auto& [m, vm] : spectrum.classes()) {
      const double md = static_cast<double>(m);
      if (q >= 1) {
        v1 += m == 1 ? static_cast<double>(vm) : 0.0;
        v2 += m == 2 ? static_cast<double>(vm) : 0.0;
        continue;
      }
      const double log_rest = std::log1p(-q);
      v1 += static_cast<double>(vm) * md * q * std::exp((md - 1) * log_rest);
      if (m >= 2) v2 += static_cast<double>(vm) * md * (md - 1) / 2 * q * q * std::exp((md - 2) * log_rest);
    }
    out.checkpoints.push_back(GrowthPoint{pt.n, binomial_interpolation(spectrum, pt.n), v1, v2});
  }
  return out;
}

Measure<LnreSummary> fit_lnre(const FrequencySpectrum& spectrum, const ReportConfig& config, std::size_t step) {
  std::vector<lnre::Family> order;
  if (config.family) {
    order = {*config.family};
  } else {
    order = {lnre::Family::gigp, lnre::Family::fzm, lnre::Family::zm};
  }
  std::vector<FitAttempt> failed;
  for (lnre::Family family : order) {
    try {
      LnreSummary s{lnre::fit(spectrum, family), failed, {}};
      const double n = static_cast<double>(spectrum.tokens());
      std::vector<double> checkpoints;
      const double stop = n * config.extrapolate_factor;
      for (double x = static_cast<double>(step); x < n; x += static_cast<double>(step)) checkpoints.push_back(x);
      checkpoints.push_back(n);
      for (double x = n + static_cast<double>(step); x <= stop; x += static_cast<double>(step)) {
        checkpoints.push_back(x);
      }
      s.growth = lnre::extrapolate_growth(s.model, checkpoints);
      return Measure<LnreSummary>{std::move(s), {}};
    } catch (const Error& e) {
      failed.push_back(FitAttempt{std::string(lnre::to_string(family)), e.what()});
    }
  }
  std::string why;
  for (const auto& f : failed) why += (why.empty() ? "" : "; ") + f.family + ": " + f.error;
  return Measure<LnreSummary>::unavailable(why);
}

Measure<KdeCurve> kde_of(const Measure<std::vector<double>>& values) {
  if (!values.ok()) return Measure<KdeCurve>::unavailable(values.reason);
  return attempt<KdeCurve>([&] {
    KdeCurve c;
    c.bandwidth = stats::silverman_bandwidth(*values);
    c.points = stats::kde(*values, c.bandwidth);
    return c;
  });
}

CorpusBlock analyze_corpus(const CorpusInput& input, const ReportConfig& config) {
  CorpusBlock b;
  const TokenStream& stream = input.stream;
  b.label = input.label;
  b.tokens = stream.size();
  b.words = stream.word_count();
  b.sentences = stream.sentence_count();
  b.documents = stream.document_count();

  const TypeSequence seq = encode_types(stream, config.type_def);
  b.types = seq.type_count;
  b.spectrum = frequency_spectrum(seq);
  b.ttr = attempt<double>([&] { return ttr(seq); });
  b.msttr = attempt<MsttrResult>([&] { return msttr(seq, config.segment_size); });
  b.corrected = attempt<CorrectedIndices>([&] { return corrected_indices(b.spectrum); });
  b.growth_rate = attempt<double>([&] { return growth_rate(b.spectrum); });

  if (!stream.tagged()) {
    b.density = Measure<DensityRatios>::unavailable("input carries no POS tags");
  } else {
    b.density = attempt<DensityRatios>([&] { return lexical_density(stream, config.tags); });
  }

  b.readability = attempt<ReadabilitySummary>([&] {
    ReadabilitySummary r;
    r.flesch_series = readability_series(stream, config.readability_sample, ReadabilityFormula::flesch_reading_ease,
                                         config.syllables);
    r.kincaid_series =
        readability_series(stream, config.readability_sample, ReadabilityFormula::flesch_kincaid, config.syllables);
    r.flesch = stats::mean_sd(r.flesch_series.values);
    r.kincaid = stats::mean_sd(r.kincaid_series.values);
    r.flesch_band = classify_flesch(r.flesch.mean).name;
    return r;
  });
  b.msl = attempt<stats::MeanSd>([&] { return mean_sentence_length(stream); });

  b.growth_step = config.growth_step ? config.growth_step : default_growth_step(seq.size());
  if (seq.size() > 0) {
    b.observed_growth = observed_growth(seq, b.growth_step);
    b.binomial_growth = binomial_curve(b.spectrum, b.observed_growth);
  }
  b.lnre = fit_lnre(b.spectrum, config, b.growth_step);

  Measure<std::vector<double>> ttr_values =
      b.msttr.ok() ? Measure<std::vector<double>>{b.msttr->series.values, {}}
                   : Measure<std::vector<double>>::unavailable(b.msttr.reason);
  Measure<std::vector<double>> flesch_values =
      b.readability.ok() ? Measure<std::vector<double>>{b.readability->flesch_series.values, {}}
                         : Measure<std::vector<double>>::unavailable(b.readability.reason);
  b.ttr_kde = kde_of(ttr_values);
  b.flesch_kde = kde_of(flesch_values);

  if (input.trees) {
    b.dlevel = attempt<DLevelSummary>([&] {
      DLevelSummary d;
      for (const auto& tree : input.trees->trees) d.results.push_back(classify_dlevel(tree, config.rules));
      d.lines = input.trees->lines;
      d.skipped = input.trees->skipped;
      d.distribution = dlevel_distribution(d.results, d.skipped.size());
      return d;
    });
  }
  return b;
}

Measure<stats::KsResult> ks_between(const std::vector<double>* a, const std::vector<double>* b,
                                    const std::string& why) {
  if (!a || !b) return Measure<stats::KsResult>::unavailable(why);
  return attempt<stats::KsResult>([&] { return stats::ks_two_sample(*a, *b); });
}

Json curve_json(const GrowthCurve& c) {
  Json arr = Json::array();
  for (const auto& p : c.checkpoints) {
    arr.push_back(Json{{"n", number(p.n)}, {"v", number(p.v)}, {"v1", number(p.v1)}, {"v2", number(p.v2)}});
  }
  return arr;
}

Json series_json(const std::vector<double>& v) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(number(x));
  return arr;
}

template <typename T, typename F>
Json measure_json(const Measure<T>& m, F&& fill) {
  Json j;
  if (!m.ok()) {
    j["status"] = "unavailable";
    j["reason"] = m.reason;
    return j;
  }
  j["status"] = "ok";
  fill(j, *m);
  return j;
}

Json corpus_json(const CorpusBlock& b) {
  Json j;
  j["label"] = b.label;
  j["counts"] = Json{{"tokens", b.tokens},
                     {"word_tokens", b.words},
                     {"sentences", b.sentences},
                     {"documents", b.documents},
                     {"types", b.types}};
  j["ttr"] = measure_json(b.ttr, [](Json& o, double v) { o["value"] = number(v); });
  j["msttr"] = measure_json(b.msttr, [](Json& o, const MsttrResult& m) {
    o["mean"] = number(m.mean);
    o["segment_size"] = m.series.segment_size;
    o["segments"] = m.series.values.size();
    o["series"] = series_json(m.series.values);
  });
  j["corrected_indices"] = measure_json(b.corrected, [](Json& o, const CorrectedIndices& c) {
    o["herdan_c"] = number(c.herdan_c);
    o["guiraud_r"] = number(c.guiraud_r);
    o["yule_k"] = number(c.yule_k);
  });
  j["density"] = measure_json(b.density, [](Json& o, const DensityRatios& d) {
    o["noun_ratio"] = number(d.noun_ratio);
    o["verb_ratio"] = number(d.verb_ratio);
    o["adj_ratio"] = number(d.adj_ratio);
    o["lexical_ratio"] = number(d.lexical_ratio);
  });
  j["readability"] = measure_json(b.readability, [](Json& o, const ReadabilitySummary& r) {
    o["sample_size"] = r.flesch_series.segment_size;
    o["samples"] = r.flesch_series.values.size();
    o["flesch"] = Json{{"mean", number(r.flesch.mean)}, {"sd", number(r.flesch.sd)}};
    o["flesch_kincaid"] = Json{{"mean", number(r.kincaid.mean)}, {"sd", number(r.kincaid.sd)}};
    o["flesch_band"] = r.flesch_band;
    o["flesch_series"] = series_json(r.flesch_series.values);
    o["flesch_kincaid_series"] = series_json(r.kincaid_series.values);
  });
  j["mean_sentence_length"] = measure_json(b.msl, [](Json& o, const stats::MeanSd& m) {
    o["mean"] = number(m.mean);
    o["sd"] = number(m.sd);
  });
  j["growth_rate"] = measure_json(b.growth_rate, [](Json& o, double v) { o["value"] = number(v); });

  Json classes = Json::array();
  for (const auto& [m, vm] : b.spectrum.classes()) classes.push_back(Json::array({m, vm}));
  j["spectrum"] = Json{{"N", b.spectrum.tokens()}, {"V", b.spectrum.types()}, {"classes", classes}};
  j["growth"] = Json{{"step", b.growth_step},
                     {"observed", curve_json(b.observed_growth)},
                     {"binomial_interpolation", curve_json(b.binomial_growth)}};
  j["lnre"] = measure_json(b.lnre, [](Json& o, const LnreSummary& s) {
    o["model"] = model_to_json(s.model);
    Json failed = Json::array();
    for (const auto& f : s.failed) failed.push_back(Json{{"family", f.family}, {"error", f.error}});
    o["failed_attempts"] = failed;
    o["interpolated"] = curve_json(s.growth.interpolated);
    o["extrapolated"] = curve_json(s.growth.extrapolated);
  });
  auto kde_json = [](Json& o, const KdeCurve& c) {
    o["bandwidth"] = number(c.bandwidth);
    Json pts = Json::array();
    for (const auto& p : c.points) pts.push_back(Json::array({number(p.x), number(p.density)}));
    o["points"] = pts;
  };
  j["kde"] = Json{{"ttr", measure_json(b.ttr_kde, kde_json)}, {"flesch", measure_json(b.flesch_kde, kde_json)}};
  if (b.dlevel) {
    j["dlevel"] = measure_json(*b.dlevel, [](Json& o, const DLevelSummary& d) {
      o["counts"] = d.distribution.counts;
      o["mean"] = number(d.distribution.mean);
      o["sd"] = number(d.distribution.sd);
      o["classified"] = d.distribution.classified;
      o["skipped"] = d.distribution.skipped;
      Json skipped = Json::array();
      for (const auto& s : d.skipped) skipped.push_back(Json{{"line", s.line}, {"reason", s.reason}});
      o["skipped_lines"] = skipped;
    });
  }
  return j;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

}  // namespace

std::string ReportConfig::canonical() const {
  std::ostringstream o;
  o << "segment_size=" << segment_size << '\n';
  o << "readability_sample=" << readability_sample << '\n';
  o << "family=" << (family ? std::string(lnre::to_string(*family)) : "auto") << '\n';
  o << "type_def=" << (type_def == TypeDefinition::lemma ? "lemma" : "surface") << '\n';
  o << "seed=" << seed << '\n';
  o << "growth_step=" << growth_step << '\n';
  o << "extrapolate_factor=" << format_number(extrapolate_factor) << '\n';
  o << "equalize_tokens=" << (equalize_tokens ? 1 : 0) << '\n';
  o << "tags.noun=" << join(tags.noun_tags) << '\n';
  o << "tags.proper_noun=" << join(tags.proper_noun_tags) << '\n';
  o << "tags.verb=" << join(tags.verb_tags) << '\n';
  o << "tags.adjective=" << join(tags.adjective_tags) << '\n';
  o << "tags.other_lexical=" << join(tags.other_lexical_tags) << '\n';
  o << "tags.excluded=" << join(tags.excluded_tags) << '\n';
  o << "rules.clause_labels=" << join(rules.clause_labels) << '\n';
  o << "rules.verb_tags=" << join(rules.verb_tags) << '\n';
  o << "rules.finite_verb_tags=" << join(rules.finite_verb_tags) << '\n';
  o << "rules.coordinator_tags=" << join(rules.coordinator_tags) << '\n';
  o << "rules.adverbial_subordinators=" << join(rules.adverbial_subordinators) << '\n';
  o << "rules.complement_words=" << join(rules.complement_words) << '\n';
  o << "rules.comparative_words=" << join(rules.comparative_words) << '\n';
  o << "rules.transparent_tags=" << join(rules.transparent_tags) << '\n';
  o << "rules.length_cap=" << rules.length_cap << '\n';
  o << "syllables=";
  for (const auto& [w, n] : syllables.exceptions()) o << w << ':' << n << ' ';
  o << '\n';
  return o.str();
}

std::string ReportConfig::hash() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(canonical())));
  return buf;
}

std::size_t ComplexityReport::unavailable_count() const {
  std::size_t n = 0;
  for (const auto& b : corpora) {
    n += !b.ttr.ok() + !b.msttr.ok() + !b.corrected.ok() + !b.density.ok() + !b.readability.ok() + !b.msl.ok() +
         !b.growth_rate.ok() + !b.lnre.ok() + !b.ttr_kde.ok() + !b.flesch_kde.ok();
    if (b.dlevel && !b.dlevel->ok()) ++n;
  }
  if (comparison) {
    for (const auto& k : comparison->ks) n += !k.result.ok();
    n += !comparison->growth_z.ok();
  }
  return n;
}

ComplexityReport build_report(const CorpusInput& a, const CorpusInput* b, const ReportConfig& config) {
  ComplexityReport r;
  r.corpora.push_back(analyze_corpus(a, config));
  if (b) r.corpora.push_back(analyze_corpus(*b, config));

  for (const CorpusInput* in : {&a, b}) {
    if (!in) continue;
    r.provenance.inputs.push_back(
        Provenance::Input{in->label, in->path, in->format, in->stream.size(), in->trees ? in->trees_path : ""});
  }
  r.provenance.config_hash = config.hash();
  r.provenance.tool_version = CORPLEX_VERSION;
  r.provenance.seed = config.seed;
  r.provenance.equalize_tokens = config.equalize_tokens;

  if (b) {
    const CorpusBlock& x = r.corpora[0];
    const CorpusBlock& y = r.corpora[1];
    Comparison c;
    c.ks.push_back(KsEntry{"ttr_per_segment",
                           ks_between(x.msttr.ok() ? &x.msttr->series.values : nullptr,
                                      y.msttr.ok() ? &y.msttr->series.values : nullptr,
                                      "TTR segment series unavailable")});
    c.ks.push_back(KsEntry{"flesch_per_sample",
                           ks_between(x.readability.ok() ? &x.readability->flesch_series.values : nullptr,
                                      y.readability.ok() ? &y.readability->flesch_series.values : nullptr,
                                      "Flesch sample series unavailable")});
    c.ks.push_back(KsEntry{"flesch_kincaid_per_sample",
                           ks_between(x.readability.ok() ? &x.readability->kincaid_series.values : nullptr,
                                      y.readability.ok() ? &y.readability->kincaid_series.values : nullptr,
                                      "Flesch-Kincaid sample series unavailable")});
    if (x.dlevel && y.dlevel) {
      std::vector<double> lx, ly;
      if (x.dlevel->ok()) {
        for (const auto& d : (*x.dlevel)->results) lx.push_back(d.level);
      }
      if (y.dlevel->ok()) {
        for (const auto& d : (*y.dlevel)->results) ly.push_back(d.level);
      }
      c.ks.push_back(KsEntry{"dlevel", ks_between(x.dlevel->ok() ? &lx : nullptr, y.dlevel->ok() ? &ly : nullptr,
                                                  "D-level results unavailable")});
    }
    if (x.lnre.ok() && y.lnre.ok()) {
      c.growth_z = attempt<lnre::GrowthZTest>(
          [&] { return lnre::compare_growth_z(x.lnre->model, x.spectrum, y.lnre->model, y.spectrum); });
    } else {
      c.growth_z = Measure<lnre::GrowthZTest>::unavailable("LNRE model missing for at least one corpus");
    }
    r.comparison = std::move(c);
  }
  return r;
}

Json model_to_json(const lnre::Model& model) {
  Json j;
  j["family"] = std::string(lnre::to_string(model.family()));
  Json params;
  for (const auto& [name, value] : model.named_params()) params[name] = number(value);
  j["params"] = params;
  j["N"] = model.fitted_n ? number(*model.fitted_n) : Json(nullptr);
  j["S"] = number(model.population_size());
  if (model.fit) {
    j["chisq"] = number(model.fit->chisq);
    j["df"] = model.fit->df;
    j["p"] = number(model.fit->p);
    j["classes"] = model.fit->classes;
  } else {
    j["chisq"] = nullptr;
    j["df"] = nullptr;
    j["p"] = nullptr;
    j["classes"] = nullptr;
  }
  return j;
}

lnre::Model model_from_json(const nlohmann::json& j) {
  try {
    const lnre::Family family = lnre::parse_family(j.at("family").get<std::string>());
    const auto& p = j.at("params");
    auto get = [&](const char* key) { return p.at(key).get<double>(); };
    lnre::Model m = [&] {
      switch (family) {
        case lnre::Family::zm: return lnre::Model::zipf_mandelbrot(get("alpha"), get("B"));
        case lnre::Family::fzm: return lnre::Model::finite_zipf_mandelbrot(get("alpha"), get("A"), get("B"));
        case lnre::Family::gigp: break;
      }
      return lnre::Model::gigp(get("gamma"), get("B"), get("C"));
    }();
    if (j.contains("N") && j["N"].is_number()) m.fitted_n = j["N"].get<double>();
    if (j.contains("chisq") && j["chisq"].is_number()) {
      lnre::GoodnessOfFit g;
      g.chisq = j["chisq"].get<double>();
      g.df = j.value("df", 0);
      g.p = j["p"].is_number() ? j["p"].get<double>() : std::nan("");
      g.classes = j.value("classes", std::size_t{0});
      m.fit = g;
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("model JSON: ") + e.what());
  }
}

Json to_json(const ComplexityReport& report) {
  Json j;
  j["tool"] = "corplex";
  Json corpora = Json::array();
  for (const auto& b : report.corpora) corpora.push_back(corpus_json(b));
  j["corpora"] = corpora;
  if (report.comparison) {
    Json ks = Json::array();
    for (const auto& k : report.comparison->ks) {
      Json e = measure_json(k.result, [](Json& o, const stats::KsResult& r) {
        o["d"] = number(r.d);
        o["p"] = number(r.p);
        o["n1"] = r.n1;
        o["n2"] = r.n2;
      });
      Json named{{"name", k.name}};
      named.update(e);
      ks.push_back(named);
    }
    j["comparison"] = Json{{"ks", ks},
                           {"growth_z", measure_json(report.comparison->growth_z,
                                                     [](Json& o, const lnre::GrowthZTest& z) {
                                                       o["z"] = number(z.z);
                                                       o["p"] = number(z.p);
                                                       o["growth_a"] = number(z.growth_a);
                                                       o["growth_b"] = number(z.growth_b);
                                                     })}};
  }
  Json bands = Json::array();
  for (const auto& band : flesch_bands()) {
    bands.push_back(Json{{"band_name", band.name}, {"lower", number(band.lower)}, {"upper", number(band.upper)}});
  }
  j["flesch_bands"] = bands;
  Json inputs = Json::array();
  for (const auto& in : report.provenance.inputs) {
    Json e{{"label", in.label}, {"path", in.path}, {"format", in.format}, {"tokens", in.tokens}};
    if (!in.trees_path.empty()) e["trees"] = in.trees_path;
    inputs.push_back(e);
  }
  j["provenance"] = Json{{"inputs", inputs},
                         {"config_hash", report.provenance.config_hash},
                         {"tool_version", report.provenance.tool_version},
                         {"seed", report.provenance.seed},
                         {"equalize_tokens", report.provenance.equalize_tokens}};
  return j;
}

std::string to_json_string(const ComplexityReport& report) { return to_json(report).dump(2) + "\n"; }

std::string format_number(double v) { return std::isfinite(v) ? Json(v).dump() : std::string(); }

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return csv_field(v.get<std::string>());
  return v.dump();
}

// Scalars of a corpus block, keyed by their JSON path; arrays are left to
// the dedicated tables.
void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, const Json*>>& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      flatten(*it, key, out);
    } else if (!it->is_array()) {
      out.emplace_back(key, &*it);
    }
  }
}

}  // namespace

void write_tables_csv(std::ostream& out, const ComplexityReport& report) {
  const Json j = to_json(report);

  out << "# table: summary\ncorpus,measure,value\n";
  for (const auto& c : j["corpora"]) {
    std::vector<std::pair<std::string, const Json*>> rows;
    Json block = c;
    block.erase("label");
    flatten(block, "", rows);
    for (const auto& [key, value] : rows) out << cell(c["label"]) << ',' << key << ',' << cell(*value) << '\n';
  }

  out << "\n# table: spectrum\ncorpus,m,Vm\n";
  for (const auto& c : j["corpora"]) {
    for (const auto& row : c["spectrum"]["classes"]) out << cell(c["label"]) << ',' << row[0] << ',' << row[1] << '\n';
  }

  out << "\n# table: growth\ncorpus,kind,n,v,v1,v2\n";
  for (const auto& c : j["corpora"]) {
    auto rows = [&](const char* kind, const Json& arr) {
      for (const auto& p : arr) {
        out << cell(c["label"]) << ',' << kind << ',' << cell(p["n"]) << ',' << cell(p["v"]) << ',' << cell(p["v1"])
            << ',' << cell(p["v2"]) << '\n';
      }
    };
    rows("observed", c["growth"]["observed"]);
    rows("binomial_interpolation", c["growth"]["binomial_interpolation"]);
    if (c["lnre"]["status"] == "ok") {
      rows("interpolated", c["lnre"]["interpolated"]);
      rows("extrapolated", c["lnre"]["extrapolated"]);
    }
  }

  out << "\n# table: series\ncorpus,series,index,value\n";
  for (const auto& c : j["corpora"]) {
    auto rows = [&](const char* name, const Json& arr) {
      for (std::size_t i = 0; i < arr.size(); ++i) out << cell(c["label"]) << ',' << name << ',' << i << ',' << cell(arr[i]) << '\n';
    };
    if (c["msttr"]["status"] == "ok") rows("ttr_per_segment", c["msttr"]["series"]);
    if (c["readability"]["status"] == "ok") {
      rows("flesch_per_sample", c["readability"]["flesch_series"]);
      rows("flesch_kincaid_per_sample", c["readability"]["flesch_kincaid_series"]);
    }
  }

  out << "\n# table: kde\ncorpus,series,x,density\n";
  for (const auto& c : j["corpora"]) {
    for (const char* name : {"ttr", "flesch"}) {
      const Json& k = c["kde"][name];
      if (k["status"] != "ok") continue;
      for (const auto& p : k["points"]) out << cell(c["label"]) << ',' << name << ',' << cell(p[0]) << ',' << cell(p[1]) << '\n';
    }
  }

  out << "\n# table: lnre_models\ncorpus,family,parameter,value\n";
  for (const auto& c : j["corpora"]) {
    if (c["lnre"]["status"] != "ok") continue;
    const Json& m = c["lnre"]["model"];
    for (auto it = m["params"].begin(); it != m["params"].end(); ++it) {
      out << cell(c["label"]) << ',' << cell(m["family"]) << ',' << it.key() << ',' << cell(*it) << '\n';
    }
  }

  if (j.contains("comparison")) {
    out << "\n# table: ks\nname,status,d,p,n1,n2\n";
    for (const auto& k : j["comparison"]["ks"]) {
      out << cell(k["name"]) << ',' << cell(k["status"]) << ',' << cell(k.value("d", Json())) << ','
          << cell(k.value("p", Json())) << ',' << cell(k.value("n1", Json())) << ',' << cell(k.value("n2", Json()))
          << '\n';
    }
    const Json& z = j["comparison"]["growth_z"];
    out << "\n# table: growth_z\nstatus,z,p,growth_a,growth_b\n";
    out << cell(z["status"]) << ',' << cell(z.value("z", Json())) << ',' << cell(z.value("p", Json())) << ','
        << cell(z.value("growth_a", Json())) << ',' << cell(z.value("growth_b", Json())) << '\n';
  }

  bool any_dlevel = false;
  for (const auto& c : j["corpora"]) any_dlevel = any_dlevel || (c.contains("dlevel") && c["dlevel"]["status"] == "ok");
  if (any_dlevel) {
    out << "\n# table: dlevel\ncorpus,level,count\n";
    for (const auto& c : j["corpora"]) {
      if (!c.contains("dlevel") || c["dlevel"]["status"] != "ok") continue;
      const Json& counts = c["dlevel"]["counts"];
      for (std::size_t lv = 0; lv < counts.size(); ++lv) out << cell(c["label"]) << ',' << lv << ',' << counts[lv] << '\n';
    }
  }

  out << "\n# table: flesch_bands\nband_name,lower,upper\n";
  for (const auto& b : j["flesch_bands"]) out << cell(b["band_name"]) << ',' << cell(b["lower"]) << ',' << cell(b["upper"]) << '\n';
}

std::string render_svg(const ComplexityReport& report, PlotKind kind) {
  if (report.corpora.empty()) throw RenderError("report has no corpora");
  switch (kind) {
    case PlotKind::growth: {
      std::vector<svg::Series> series;
      for (std::size_t i = 0; i < report.corpora.size(); ++i) {
        const CorpusBlock& b = report.corpora[i];
        const std::string color = kPalette[i % std::size(kPalette)];
        if (b.observed_growth.checkpoints.empty()) {
          throw RenderError("growth plot: observed growth series missing for corpus '" + b.label + "'");
        }
        auto pts = [](const GrowthCurve& c) {
          std::vector<std::pair<double, double>> p;
          for (const auto& g : c.checkpoints) p.emplace_back(g.n, g.v);
          return p;
        };
        series.push_back(svg::Series{b.label + " observed", pts(b.observed_growth), color, svg::Stroke::dotted});
        if (b.lnre.ok()) {
          const auto family = std::string(lnre::to_string(b.lnre->model.family()));
          series.push_back(svg::Series{b.label + " " + family + " interpolated", pts(b.lnre->growth.interpolated), color,
                                       svg::Stroke::solid});
          // start the dashed part where the solid part ends
          auto ext = pts(b.lnre->growth.extrapolated);
          if (!b.lnre->growth.interpolated.checkpoints.empty()) {
            const auto& last = b.lnre->growth.interpolated.checkpoints.back();
            ext.insert(ext.begin(), {last.n, last.v});
          }
          series.push_back(svg::Series{b.label + " " + family + " extrapolated", ext, color, svg::Stroke::dashed});
        }
      }
      return svg::line_chart(svg::Chart{"Vocabulary growth", "N (tokens)", "V (types)", 720, 450, true}, series);
    }
    case PlotKind::ttr_kde:
    case PlotKind::flesch_kde: {
      const bool ttr_plot = kind == PlotKind::ttr_kde;
      std::vector<svg::Series> series;
      for (std::size_t i = 0; i < report.corpora.size(); ++i) {
        const CorpusBlock& b = report.corpora[i];
        const auto& m = ttr_plot ? b.ttr_kde : b.flesch_kde;
        if (!m.ok()) {
          throw RenderError(std::string(ttr_plot ? "ttr_kde" : "flesch_kde") + " series missing for corpus '" +
                            b.label + "': " + m.reason);
        }
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : m->points) pts.emplace_back(p.x, p.density);
        series.push_back(svg::Series{b.label, pts, kPalette[i % std::size(kPalette)], svg::Stroke::solid});
      }
      return svg::line_chart(
          svg::Chart{ttr_plot ? "TTR per segment: kernel density" : "Flesch Reading Ease per sample: kernel density",
                     ttr_plot ? "TTR" : "Flesch Reading Ease", "density", 720, 450, true},
          series);
    }
    case PlotKind::dlevel_histogram: {
      std::vector<std::pair<std::string, std::vector<double>>> groups;
      std::vector<std::string> colors;
      for (std::size_t i = 0; i < report.corpora.size(); ++i) {
        const CorpusBlock& b = report.corpora[i];
        if (!b.dlevel || !b.dlevel->ok()) continue;
        std::vector<double> counts;
        for (std::size_t c : (*b.dlevel)->distribution.counts) counts.push_back(static_cast<double>(c));
        groups.emplace_back(b.label, counts);
        colors.push_back(kPalette[i % std::size(kPalette)]);
      }
      if (groups.empty()) throw RenderError("dlevel histogram: no corpus has a D-level distribution");
      return svg::bar_chart(svg::Chart{"D-level distribution", "level", "sentences", 720, 450, true},
                            {"0", "1", "2", "3", "4", "5", "6", "7"}, groups, colors);
    }
  }
  throw RenderError("unknown plot kind");
}

}  // namespace corplex::report
