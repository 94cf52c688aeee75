#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "corplex/corpus.hpp"
#include "corplex/density.hpp"
#include "corplex/diversity.hpp"
#include "corplex/dlevel.hpp"
#include "corplex/lnre.hpp"
#include "corplex/readability.hpp"
#include "corplex/stats.hpp"
#include "json.hpp"

namespace corplex::report {

using Json = nlohmann::ordered_json;

/// A computed value, or the reason it could not be computed.
template <typename T>
struct Measure {
  std::optional<T> value;
  std::string reason;

  bool ok() const noexcept { return value.has_value(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }
  static Measure unavailable(std::string why) { return Measure{std::nullopt, std::move(why)}; }
};

struct CorpusInput {
  std::string label;
  std::string path;
  std::string format;
  TokenStream stream;
  std::optional<BracketedFile> trees;
  std::string trees_path;
};

struct ReportConfig {
  std::size_t segment_size = 100;
  std::size_t readability_sample = 1000;
  /// Unset: GIGP, falling back to fZM and then ZM when a fit fails.
  std::optional<lnre::Family> family;
  TypeDefinition type_def = TypeDefinition::surface;
  TagClassMap tags;
  DLevelRules rules;
  SyllableCounter syllables;
  std::uint64_t seed = 1;
  /// 0 selects ceil(N / 40).
  std::size_t growth_step = 0;
  /// Extrapolated curves run to this multiple of the observed N.
  double extrapolate_factor = 2.0;
  bool equalize_tokens = false;

  /// Every setting that affects results, one `key=value` per line.
  std::string canonical() const;
  /// "fnv1a64:<16 hex digits>" of canonical().
  std::string hash() const;
};

struct ReadabilitySummary {
  stats::MeanSd flesch;
  stats::MeanSd kincaid;
  std::string flesch_band;
  SampleSeries flesch_series;
  SampleSeries kincaid_series;
};

struct FitAttempt {
  std::string family;
  std::string error;
};

struct LnreSummary {
  lnre::Model model;
  std::vector<FitAttempt> failed;
  lnre::ExpectedGrowth growth;
};

struct KdeCurve {
  double bandwidth = 0;
  std::vector<stats::KdePoint> points;
};

struct DLevelSummary {
  DLevelDistribution distribution;
  std::vector<DLevelResult> results;
  std::vector<std::size_t> lines;
  std::vector<SkippedLine> skipped;
};

struct CorpusBlock {
  std::string label;
  std::size_t tokens = 0;
  std::size_t words = 0;
  std::size_t sentences = 0;
  std::size_t documents = 0;
  std::size_t types = 0;
  Measure<double> ttr;
  Measure<MsttrResult> msttr;
  Measure<CorrectedIndices> corrected;
  Measure<DensityRatios> density;
  Measure<ReadabilitySummary> readability;
  Measure<stats::MeanSd> msl;
  Measure<double> growth_rate;
  FrequencySpectrum spectrum;
  std::size_t growth_step = 0;
  GrowthCurve observed_growth;
  /// Expected V, V1, V2 of random subsamples at the observed checkpoints.
  GrowthCurve binomial_growth;
  Measure<LnreSummary> lnre;
  Measure<KdeCurve> ttr_kde;
  Measure<KdeCurve> flesch_kde;
  /// Present only when parse trees were supplied.
  std::optional<Measure<DLevelSummary>> dlevel;
};

struct KsEntry {
  std::string name;
  Measure<stats::KsResult> result;
};

struct Comparison {
  std::vector<KsEntry> ks;
  Measure<lnre::GrowthZTest> growth_z;
};

struct Provenance {
  struct Input {
    std::string label;
    std::string path;
    std::string format;
    std::size_t tokens = 0;
    std::string trees_path;
  };
  std::vector<Input> inputs;
  std::string config_hash;
  std::string tool_version;
  std::uint64_t seed = 0;
  bool equalize_tokens = false;
};

struct ComplexityReport {
  std::vector<CorpusBlock> corpora;
  std::optional<Comparison> comparison;
  Provenance provenance;

  /// Number of measures reported as unavailable.
  std::size_t unavailable_count() const;
};

/// Computes every measure for `a` (and `b`, with a comparison block, when
/// given). A failing measure is reported as unavailable; it never aborts the
/// report.
ComplexityReport build_report(const CorpusInput& a, const CorpusInput* b, const ReportConfig& config);

Json to_json(const ComplexityReport& report);
/// Pretty-printed JSON with a trailing newline.
std::string to_json_string(const ComplexityReport& report);

/// Tables separated by "# table: <name>" lines. Numbers are printed exactly
/// as in the JSON document.
void write_tables_csv(std::ostream& out, const ComplexityReport& report);

enum class PlotKind { growth, ttr_kde, flesch_kde, dlevel_histogram };

/// Throws RenderError naming the series when the report lacks it.
std::string render_svg(const ComplexityReport& report, PlotKind kind);

/// {family, params{...}, N, S, chisq, df, p, classes}. S is null for ZM
/// (infinite population).
Json model_to_json(const lnre::Model& model);
/// Inverse of model_to_json. Throws ArgumentError on a malformed document.
lnre::Model model_from_json(const nlohmann::json& j);

/// Same text nlohmann::json prints for `v` (shortest round-trip form); empty
/// for non-finite values, which are null in JSON.
std::string format_number(double v);

}  // namespace corplex::report
