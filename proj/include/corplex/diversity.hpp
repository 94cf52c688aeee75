#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "corplex/corpus.hpp"

namespace corplex {

/// Word tokens mapped to dense type ids, first occurrence first. Document
/// bounds are kept so segments can stay text-local.
struct TypeSequence {
  std::vector<std::uint32_t> ids;
  std::vector<std::size_t> document_bounds;
  std::size_t type_count = 0;

  std::size_t size() const noexcept { return ids.size(); }
};

/// Encodes the is_word tokens of `stream`; punctuation is dropped here.
TypeSequence encode_types(const TokenStream& stream, TypeDefinition def = TypeDefinition::surface);

/// Counts V(m,N): number of types seen exactly m times in N tokens.
class FrequencySpectrum {
 public:
  FrequencySpectrum() = default;
  /// Throws ArgumentError unless sum V(m) = V and sum m*V(m) = N.
  FrequencySpectrum(std::uint64_t n, std::uint64_t v, std::map<std::uint64_t, std::uint64_t> classes);

  /// Spectrum of a list of per-type frequencies (zeros ignored).
  static FrequencySpectrum from_frequencies(const std::vector<std::uint64_t>& freqs);

  std::uint64_t tokens() const noexcept { return n_; }
  std::uint64_t types() const noexcept { return v_; }
  /// V(m,N); zero for absent classes.
  std::uint64_t operator[](std::uint64_t m) const;
  const std::map<std::uint64_t, std::uint64_t>& classes() const noexcept { return classes_; }

  bool operator==(const FrequencySpectrum&) const = default;

 private:
  std::uint64_t n_ = 0;
  std::uint64_t v_ = 0;
  std::map<std::uint64_t, std::uint64_t> classes_;
};

struct SampleSeries {
  std::string measure_name;
  std::size_t segment_size = 0;
  std::vector<double> values;
};

enum class GrowthKind { observed, interpolated, extrapolated };

struct GrowthPoint {
  double n = 0;
  double v = 0;
  double v1 = 0;
  double v2 = 0;
};

struct GrowthCurve {
  std::vector<GrowthPoint> checkpoints;
  GrowthKind kind = GrowthKind::observed;
};

const char* to_string(GrowthKind kind);

struct MsttrResult {
  double mean = 0;
  SampleSeries series;
};

struct CorrectedIndices {
  double herdan_c = 0;
  double guiraud_r = 0;
  double yule_k = 0;
};

double ttr(const TypeSequence& seq);

/// Mean of per-segment TTRs over document-local segments of `segment_size`.
MsttrResult msttr(const TypeSequence& seq, std::size_t segment_size);

FrequencySpectrum frequency_spectrum(const TypeSequence& seq);

/// Herdan's C = ln V / ln N, Guiraud's R = V / sqrt(N),
/// Yule's K = 1e4 * (sum m^2 V(m) - N) / N^2.
CorrectedIndices corrected_indices(const FrequencySpectrum& spectrum);

/// Hapax legomena per token, V(1,N) / N.
double growth_rate(const FrequencySpectrum& spectrum);

/// ceil(N / 40), at least 1.
std::size_t default_growth_step(std::size_t n);

/// V, V1 and V2 at N = step, 2*step, ..., and at the final token.
GrowthCurve observed_growth(const TypeSequence& seq, std::size_t step);

/// Expected V at a random subsample of `n_prime` <= N tokens:
/// sum_m V(m,N) * (1 - (1 - n'/N)^m).
double binomial_interpolation(const FrequencySpectrum& spectrum, double n_prime);

/// Two-column `m,Vm` CSV preceded by `#N=` and `#V=` comment lines.
void write_spectrum_csv(std::ostream& out, const FrequencySpectrum& spectrum);
FrequencySpectrum read_spectrum_csv(std::istream& in);

}  // namespace corplex
