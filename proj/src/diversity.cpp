#include "corplex/diversity.hpp"

#include <cmath>
#include <optional>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

#include "corplex/error.hpp"
#include "corplex/text.hpp"

namespace corplex {

TypeSequence encode_types(const TokenStream& stream, TypeDefinition def) {
  TypeSequence seq;
  seq.ids.reserve(stream.size());
  std::unordered_map<std::string, std::uint32_t> index;
  const auto keys = type_keys(stream, def);
  const auto& tokens = stream.tokens();
  std::size_t doc = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    while (doc < stream.document_count() && i >= stream.document_end(doc)) {
      if (seq.document_bounds.empty() || seq.document_bounds.back() < seq.ids.size()) {
        seq.document_bounds.push_back(seq.ids.size());
      }
      ++doc;
    }
    if (!tokens[i].is_word) continue;
    auto [it, inserted] = index.try_emplace(keys[i], static_cast<std::uint32_t>(index.size()));
    seq.ids.push_back(it->second);
  }
  if (!seq.ids.empty() && (seq.document_bounds.empty() || seq.document_bounds.back() < seq.ids.size())) {
    seq.document_bounds.push_back(seq.ids.size());
  }
  seq.type_count = index.size();
  return seq;
}

// ---------------------------------------------------------------------------

FrequencySpectrum::FrequencySpectrum(std::uint64_t n, std::uint64_t v,
                                     std::map<std::uint64_t, std::uint64_t> classes)
    : n_(n), v_(v) {
  std::uint64_t sum_v = 0;
  std::uint64_t sum_n = 0;
  for (auto [m, vm] : classes) {
    if (m == 0) throw ArgumentError("frequency class m must be at least 1");
    if (vm == 0) continue;
    classes_.emplace(m, vm);
    sum_v += vm;
    sum_n += m * vm;
  }
  if (sum_v != v_) throw ArgumentError("spectrum classes sum to " + std::to_string(sum_v) + ", not V");
  if (sum_n != n_) throw ArgumentError("spectrum token mass is " + std::to_string(sum_n) + ", not N");
}

FrequencySpectrum FrequencySpectrum::from_frequencies(const std::vector<std::uint64_t>& freqs) {
  std::map<std::uint64_t, std::uint64_t> classes;
  std::uint64_t n = 0;
  std::uint64_t v = 0;
  for (std::uint64_t f : freqs) {
    if (f == 0) continue;
    ++classes[f];
    n += f;
    ++v;
  }
  return FrequencySpectrum(n, v, std::move(classes));
}

std::uint64_t FrequencySpectrum::operator[](std::uint64_t m) const {
  auto it = classes_.find(m);
  return it == classes_.end() ? 0 : it->second;
}

const char* to_string(GrowthKind kind) {
  switch (kind) {
    case GrowthKind::observed: return "observed";
    case GrowthKind::interpolated: return "interpolated";
    case GrowthKind::extrapolated: return "extrapolated";
  }
  return "?";
}

// ---------------------------------------------------------------------------

double ttr(const TypeSequence& seq) {
  if (seq.ids.empty()) throw UndefinedMeasure("TTR of an empty stream");
  return static_cast<double>(seq.type_count) / static_cast<double>(seq.ids.size());
}

MsttrResult msttr(const TypeSequence& seq, std::size_t segment_size) {
  if (segment_size < 1) throw ArgumentError("segment size must be at least 1");
  MsttrResult result;
  result.series.measure_name = "ttr";
  result.series.segment_size = segment_size;

  // last_seen[id] holds 1 + index of the segment where the type was last counted
  std::vector<std::size_t> last_seen(seq.type_count, 0);
  std::size_t segment_no = 0;
  std::size_t begin = 0;
  for (std::size_t doc_end : seq.document_bounds) {
    for (; begin + segment_size <= doc_end; begin += segment_size) {
      ++segment_no;
      std::size_t distinct = 0;
      for (std::size_t i = begin; i < begin + segment_size; ++i) {
        auto& mark = last_seen[seq.ids[i]];
        if (mark != segment_no) {
          mark = segment_no;
          ++distinct;
        }
      }
      result.series.values.push_back(static_cast<double>(distinct) / static_cast<double>(segment_size));
    }
    begin = doc_end;
  }
  if (result.series.values.empty()) {
    throw UndefinedMeasure("MSTTR needs at least one full segment of " + std::to_string(segment_size) +
                           " tokens");
  }
  double sum = 0;
  for (double v : result.series.values) sum += v;
  result.mean = sum / static_cast<double>(result.series.values.size());
  return result;
}

FrequencySpectrum frequency_spectrum(const TypeSequence& seq) {
  if (seq.ids.empty()) throw UndefinedMeasure("frequency spectrum of an empty stream");
  std::vector<std::uint64_t> freqs(seq.type_count, 0);
  for (auto id : seq.ids) ++freqs[id];
  return FrequencySpectrum::from_frequencies(freqs);
}

CorrectedIndices corrected_indices(const FrequencySpectrum& spectrum) {
  const double n = static_cast<double>(spectrum.tokens());
  const double v = static_cast<double>(spectrum.types());
  if (spectrum.tokens() < 2) throw UndefinedMeasure("corrected indices need N >= 2");
  if (spectrum.types() < 1) throw UndefinedMeasure("corrected indices need V >= 1");
  double s2 = 0;
  for (auto [m, vm] : spectrum.classes()) {
    const double md = static_cast<double>(m);
    s2 += md * md * static_cast<double>(vm);
  }
  CorrectedIndices out;
  out.herdan_c = std::log(v) / std::log(n);
  out.guiraud_r = v / std::sqrt(n);
  out.yule_k = 1e4 * (s2 - n) / (n * n);
  return out;
}

double growth_rate(const FrequencySpectrum& spectrum) {
  if (spectrum.tokens() < 1) throw UndefinedMeasure("growth rate needs N >= 1");
  return static_cast<double>(spectrum[1]) / static_cast<double>(spectrum.tokens());
}

std::size_t default_growth_step(std::size_t n) { return n == 0 ? 1 : (n + 39) / 40; }

GrowthCurve observed_growth(const TypeSequence& seq, std::size_t step) {
  if (step < 1) throw ArgumentError("growth step must be at least 1");
  GrowthCurve curve;
  curve.kind = GrowthKind::observed;
  std::vector<std::uint64_t> counts(seq.type_count, 0);
  std::int64_t v = 0, v1 = 0, v2 = 0;
  const std::size_t n = seq.ids.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto c = ++counts[seq.ids[i]];
    if (c == 1) {
      ++v;
      ++v1;
    } else if (c == 2) {
      --v1;
      ++v2;
    } else if (c == 3) {
      --v2;
    }
    const std::size_t seen = i + 1;
    if (seen % step == 0 || seen == n) {
      curve.checkpoints.push_back(GrowthPoint{static_cast<double>(seen), static_cast<double>(v),
                                              static_cast<double>(v1), static_cast<double>(v2)});
    }
  }
  return curve;
}

double binomial_interpolation(const FrequencySpectrum& spectrum, double n_prime) {
  const double n = static_cast<double>(spectrum.tokens());
  if (!(n_prime >= 0)) throw ArgumentError("interpolation size must be non-negative");
  if (n_prime > n) throw ArgumentError("interpolation size exceeds N; use an LNRE model to extrapolate");
  if (n_prime == n) return static_cast<double>(spectrum.types());
  if (n_prime == 0) return 0.0;
  // 1 - (1-p)^m computed as -expm1(m * log1p(-p)) for accuracy at small p
  const double l = std::log1p(-n_prime / n);
  double ev = 0;
  for (auto [m, vm] : spectrum.classes()) {
    ev += static_cast<double>(vm) * -std::expm1(static_cast<double>(m) * l);
  }
  return ev;
}

// ---------------------------------------------------------------------------

void write_spectrum_csv(std::ostream& out, const FrequencySpectrum& spectrum) {
  out << "#N=" << spectrum.tokens() << '\n';
  out << "#V=" << spectrum.types() << '\n';
  out << "m,Vm\n";
  for (auto [m, vm] : spectrum.classes()) out << m << ',' << vm << '\n';
}

namespace {

std::uint64_t parse_count(std::string_view s, std::size_t line_no) {
  s = text::trim(s);
  if (s.empty()) {
    throw IngestionError("spectrum line " + std::to_string(line_no) + ": empty number",
                         IngestionError::Unit::line, line_no);
  }
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw IngestionError("spectrum line " + std::to_string(line_no) + ": not a non-negative integer",
                           IngestionError::Unit::line, line_no);
    }
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace

FrequencySpectrum read_spectrum_csv(std::istream& in) {
  std::optional<std::uint64_t> n, v;
  std::map<std::uint64_t, std::uint64_t> classes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = text::trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      if (s.substr(0, 3) == "#N=") n = parse_count(s.substr(3), line_no);
      else if (s.substr(0, 3) == "#V=") v = parse_count(s.substr(3), line_no);
      continue;
    }
    if (s == "m,Vm") continue;
    auto comma = s.find(',');
    if (comma == std::string_view::npos) {
      throw IngestionError("spectrum line " + std::to_string(line_no) + ": expected m,Vm",
                           IngestionError::Unit::line, line_no);
    }
    auto m = parse_count(s.substr(0, comma), line_no);
    auto vm = parse_count(s.substr(comma + 1), line_no);
    if (m == 0 || classes.count(m)) {
      throw IngestionError("spectrum line " + std::to_string(line_no) + ": invalid or repeated class",
                           IngestionError::Unit::line, line_no);
    }
    classes[m] = vm;
  }
  if (!n || !v) throw IngestionError("spectrum file lacks #N= or #V= header", IngestionError::Unit::line, line_no);
  try {
    return FrequencySpectrum(*n, *v, std::move(classes));
  } catch (const ArgumentError& e) {
    throw IngestionError(std::string("inconsistent spectrum file: ") + e.what(), IngestionError::Unit::line,
                         line_no);
  }
}

}  // namespace corplex
