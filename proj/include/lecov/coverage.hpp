// Copyright 2026 The LeCov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lecov/calibration.hpp"
#include "lecov/error.hpp"
#include "lecov/stats.hpp"
#include "lecov/trace.hpp"

namespace lecov {

enum class CriterionId { KMAC, KVAC, KKAC, KSAC, IHNC, ITNC, FHNC, KMEC, KMLC };

inline constexpr std::array<CriterionId, 9> kAllCriteria = {
    CriterionId::KMAC, CriterionId::KVAC, CriterionId::KKAC, CriterionId::KSAC, CriterionId::IHNC,
    CriterionId::ITNC, CriterionId::FHNC, CriterionId::KMEC, CriterionId::KMLC};

constexpr std::string_view criterion_name(CriterionId c) noexcept {
  switch (c) {
    case CriterionId::KMAC: return "KMAC";
    case CriterionId::KVAC: return "KVAC";
    case CriterionId::KKAC: return "KKAC";
    case CriterionId::KSAC: return "KSAC";
    case CriterionId::IHNC: return "IHNC";
    case CriterionId::ITNC: return "ITNC";
    case CriterionId::FHNC: return "FHNC";
    case CriterionId::KMEC: return "KMEC";
    case CriterionId::KMLC: return "KMLC";
  }
  return "?";
}

/// Case-insensitive lookup of a criterion id.
inline std::optional<CriterionId> parse_criterion(std::string_view name) {
  for (const CriterionId c : kAllCriteria) {
    const std::string_view n = criterion_name(c);
    if (n.size() == name.size() &&
        std::equal(n.begin(), n.end(), name.begin(), [](char a, char b) {
          return a == static_cast<char>(std::toupper(static_cast<unsigned char>(b)));
        }))
      return c;
  }
  return std::nullopt;
}

constexpr std::size_t criterion_index(CriterionId c) noexcept { return static_cast<std::size_t>(c); }

/// Measure consumed by an attention criterion, nullopt for the others.
constexpr std::optional<Measure> attention_measure(CriterionId c) noexcept {
  switch (c) {
    case CriterionId::KMAC: return Measure::Mean;
    case CriterionId::KVAC: return Measure::Variance;
    case CriterionId::KKAC: return Measure::Kurtosis;
    case CriterionId::KSAC: return Measure::Skewness;
    default: return std::nullopt;
  }
}

struct CriteriaConfig {
  int k_sections = 50;
  double h_threshold = 0.0;
  int itnc_k = 4;
  int fhnc_r = 2;

  void validate() const {
    if (k_sections < 1) throw Error(ErrorKind::Config, "k_sections must be >= 1");
    if (!std::isfinite(h_threshold)) throw Error(ErrorKind::Config, "h_threshold must be finite");
    if (itnc_k < 1) throw Error(ErrorKind::Config, "itnc_k must be >= 1");
    if (fhnc_r < 0) throw Error(ErrorKind::Config, "fhnc_r must be >= 0");
  }

  bool operator==(const CriteriaConfig&) const = default;
};

/// Fixed-size bitset that tracks its population count.
class CoverageBits {
 public:
  CoverageBits() = default;
  explicit CoverageBits(std::size_t bits) : words_((bits + 63) / 64, 0), bits_(bits) {}

  std::size_t size() const noexcept { return bits_; }
  std::size_t count() const noexcept { return count_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }

  /// Returns true when the bit was newly set.
  bool set(std::size_t i) noexcept {
    std::uint64_t& w = words_[i >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (w & mask) return false;
    w |= mask;
    ++count_;
    return true;
  }

  /// Bits of `other` not present here.
  std::size_t count_new(const CoverageBits& other) const noexcept {
    std::size_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) n += std::popcount(other.words_[i] & ~words_[i]);
    return n;
  }

  void merge(const CoverageBits& other) noexcept {
    count_ = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] |= other.words_[i];
      count_ += std::popcount(words_[i]);
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < bits_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  bool operator==(const CoverageBits&) const = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t bits_ = 0;
  std::size_t count_ = 0;
};

/// Section of `value` within a calibrated interval. A collapsed interval
/// (lb == ub) is a single section hit only by lb itself.
inline std::optional<int> bin_value(const Interval& iv, int k, double value) {
  if (iv.lb == iv.ub) {
    if (value == iv.lb) return 0;
    return std::nullopt;
  }
  return section_index(value, SectionConfig{iv.lb, iv.ub, k});
}

/// Everything a single trace covers, before it is combined with a state.
struct TraceFootprint {
  std::array<CoverageBits, 4> attention;  // by measure; bit = head * k + section
  CoverageBits hyperactive;
  CoverageBits topk_hit;
  std::vector<std::uint32_t> active_steps;  // per neuron: steps with activation > h
  CoverageBits entropy;
  CoverageBits likelihood;
  std::uint64_t out_of_range = 0;
};

using CoverageDelta = std::array<std::size_t, 9>;

class CoverageState {
 public:
  CoverageState(std::shared_ptr<const CalibrationBounds> bounds, CriteriaConfig config)
      : bounds_(std::move(bounds)), config_(config) {
    if (!bounds_) throw Error(ErrorKind::Config, "coverage state needs calibration bounds");
    config_.validate();
    const Topology& topo = bounds_->topology;
    if (bounds_->heads.size() != topo.num_heads())
      throw Error(ErrorKind::Config, "bounds do not cover every attention head");
    for (auto& bits : attention_) bits = CoverageBits(topo.num_heads() * k());
    hyperactive_ = CoverageBits(topo.num_neurons());
    topk_hit_ = CoverageBits(topo.num_neurons());
    frequent_ = CoverageBits(topo.num_neurons());
    max_active_steps_.assign(topo.num_neurons(), 0);
    entropy_ = CoverageBits(k());
    likelihood_ = CoverageBits(k());
  }

  CoverageState(const CalibrationBounds& bounds, CriteriaConfig config)
      : CoverageState(std::make_shared<const CalibrationBounds>(bounds), config) {}

  const CriteriaConfig& config() const noexcept { return config_; }
  const CalibrationBounds& bounds() const noexcept { return *bounds_; }
  const std::shared_ptr<const CalibrationBounds>& bounds_ptr() const noexcept { return bounds_; }
  const Topology& topology() const noexcept { return bounds_->topology; }
  std::uint64_t ingested_traces() const noexcept { return ingested_; }
  std::uint64_t out_of_range() const noexcept { return out_of_range_; }

  /// What `trace` would cover on its own. Throws on a topology mismatch,
  /// itnc_k above the trace's K_max, or h below its recording floor.
  TraceFootprint footprint(const GenerationTrace& trace) const {
    check_compatible(trace);
    const Topology& topo = topology();
    const std::size_t kk = k();
    TraceFootprint fp;
    for (auto& bits : fp.attention) bits = CoverageBits(topo.num_heads() * kk);
    fp.hyperactive = CoverageBits(topo.num_neurons());
    fp.topk_hit = CoverageBits(topo.num_neurons());
    fp.active_steps.assign(topo.num_neurons(), 0);
    fp.entropy = CoverageBits(kk);
    fp.likelihood = CoverageBits(kk);

    for (const StepRecord& step : trace.steps) {
      for (const HeadStat& hs : step.heads) {
        const std::size_t head = topo.head_index(hs.layer, hs.head);
        for (const Measure m : kAllMeasures) {
          if (const auto s = bin_value(bounds_->head(head, m), config_.k_sections, hs.get(m)))
            fp.attention[measure_index(m)].set(head * kk + static_cast<std::size_t>(*s));
          else
            ++fp.out_of_range;
        }
      }
      for (const LayerActivations& la : step.layers) {
        for (const NeuronActivation& na : la.activated) {
          if (na.value > config_.h_threshold) {
            const std::size_t n = topo.neuron_index(la.layer, na.neuron);
            fp.hyperactive.set(n);
            ++fp.active_steps[n];
          }
        }
        for (int r = 0; r < config_.itnc_k; ++r) fp.topk_hit.set(topo.neuron_index(la.layer, la.topk[r]));
      }
      if (const auto s = bin_value(bounds_->entropy, config_.k_sections, step.entropy))
        fp.entropy.set(static_cast<std::size_t>(*s));
      else
        ++fp.out_of_range;
      if (const auto s = bin_value(bounds_->likelihood, config_.k_sections, step.avg_likelihood))
        fp.likelihood.set(static_cast<std::size_t>(*s));
      else
        ++fp.out_of_range;
    }
    return fp;
  }

  /// Adds one trace; returns how many items each criterion newly covers.
  CoverageDelta ingest(const GenerationTrace& trace) { return apply(footprint(trace)); }

  CoverageDelta apply(const TraceFootprint& fp) {
    CoverageDelta delta{};
    const CoverageDelta before = covered_counts();
    for (std::size_t m = 0; m < 4; ++m) attention_[m].merge(fp.attention[m]);
    hyperactive_.merge(fp.hyperactive);
    topk_hit_.merge(fp.topk_hit);
    for (std::size_t n = 0; n < max_active_steps_.size(); ++n) {
      max_active_steps_[n] = std::max(max_active_steps_[n], fp.active_steps[n]);
      if (max_active_steps_[n] > static_cast<std::uint32_t>(config_.fhnc_r)) frequent_.set(n);
    }
    entropy_.merge(fp.entropy);
    likelihood_.merge(fp.likelihood);
    out_of_range_ += fp.out_of_range;
    ++ingested_;
    const CoverageDelta after = covered_counts();
    for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = after[i] - before[i];
    return delta;
  }

  /// Items of criterion `c` that `fp` would add.
  std::size_t gain(const TraceFootprint& fp, CriterionId c) const {
    switch (c) {
      case CriterionId::KMAC:
      case CriterionId::KVAC:
      case CriterionId::KKAC:
      case CriterionId::KSAC: {
        const std::size_t m = measure_index(*attention_measure(c));
        return attention_[m].count_new(fp.attention[m]);
      }
      case CriterionId::IHNC: return hyperactive_.count_new(fp.hyperactive);
      case CriterionId::ITNC: return topk_hit_.count_new(fp.topk_hit);
      case CriterionId::FHNC: {
        std::size_t n = 0;
        for (std::size_t i = 0; i < fp.active_steps.size(); ++i)
          if (fp.active_steps[i] > static_cast<std::uint32_t>(config_.fhnc_r) && !frequent_.test(i)) ++n;
        return n;
      }
      case CriterionId::KMEC: return entropy_.count_new(fp.entropy);
      case CriterionId::KMLC: return likelihood_.count_new(fp.likelihood);
    }
    return 0;
  }

  /// True iff ingesting `trace` would strictly raise value(c). Leaves the
  /// state untouched.
  bool new_coverage(const GenerationTrace& trace, CriterionId c) const { return gain(footprint(trace), c) > 0; }

  std::size_t covered(CriterionId c) const noexcept {
    switch (c) {
      case CriterionId::KMAC:
      case CriterionId::KVAC:
      case CriterionId::KKAC:
      case CriterionId::KSAC: return attention_[measure_index(*attention_measure(c))].count();
      case CriterionId::IHNC: return hyperactive_.count();
      case CriterionId::ITNC: return topk_hit_.count();
      case CriterionId::FHNC: return frequent_.count();
      case CriterionId::KMEC: return entropy_.count();
      case CriterionId::KMLC: return likelihood_.count();
    }
    return 0;
  }

  /// Denominator of value(c): k|A|, |N| or k.
  std::size_t total(CriterionId c) const noexcept {
    if (attention_measure(c)) return k() * topology().num_heads();
    if (c == CriterionId::KMEC || c == CriterionId::KMLC) return k();
    return topology().num_neurons();
  }

  double value(CriterionId c) const noexcept {
    const std::size_t t = total(c);
    return t == 0 ? 0.0 : static_cast<double>(covered(c)) / static_cast<double>(t);
  }

  CoverageDelta covered_counts() const noexcept {
    CoverageDelta out{};
    for (const CriterionId c : kAllCriteria) out[criterion_index(c)] = covered(c);
    return out;
  }

  /// Set union of two states built from the same bounds and config.
  void merge(const CoverageState& other) {
    if (!(config_ == other.config_))
      throw Error(ErrorKind::Config, "cannot merge coverage states with different configs");
    if (bounds_ != other.bounds_ && !(*bounds_ == *other.bounds_))
      throw Error(ErrorKind::Config, "cannot merge coverage states with different bounds");
    for (std::size_t m = 0; m < 4; ++m) attention_[m].merge(other.attention_[m]);
    hyperactive_.merge(other.hyperactive_);
    topk_hit_.merge(other.topk_hit_);
    frequent_.merge(other.frequent_);
    for (std::size_t n = 0; n < max_active_steps_.size(); ++n)
      max_active_steps_[n] = std::max(max_active_steps_[n], other.max_active_steps_[n]);
    entropy_.merge(other.entropy_);
    likelihood_.merge(other.likelihood_);
    out_of_range_ += other.out_of_range_;
    ingested_ += other.ingested_;
  }

  // Read access for reports and oracles.
  const CoverageBits& attention_bits(Measure m) const noexcept { return attention_[measure_index(m)]; }
  const CoverageBits& hyperactive() const noexcept { return hyperactive_; }
  const CoverageBits& topk_hit() const noexcept { return topk_hit_; }
  const CoverageBits& frequent() const noexcept { return frequent_; }
  const CoverageBits& entropy_sections() const noexcept { return entropy_; }
  const CoverageBits& likelihood_sections() const noexcept { return likelihood_; }
  const std::vector<std::uint32_t>& max_active_steps() const noexcept { return max_active_steps_; }

  /// Equal covered sets (counters excluded).
  bool same_coverage(const CoverageState& other) const {
    return attention_ == other.attention_ && hyperactive_ == other.hyperactive_ &&
           topk_hit_ == other.topk_hit_ && frequent_ == other.frequent_ &&
           max_active_steps_ == other.max_active_steps_ && entropy_ == other.entropy_ &&
           likelihood_ == other.likelihood_;
  }

 private:
  std::size_t k() const noexcept { return static_cast<std::size_t>(config_.k_sections); }

  void check_compatible(const GenerationTrace& trace) const {
    if (!(trace.topology == topology()))
      throw Error(ErrorKind::Topology, "trace '" + trace.prompt_id + "' topology differs from the bounds");
    if (config_.h_threshold < trace.recording_floor)
      throw Error(ErrorKind::Config, "h_threshold below trace '" + trace.prompt_id + "' recording floor");
    if (const auto kmax = trace_kmax(trace); kmax && config_.itnc_k > *kmax)
      throw Error(ErrorKind::Config, "itnc_k=" + std::to_string(config_.itnc_k) + " exceeds K_max=" +
                                         std::to_string(*kmax) + " of trace '" + trace.prompt_id + "'");
  }

  std::shared_ptr<const CalibrationBounds> bounds_;
  CriteriaConfig config_;
  std::array<CoverageBits, 4> attention_;
  CoverageBits hyperactive_;
  CoverageBits topk_hit_;
  CoverageBits frequent_;
  std::vector<std::uint32_t> max_active_steps_;
  CoverageBits entropy_;
  CoverageBits likelihood_;
  std::uint64_t out_of_range_ = 0;
  std::uint64_t ingested_ = 0;
};

inline CoverageState merge(CoverageState a, const CoverageState& b) {
  a.merge(b);
  return a;
}

/// Copy of `fresh` with every trace of `traces` ingested in order.
template <typename Range>
CoverageState ingest_all(const CoverageState& fresh, const Range& traces) {
  CoverageState s = fresh;
  for (const GenerationTrace& t : traces) s.ingest(t);
  return s;
}

}  // namespace lecov
