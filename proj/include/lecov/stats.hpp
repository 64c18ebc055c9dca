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

#include <array>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "lecov/error.hpp"

namespace lecov {

/// Statistic used to reduce an attention head's output vector to a scalar.
enum class Measure { Mean, Variance, Kurtosis, Skewness };

inline constexpr std::array<Measure, 4> kAllMeasures = {Measure::Mean, Measure::Variance,
                                                        Measure::Kurtosis, Measure::Skewness};

/// Short key used in bounds files and reports.
constexpr std::string_view measure_key(Measure m) noexcept {
  switch (m) {
    case Measure::Mean: return "mean";
    case Measure::Variance: return "var";
    case Measure::Kurtosis: return "kurt";
    case Measure::Skewness: return "skew";
  }
  return "?";
}

constexpr std::optional<Measure> parse_measure_key(std::string_view key) noexcept {
  for (const Measure m : kAllMeasures)
    if (measure_key(m) == key) return m;
  return std::nullopt;
}

constexpr std::size_t measure_index(Measure m) noexcept { return static_cast<std::size_t>(m); }

/// Below this second central moment a vector is treated as constant.
inline constexpr double kDegenerateVariance = 1e-12;

struct KappaResult {
  double value = 0.0;
  /// Set when skewness/kurtosis were requested on a (near-)constant vector.
  bool degenerate = false;
};

/// Population moments of one vector. Two passes: mean first, then the
/// central moments, which keeps m2..m4 accurate for offset-heavy inputs.
struct Moments {
  double mean = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;

  static Moments of(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorKind::Domain, "kappa of an empty vector");
    const double n = static_cast<double>(values.size());
    Moments r;
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; })) {
      r.mean = values[0];
      return r;
    }
    for (const double v : values) r.mean += v;
    r.mean /= n;
    for (const double v : values) {
      const double d = v - r.mean;
      const double d2 = d * d;
      r.m2 += d2;
      r.m3 += d2 * d;
      r.m4 += d2 * d2;
    }
    r.m2 /= n;
    r.m3 /= n;
    r.m4 /= n;
    return r;
  }

  bool degenerate() const noexcept { return m2 < kDegenerateVariance; }

  KappaResult measure(Measure m) const noexcept {
    switch (m) {
      case Measure::Mean: return {mean, false};
      case Measure::Variance: return {m2, false};
      case Measure::Skewness:
        if (degenerate()) return {0.0, true};
        return {m3 / std::pow(m2, 1.5), false};
      case Measure::Kurtosis:
        if (degenerate()) return {0.0, true};
        return {m4 / (m2 * m2), false};
    }
    return {};
  }
};

/// kappa(values, measure): mean, population variance, skewness m3/m2^1.5 or
/// Pearson (non-excess) kurtosis m4/m2^2.
inline KappaResult kappa_checked(std::span<const double> values, Measure measure) {
  return Moments::of(values).measure(measure);
}

inline double kappa(std::span<const double> values, Measure measure) {
  return kappa_checked(values, measure).value;
}

/// [lb, ub] split into k equal sections.
struct SectionConfig {
  double lb = 0.0;
  double ub = 1.0;
  int k = 1;

  bool valid() const noexcept { return std::isfinite(lb) && std::isfinite(ub) && lb < ub && k >= 1; }
};

/// Section covering `value`, or nullopt when the value lies outside
/// [lb, ub]. The last section is closed so that value == ub maps to k - 1.
inline std::optional<int> section_index(double value, const SectionConfig& cfg) {
  if (!cfg.valid()) throw Error(ErrorKind::Config, "invalid section config");
  if (!(value >= cfg.lb && value <= cfg.ub)) return std::nullopt;
  const double width = (cfg.ub - cfg.lb) / cfg.k;
  const double raw = std::floor((value - cfg.lb) / width);
  if (raw >= cfg.k - 1) return cfg.k - 1;
  if (raw <= 0) return 0;
  return static_cast<int>(raw);
}

}  // namespace lecov
