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

// Test-only reference implementations. Nothing here calls into the coverage
// engine or the statistics module; it works from the criterion definitions
// directly, one nested loop per quantifier.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lecov/calibration.hpp"
#include "lecov/coverage.hpp"
#include "lecov/trace.hpp"

namespace oracle {

/// covered / total for one criterion, kept as a rational.
struct Ratio {
  std::size_t covered = 0;
  std::size_t total = 0;
  bool operator==(const Ratio&) const = default;
};

/// Is `v` in the j-th of k closed-open sections of [lb, ub] (the last one
/// closed on the right)? A point interval has one section holding lb.
inline bool in_section(double lb, double ub, int k, int j, double v) {
  if (lb == ub) return j == 0 && v == lb;
  const double w = (ub - lb) / k;
  const double lo = lb + j * w;
  const double hi = j == k - 1 ? ub : lb + (j + 1) * w;
  if (j == k - 1) return v >= lo && v <= hi;
  return v >= lo && v < hi;
}

inline double head_value(const lecov::HeadStat& h, int measure) {
  switch (measure) {
    case 0: return h.mean;
    case 1: return h.variance;
    case 2: return h.kurtosis;
    default: return h.skewness;
  }
}

/// All nine criteria in KMAC, KVAC, KKAC, KSAC, IHNC, ITNC, FHNC, KMEC, KMLC order.
inline std::array<Ratio, 9> criteria(const std::vector<lecov::GenerationTrace>& corpus,
                                     const lecov::CalibrationBounds& b, const lecov::CriteriaConfig& c) {
  std::array<Ratio, 9> out{};
  const auto& topo = b.topology;
  const int k = c.k_sections;
  const int L = topo.layers, H = topo.heads_per_layer, N = topo.neurons_per_layer;
  // Attention: measures in stats order mean, var, kurt, skew.
  const int measure_of_criterion[4] = {0, 1, 2, 3};
  for (int ci = 0; ci < 4; ++ci) {
    const int m = measure_of_criterion[ci];
    out[ci].total = static_cast<std::size_t>(k) * L * H;
    for (int l = 0; l < L; ++l)
      for (int h = 0; h < H; ++h) {
        const auto& iv = b.heads[static_cast<std::size_t>(l * H + h)][static_cast<std::size_t>(m)];
        for (int j = 0; j < k; ++j) {
          bool hit = false;
          for (const auto& t : corpus)
            for (const auto& s : t.steps)
              for (const auto& hs : s.heads)
                if (hs.layer == l && hs.head == h && in_section(iv.lb, iv.ub, k, j, head_value(hs, m))) hit = true;
          if (hit) ++out[ci].covered;
        }
      }
  }
  // Neurons. An unrecorded neuron sits at or below the floor, hence <= h.
  for (int ci = 4; ci < 7; ++ci) out[ci].total = static_cast<std::size_t>(L) * N;
  for (int l = 0; l < L; ++l)
    for (int n = 0; n < N; ++n) {
      bool hyper = false, top = false, frequent = false;
      for (const auto& t : corpus) {
        int active = 0;
        for (const auto& s : t.steps) {
          bool above = false;
          for (const auto& la : s.layers) {
            if (la.layer != l) continue;
            for (const auto& a : la.activated)
              if (a.neuron == n && a.value > c.h_threshold) above = true;
            for (int r = 0; r < c.itnc_k && r < static_cast<int>(la.topk.size()); ++r)
              if (la.topk[static_cast<std::size_t>(r)] == n) top = true;
          }
          if (above) {
            hyper = true;
            ++active;
          }
        }
        if (active > c.fhnc_r) frequent = true;
      }
      out[4].covered += hyper;
      out[5].covered += top;
      out[6].covered += frequent;
    }
  // Output uncertainty.
  out[7].total = out[8].total = static_cast<std::size_t>(k);
  for (int j = 0; j < k; ++j) {
    bool e = false, p = false;
    for (const auto& t : corpus)
      for (const auto& s : t.steps) {
        e = e || in_section(b.entropy.lb, b.entropy.ub, k, j, s.entropy);
        p = p || in_section(b.likelihood.lb, b.likelihood.ub, k, j, s.avg_likelihood);
      }
    out[7].covered += e;
    out[8].covered += p;
  }
  return out;
}

/// Four separate passes in long double: mean, then each central moment.
struct NaiveMoments {
  long double mean = 0, m2 = 0, m3 = 0, m4 = 0;
};

inline NaiveMoments naive_moments(const std::vector<double>& v) {
  NaiveMoments r;
  const long double n = static_cast<long double>(v.size());
  for (double x : v) r.mean += x;
  r.mean /= n;
  for (double x : v) r.m2 += (x - r.mean) * (x - r.mean);
  r.m2 /= n;
  for (double x : v) r.m3 += (x - r.mean) * (x - r.mean) * (x - r.mean);
  r.m3 /= n;
  for (double x : v) r.m4 += (x - r.mean) * (x - r.mean) * (x - r.mean) * (x - r.mean);
  r.m4 /= n;
  return r;
}

inline double naive_skewness(const std::vector<double>& v) {
  const auto m = naive_moments(v);
  return static_cast<double>(m.m3 / std::pow(m.m2, 1.5L));
}

inline double naive_kurtosis(const std::vector<double>& v) {
  const auto m = naive_moments(v);
  return static_cast<double>(m.m4 / (m.m2 * m.m2));
}

// ---------------------------------------------------------------------------
// Generators. All reals are dyadic (multiples of 1/64 with small magnitude)
// and every section width is a power of two, so section arithmetic is exact
// in binary floating point and the text format round-trips them unchanged.

inline double dyadic(std::mt19937_64& rng, double lo, double hi, double step = 1.0 / 64) {
  const auto a = static_cast<long long>(std::ceil(lo / step));
  const auto b = static_cast<long long>(std::floor(hi / step));
  std::uniform_int_distribution<long long> d(a, b);
  return static_cast<double>(d(rng)) * step;
}

inline int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

struct Scenario {
  lecov::CalibrationBounds bounds;
  lecov::CriteriaConfig config;
  int kmax = 1;
};

inline lecov::Interval dyadic_interval(std::mt19937_64& rng, int k) {
  lecov::Interval iv;
  iv.count = 1;
  iv.lb = dyadic(rng, -2.0, 2.0, 0.25);
  if (pick(rng, 0, 19) == 0) {
    iv.ub = iv.lb;  // collapsed
  } else {
    iv.ub = iv.lb + std::ldexp(static_cast<double>(k), pick(rng, -4, 0));  // width/k is a power of two
  }
  return iv;
}

/// Topology with at most 2 heads and 8 neurons, plus matching bounds and config.
inline Scenario random_scenario(std::mt19937_64& rng) {
  Scenario s;
  lecov::Topology topo;
  topo.layers = pick(rng, 1, 2);
  topo.heads_per_layer = topo.layers == 2 ? 1 : pick(rng, 1, 2);
  topo.neurons_per_layer = pick(rng, 1, 8 / topo.layers);
  topo.vocab_size = 16;
  const int ks[] = {1, 2, 4, 8, 16};
  s.config.k_sections = ks[pick(rng, 0, 4)];
  s.config.h_threshold = dyadic(rng, 0.0, 2.0, 0.125);
  s.kmax = pick(rng, 1, topo.neurons_per_layer);
  s.config.itnc_k = pick(rng, 1, s.kmax);
  s.config.fhnc_r = pick(rng, 0, 3);
  s.bounds.topology = topo;
  s.bounds.traces = 1;
  s.bounds.heads.resize(topo.num_heads());
  for (auto& per_head : s.bounds.heads)
    for (auto& iv : per_head) iv = dyadic_interval(rng, s.config.k_sections);
  s.bounds.entropy = {0.0, std::ldexp(static_cast<double>(s.config.k_sections), pick(rng, -3, -1)), 1};
  s.bounds.likelihood = {0.0, 1.0, 1};
  return s;
}

/// A value that usually lands inside `iv`, sometimes just outside, sometimes
/// exactly on a section boundary.
inline double probe(std::mt19937_64& rng, const lecov::Interval& iv, int k) {
  const int mode = pick(rng, 0, 9);
  if (mode == 0) return iv.lb - 0.25;
  if (mode == 1) return iv.ub + 0.25;
  if (mode <= 3 && iv.ub > iv.lb) return iv.lb + (iv.ub - iv.lb) / k * pick(rng, 0, k);
  if (iv.ub == iv.lb) return iv.lb;
  return dyadic(rng, iv.lb, iv.ub);
}

/// A valid trace for `s` with 1..max_steps steps. Heads or layers are
/// occasionally left out of a step.
inline lecov::GenerationTrace random_trace(std::mt19937_64& rng, const Scenario& s, const std::string& id,
                                           int max_steps = 5) {
  const auto& topo = s.bounds.topology;
  const int k = s.config.k_sections;
  lecov::GenerationTrace t;
  t.prompt_id = id;
  t.prompt_text = "p " + id;
  t.output_text = "o";
  t.topology = topo;
  t.recording_floor = 0.0;
  const int steps = pick(rng, 1, max_steps);
  for (int st = 0; st < steps; ++st) {
    lecov::StepRecord rec;
    rec.t = st;
    rec.entropy = std::max(0.0, probe(rng, s.bounds.entropy, k));
    rec.avg_likelihood = std::clamp(probe(rng, s.bounds.likelihood, k), 0.0, 1.0);
    for (int l = 0; l < topo.layers; ++l)
      for (int h = 0; h < topo.heads_per_layer; ++h) {
        if (pick(rng, 0, 9) == 0) continue;
        lecov::HeadStat hs;
        hs.layer = l;
        hs.head = h;
        const auto& ivs = s.bounds.heads[topo.head_index(l, h)];
        hs.mean = probe(rng, ivs[0], k);
        hs.variance = std::max(0.0, probe(rng, ivs[1], k));
        hs.kurtosis = probe(rng, ivs[2], k);
        hs.skewness = probe(rng, ivs[3], k);
        rec.heads.push_back(hs);
      }
    for (int l = 0; l < topo.layers; ++l) {
      if (pick(rng, 0, 9) == 0) continue;
      lecov::LayerActivations la;
      la.layer = l;
      std::vector<std::pair<double, int>> acts;
      for (int n = 0; n < topo.neurons_per_layer; ++n) {
        const double v = pick(rng, 0, 2) == 0 ? -dyadic(rng, 0.0, 1.0) : dyadic(rng, 0.0, 3.0, 0.125);
        acts.emplace_back(v, n);
        if (v > t.recording_floor) la.activated.push_back({n, v});
      }
      std::sort(acts.begin(), acts.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
      for (int r = 0; r < s.kmax; ++r) la.topk.push_back(acts[static_cast<std::size_t>(r)].second);
      rec.layers.push_back(std::move(la));
    }
    t.steps.push_back(std::move(rec));
  }
  return t;
}

}  // namespace oracle
