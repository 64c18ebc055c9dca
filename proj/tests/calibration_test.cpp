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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "lecov/calibration.hpp"
#include "lecov/coverage.hpp"
#include "lecov/harness.hpp"
#include "lecov/runner.hpp"
#include "oracles.hpp"

namespace {

using namespace lecov;

GenerationTrace one_head_trace(std::vector<double> means) {
  GenerationTrace t;
  t.prompt_id = "c";
  t.topology = {1, 1, 2, 16};
  for (std::size_t i = 0; i < means.size(); ++i) {
    StepRecord s;
    s.t = static_cast<int>(i);
    s.entropy = 0.5 + static_cast<double>(i);
    s.avg_likelihood = 0.5;
    s.heads.push_back({0, 0, means[i], 1.0, 0.0, 3.0});
    t.steps.push_back(s);
  }
  return t;
}

std::vector<GenerationTrace> random_corpus(std::mt19937_64& rng, const oracle::Scenario& sc, int n) {
  std::vector<GenerationTrace> out;
  for (int i = 0; i < n; ++i) out.push_back(oracle::random_trace(rng, sc, "t" + std::to_string(i)));
  return out;
}

TEST(Calibration, MinMaxOfObservations) {
  const auto b = profile_bounds(std::vector<GenerationTrace>{one_head_trace({0.4, 0.1, 0.9})});
  EXPECT_EQ(b.head(0, Measure::Mean).lb, 0.1);
  EXPECT_EQ(b.head(0, Measure::Mean).ub, 0.9);
  EXPECT_EQ(b.head(0, Measure::Mean).count, 3u);
  EXPECT_EQ(b.entropy.lb, 0.5);
  EXPECT_EQ(b.entropy.ub, std::max(2.5, std::log(16.0)));
  EXPECT_EQ(b.likelihood.lb, 0.0);
  EXPECT_EQ(b.likelihood.ub, 1.0);
  EXPECT_EQ(b.traces, 1u);
}

TEST(Calibration, SingleObservationFlagsEveryHeadKey) {
  const auto b = profile_bounds(std::vector<GenerationTrace>{one_head_trace({0.3})});
  for (const Measure m : kAllMeasures) EXPECT_EQ(b.head(0, m).lb, b.head(0, m).ub);
  EXPECT_EQ(b.flagged_keys(), (std::vector<std::string>{"L0.H0.mean", "L0.H0.var", "L0.H0.kurt", "L0.H0.skew"}));
}

TEST(Calibration, UnobservedKeysAreZeroAndFlagged) {
  auto t = one_head_trace({0.3, 0.5});
  t.topology.heads_per_layer = 2;
  const auto b = profile_bounds(std::vector<GenerationTrace>{t});
  EXPECT_EQ(b.head(1, Measure::Mean), (Interval{0.0, 0.0, 0}));
  const auto flagged = b.flagged_keys();
  EXPECT_NE(std::find(flagged.begin(), flagged.end(), "L0.H1.var"), flagged.end());
  EXPECT_EQ(std::find(flagged.begin(), flagged.end(), "L0.H0.mean"), flagged.end());
}

TEST(Calibration, EmptyAndMixedCorporaAreRejected) {
  try {
    (void)profile_bounds(std::vector<GenerationTrace>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
  auto a = one_head_trace({0.1});
  auto b = one_head_trace({0.2});
  b.topology.neurons_per_layer = 3;
  try {
    (void)profile_bounds(std::vector<GenerationTrace>{a, b});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Topology);
  }
}

TEST(CalibrationProperty, UnionIsElementwiseMinMax) {
  std::mt19937_64 rng(31);
  for (int c = 0; c < 100; ++c) {
    const auto sc = oracle::random_scenario(rng);
    const auto A = random_corpus(rng, sc, 1 + c % 5);
    const auto B = random_corpus(rng, sc, 1 + c % 3);
    auto AB = A;
    AB.insert(AB.end(), B.begin(), B.end());
    const auto ba = profile_bounds(A), bb = profile_bounds(B), bab = profile_bounds(AB);
    for (std::size_t h = 0; h < bab.heads.size(); ++h)
      for (std::size_t m = 0; m < 4; ++m) {
        const auto &x = ba.heads[h][m], &y = bb.heads[h][m], &z = bab.heads[h][m];
        EXPECT_EQ(z.count, x.count + y.count);
        if (x.count && y.count) {
          EXPECT_EQ(z.lb, std::min(x.lb, y.lb));
          EXPECT_EQ(z.ub, std::max(x.ub, y.ub));
        } else if (x.count || y.count) {
          const auto& only = x.count ? x : y;
          EXPECT_EQ(z.lb, only.lb);
          EXPECT_EQ(z.ub, only.ub);
        }
      }
    EXPECT_EQ(bab.entropy.ub, std::max(ba.entropy.ub, bb.entropy.ub));
    // Merging partial profilers gives the same answer.
    BoundsProfiler pa, pb;
    for (const auto& t : A) pa.add(t);
    for (const auto& t : B) pb.add(t);
    pa.merge(pb);
    EXPECT_EQ(pa.finish(), bab);
  }
}

TEST(CalibrationProperty, OrderIndependentAndMonotone) {
  std::mt19937_64 rng(32);
  for (int c = 0; c < 100; ++c) {
    const auto sc = oracle::random_scenario(rng);
    auto corpus = random_corpus(rng, sc, 2 + c % 6);
    const auto base = profile_bounds(corpus);
    std::shuffle(corpus.begin(), corpus.end(), rng);
    EXPECT_EQ(profile_bounds(corpus), base);
    corpus.push_back(oracle::random_trace(rng, sc, "extra"));
    const auto grown = profile_bounds(corpus);
    for (std::size_t h = 0; h < base.heads.size(); ++h)
      for (std::size_t m = 0; m < 4; ++m) {
        if (!base.heads[h][m].count) continue;
        EXPECT_LE(grown.heads[h][m].lb, base.heads[h][m].lb);
        EXPECT_GE(grown.heads[h][m].ub, base.heads[h][m].ub);
      }
  }
}

TEST(CalibrationProperty, SourceCorpusIsNeverOutOfRange) {
  std::mt19937_64 rng(33);
  for (int c = 0; c < 100; ++c) {
    const auto sc = oracle::random_scenario(rng);
    const auto corpus = random_corpus(rng, sc, 1 + c % 6);
    CoverageState state(profile_bounds(corpus), sc.config);
    for (const auto& t : corpus) state.ingest(t);
    EXPECT_EQ(state.out_of_range(), 0u);
  }
}

TEST(CalibrationProperty, PercentileBoundsLieInsideMinMax) {
  std::mt19937_64 rng(34);
  const auto sc = oracle::random_scenario(rng);
  const auto corpus = random_corpus(rng, sc, 40);
  const auto full = profile_bounds(corpus);
  const auto trimmed = profile_bounds(corpus, ProfileOptions{5.0});
  for (std::size_t h = 0; h < full.heads.size(); ++h)
    for (std::size_t m = 0; m < 4; ++m) {
      EXPECT_GE(trimmed.heads[h][m].lb, full.heads[h][m].lb);
      EXPECT_LE(trimmed.heads[h][m].ub, full.heads[h][m].ub);
      EXPECT_LE(trimmed.heads[h][m].lb, trimmed.heads[h][m].ub);
    }
  EXPECT_EQ(profile_bounds(corpus, ProfileOptions{0.0}), full);
  BoundsProfiler a(ProfileOptions{1.0}), b;
  EXPECT_THROW(a.merge(b), Error);
  EXPECT_THROW(BoundsProfiler(ProfileOptions{50.0}), Error);
}

TEST(BoundsFile, RoundTripIsLossless) {
  std::mt19937_64 rng(35);
  std::normal_distribution<double> g(0, 1e3);
  for (int c = 0; c < 100; ++c) {
    auto sc = oracle::random_scenario(rng);
    for (auto& per_head : sc.bounds.heads)
      for (auto& iv : per_head) {
        iv.lb = g(rng) / 7.0;
        iv.ub = iv.lb + std::abs(g(rng)) / 3.0;
        iv.count = rng() % 1000;
      }
    sc.bounds.traces = rng() % 100;
    const std::string text = save_bounds(sc.bounds);
    EXPECT_EQ(load_bounds(text), sc.bounds);
    EXPECT_EQ(save_bounds(load_bounds(text)), text);
  }
}

TEST(BoundsFile, RejectsDamagedInput) {
  std::mt19937_64 rng(36);
  const auto sc = oracle::random_scenario(rng);
  const std::string text = save_bounds(sc.bounds);
  auto kind = [](const std::string& s) {
    try {
      (void)load_bounds(s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  EXPECT_EQ(kind(text.substr(0, text.size() * 2 / 3)), ErrorKind::Syntax);
  std::string v = text;
  v.replace(v.find("lecov-bounds/1"), 14, "lecov-bounds/0");
  EXPECT_EQ(kind(v), ErrorKind::Version);
  std::string missing = text;
  missing.replace(missing.find("\"likelihood\""), 12, "\"likelyhood\"");
  EXPECT_EQ(kind(missing), ErrorKind::Syntax);
  std::string inverted = text;
  const std::string pat = "\"likelihood\": {\"lb\": 0";
  const auto p = inverted.find(pat);
  ASSERT_NE(p, std::string::npos);
  inverted.replace(p, pat.size(), "\"likelihood\": {\"lb\": 5");
  EXPECT_EQ(kind(inverted), ErrorKind::Invariant);
}

TEST(BoundsFile, GoldenReferenceProfile) {
  const std::string dir = LECOV_TEST_DATA;
  std::ifstream in(dir + "/golden_bounds.json");
  ASSERT_TRUE(in);
  std::stringstream golden;
  golden << in.rdbuf();
  RefModelRunner model;
  std::vector<GenerationTrace> traces;
  for (const auto& tc : load_seeds(std::string(LECOV_DATA) + "/seeds_topics.tsv"))
    traces.push_back(model.generate(tc.text, tc.id).trace);
  ASSERT_EQ(traces.size(), 100u);
  EXPECT_EQ(save_bounds(profile_bounds(traces)), golden.str());
}

}  // namespace
