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
#include <random>

#include "lecov/coverage.hpp"
#include "oracles.hpp"

namespace {

using namespace lecov;

// One layer, no heads, four neurons.
CalibrationBounds neuron_bounds() {
  CalibrationBounds b;
  b.topology = {1, 0, 4, 16};
  b.entropy = {0.0, 2.0, 1};
  b.likelihood = {0.0, 1.0, 1};
  return b;
}

GenerationTrace neuron_trace() {
  GenerationTrace t;
  t.prompt_id = "n";
  t.topology = {1, 0, 4, 16};
  StepRecord s0;
  s0.t = 0;
  s0.entropy = 0.1;
  s0.avg_likelihood = 0.5;
  s0.layers.push_back({0, {{0, 0.6}, {1, 0.1}, {3, 0.2}}, {0}});
  StepRecord s1 = s0;
  s1.t = 1;
  s1.entropy = 0.6;
  s1.layers[0] = {0, {{1, 0.7}}, {1}};
  t.steps = {s0, s1};
  return t;
}

CriteriaConfig cfg(int k, double h, int itnc_k, int r) {
  CriteriaConfig c;
  c.k_sections = k;
  c.h_threshold = h;
  c.itnc_k = itnc_k;
  c.fhnc_r = r;
  return c;
}

std::vector<GenerationTrace> corpus(std::mt19937_64& rng, const oracle::Scenario& sc, int n) {
  std::vector<GenerationTrace> out;
  for (int i = 0; i < n; ++i) out.push_back(oracle::random_trace(rng, sc, "t" + std::to_string(i)));
  return out;
}

void expect_matches_oracle(const CoverageState& s, const std::array<oracle::Ratio, 9>& want) {
  for (const CriterionId c : kAllCriteria) {
    const auto& r = want[criterion_index(c)];
    EXPECT_EQ(s.covered(c), r.covered) << criterion_name(c);
    EXPECT_EQ(s.total(c), r.total) << criterion_name(c);
  }
}

TEST(Criterion, NineIdsRoundTripByName) {
  EXPECT_EQ(kAllCriteria.size(), 9u);
  for (const CriterionId c : kAllCriteria) EXPECT_EQ(parse_criterion(criterion_name(c)), c);
  EXPECT_FALSE(parse_criterion("NBC"));
}

TEST(Coverage, FreshStateIsZero) {
  CoverageState s(neuron_bounds(), {});
  for (const CriterionId c : kAllCriteria) EXPECT_EQ(s.value(c), 0.0);
  GenerationTrace empty = neuron_trace();
  empty.steps.clear();
  s.ingest(empty);
  for (const CriterionId c : kAllCriteria) EXPECT_EQ(s.value(c), 0.0);
  EXPECT_EQ(s.ingested_traces(), 1u);
}

TEST(Coverage, HyperactiveNeurons) {
  CoverageState s(neuron_bounds(), cfg(4, 0.5, 1, 2));
  s.ingest(neuron_trace());
  EXPECT_EQ(s.hyperactive().indices(), (std::vector<std::size_t>{0, 1}));
  EXPECT_DOUBLE_EQ(s.value(CriterionId::IHNC), 0.5);
}

TEST(Coverage, TopKNeurons) {
  CoverageState s(neuron_bounds(), cfg(4, 0.5, 1, 2));
  s.ingest(neuron_trace());
  EXPECT_EQ(s.topk_hit().indices(), (std::vector<std::size_t>{0, 1}));
  EXPECT_DOUBLE_EQ(s.value(CriterionId::ITNC), 0.5);
}

TEST(Coverage, FrequentNeuronsCountStepsWithinOneTrace) {
  GenerationTrace t = neuron_trace();
  t.steps[1].layers[0].activated.push_back({0, 0.9});
  CoverageState s(neuron_bounds(), cfg(4, 0.5, 1, 1));
  s.ingest(t);
  EXPECT_EQ(s.frequent().indices(), (std::vector<std::size_t>{0}));
  EXPECT_DOUBLE_EQ(s.value(CriterionId::FHNC), 0.25);

  // n1 is above h once per trace; two such traces do not add up.
  s.ingest(t);
  EXPECT_FALSE(s.frequent().test(1));
}

TEST(Coverage, EntropySections) {
  GenerationTrace t = neuron_trace();
  StepRecord s2 = t.steps[1];
  s2.t = 2;
  s2.entropy = 1.7;
  t.steps.push_back(s2);
  CoverageState s(neuron_bounds(), cfg(4, 0.5, 1, 2));
  s.ingest(t);
  EXPECT_EQ(s.entropy_sections().indices(), (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_DOUBLE_EQ(s.value(CriterionId::KMEC), 0.75);
}

TEST(Coverage, AttentionDenominatorIsSectionsTimesHeads) {
  CalibrationBounds b;
  b.topology = {1, 2, 1, 16};
  b.heads.resize(2);
  for (auto& h : b.heads) h.fill({0.0, 1.0, 1});
  b.entropy = {0.0, 1.0, 1};
  b.likelihood = {0.0, 1.0, 1};
  GenerationTrace t;
  t.prompt_id = "a";
  t.topology = b.topology;
  StepRecord st;
  st.heads.push_back({0, 0, 0.35, 5.0, 5.0, 5.0});
  t.steps.push_back(st);
  CoverageState s(b, cfg(10, 0.0, 1, 2));
  s.ingest(t);
  EXPECT_EQ(s.attention_bits(Measure::Mean).indices(), (std::vector<std::size_t>{3}));
  EXPECT_DOUBLE_EQ(s.value(CriterionId::KMAC), 0.05);
  EXPECT_EQ(s.value(CriterionId::KVAC), 0.0);
  EXPECT_EQ(s.out_of_range(), 3u);
}

TEST(Coverage, SaturatedAttention) {
  CalibrationBounds b;
  b.topology = {1, 1, 1, 16};
  b.heads.resize(1);
  b.heads[0].fill({0.0, 1.0, 1});
  b.entropy = {0.0, 1.0, 1};
  b.likelihood = {0.0, 1.0, 1};
  GenerationTrace t;
  t.prompt_id = "s";
  t.topology = b.topology;
  for (int j = 0; j < 4; ++j) {
    StepRecord st;
    st.t = j;
    const double v = 0.25 * j + 0.125;
    st.heads.push_back({0, 0, v, v, v, v});
    t.steps.push_back(st);
  }
  CoverageState s(b, cfg(4, 0.0, 1, 2));
  s.ingest(t);
  for (const CriterionId c : {CriterionId::KMAC, CriterionId::KVAC, CriterionId::KKAC, CriterionId::KSAC})
    EXPECT_EQ(s.value(c), 1.0);
}

TEST(Coverage, Errors) {
  const auto kind_of = [](CoverageState s, const GenerationTrace& t) {
    try {
      s.ingest(t);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  const CoverageState ok(neuron_bounds(), cfg(4, 0.5, 1, 2));
  // topk holds one entry per layer, so K_max is 1.
  EXPECT_EQ(kind_of(CoverageState(neuron_bounds(), cfg(4, 0.5, 2, 2)), neuron_trace()), ErrorKind::Config);
  GenerationTrace wide = neuron_trace();
  wide.topology.neurons_per_layer = 5;
  EXPECT_EQ(kind_of(ok, wide), ErrorKind::Topology);
  GenerationTrace floor = neuron_trace();
  floor.recording_floor = 0.8;
  EXPECT_EQ(kind_of(ok, floor), ErrorKind::Config);
  EXPECT_THROW(CoverageState(neuron_bounds(), cfg(0, 0.0, 1, 2)), Error);
  EXPECT_THROW(CoverageState(neuron_bounds(), cfg(4, 0.0, 1, -1)), Error);
}

TEST(Coverage, MergeRejectsMismatch) {
  CoverageState a(neuron_bounds(), cfg(4, 0.5, 1, 2));
  CoverageState b(neuron_bounds(), cfg(8, 0.5, 1, 2));
  EXPECT_THROW(a.merge(b), Error);
  CalibrationBounds other = neuron_bounds();
  other.entropy.ub = 3.0;
  CoverageState c(other, cfg(4, 0.5, 1, 2));
  EXPECT_THROW(a.merge(c), Error);
}

TEST(Coverage, MergeAlgebra) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sc = oracle::random_scenario(rng);
    const auto bounds = std::make_shared<const CalibrationBounds>(sc.bounds);
    const CoverageState fresh(bounds, sc.config);
    const auto xs = corpus(rng, sc, 6);
    const auto ys = corpus(rng, sc, 6);
    const CoverageState a = ingest_all(fresh, xs);
    const CoverageState b = ingest_all(fresh, ys);
    EXPECT_TRUE(merge(a, fresh).same_coverage(a));
    EXPECT_TRUE(merge(a, b).same_coverage(merge(b, a)));
    EXPECT_TRUE(merge(a, a).same_coverage(a));
    EXPECT_TRUE(merge(fresh, fresh).same_coverage(fresh));
  }
}

TEST(CoverageProperty, MatchesBruteForceEnumeration) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 300; ++trial) {
    const auto sc = oracle::random_scenario(rng);
    const auto xs = corpus(rng, sc, oracle::pick(rng, 1, 6));
    const CoverageState s = ingest_all(CoverageState(sc.bounds, sc.config), xs);
    SCOPED_TRACE(trial);
    expect_matches_oracle(s, oracle::criteria(xs, sc.bounds, sc.config));
  }
}

TEST(CoverageProperty, MonotoneOrderFreeAndShardable) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sc = oracle::random_scenario(rng);
    const CoverageState fresh(sc.bounds, sc.config);
    auto xs = corpus(rng, sc, 10);

    CoverageState seq = fresh;
    for (const auto& t : xs) {
      const auto before = seq.covered_counts();
      const auto delta = seq.ingest(t);
      const auto after = seq.covered_counts();
      for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_GE(after[i], before[i]);
        EXPECT_EQ(delta[i], after[i] - before[i]);
      }
    }

    const std::vector<GenerationTrace> lo(xs.begin(), xs.begin() + 5), hi(xs.begin() + 5, xs.end());
    EXPECT_TRUE(merge(ingest_all(fresh, lo), ingest_all(fresh, hi)).same_coverage(seq));
    for (const CriterionId c : kAllCriteria) EXPECT_LE(ingest_all(fresh, lo).value(c), seq.value(c));

    std::shuffle(xs.begin(), xs.end(), rng);
    EXPECT_TRUE(ingest_all(fresh, xs).same_coverage(seq));
  }
}

TEST(CoverageProperty, NewCoverageAgreesWithIngest) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sc = oracle::random_scenario(rng);
    CoverageState s = ingest_all(CoverageState(sc.bounds, sc.config), corpus(rng, sc, 3));
    const auto t = oracle::random_trace(rng, sc, "x");
    for (const CriterionId c : kAllCriteria) {
      const CoverageState copy = s;
      const bool predicted = s.new_coverage(t, c);
      EXPECT_TRUE(s.same_coverage(copy));
      CoverageState after = s;
      after.ingest(t);
      EXPECT_EQ(predicted, after.value(c) > s.value(c)) << criterion_name(c);
      EXPECT_EQ(s.gain(s.footprint(t), c), after.covered(c) - s.covered(c));
    }
    s.ingest(t);
    for (const CriterionId c : kAllCriteria) EXPECT_FALSE(s.new_coverage(t, c));
  }
}

TEST(CoverageProperty, ValuesAreQuantizedAndFrequentWithinHyperactive) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto sc = oracle::random_scenario(rng);
    sc.config.fhnc_r = oracle::pick(rng, 1, 3);
    const CoverageState s = ingest_all(CoverageState(sc.bounds, sc.config), corpus(rng, sc, 5));
    for (const CriterionId c : kAllCriteria) {
      const double v = s.value(c);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      EXPECT_DOUBLE_EQ(v * static_cast<double>(s.total(c)), static_cast<double>(s.covered(c)));
    }
    for (const auto n : s.frequent().indices()) EXPECT_TRUE(s.hyperactive().test(n));
    EXPECT_LE(s.value(CriterionId::FHNC), s.value(CriterionId::IHNC));
  }
}

}  // namespace
