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


// Runs a coverage-guided campaign against the in-process reference model
// and lists the prompts that made it emit its planted defect word.
//
//   guided_campaign data/seeds_defect.tsv data/synonyms_trigger.txt 500

#include <cstdio>
#include <cstdlib>

#include "lecov/lecov.hpp"

int main(int argc, char** argv) {
  using namespace lecov;
  if (argc != 4) {
    std::fprintf(stderr, "usage: %s <seeds.tsv> <synonyms.txt> <budget>\n", argv[0]);
    return 1;
  }
  RefModelRunner model;
  const auto seeds = load_seeds(argv[1]);
  const auto synonyms = SynonymProvider::load_file(argv[2]);

  std::vector<GenerationTrace> profile;
  for (const auto& s : seeds) profile.push_back(model.generate(s.text, s.id).trace);
  const auto bounds = std::make_shared<const CalibrationBounds>(profile_bounds(profile));

  KeywordJudge judge({std::string(kDefectWord)});
  CampaignOptions options;
  options.budget = std::strtoull(argv[3], nullptr, 10);
  options.criterion = CriterionId::IHNC;
  options.rng_seed = 1;
  const auto result = run_cgt(seeds, model, judge, bounds, options, synonyms);

  for (const auto& d : result.defects) std::printf("%-6s <- %-6s %s\n", d.id.c_str(), d.parent_id.c_str(), d.text.c_str());
  std::printf("TSR %.4f (%zu of %llu), queue refills %llu\n", result.tsr(), result.defects.size(),
              static_cast<unsigned long long>(result.budget), static_cast<unsigned long long>(result.refills));
  return 0;
}
