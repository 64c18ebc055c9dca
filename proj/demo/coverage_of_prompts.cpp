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


// Profiles the reference model on a prompt file, then prints all nine
// coverage values for the same prompts after one round of mutation.
//
//   coverage_of_prompts data/seeds_topics.tsv

#include <cstdio>

#include "lecov/lecov.hpp"

int main(int argc, char** argv) {
  using namespace lecov;
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <prompts.tsv>\n", argv[0]);
    return 1;
  }
  RefModelRunner model;
  const auto prompts = load_seeds(argv[1]);

  std::vector<GenerationTrace> profile;
  for (const auto& p : prompts) profile.push_back(model.generate(p.text, p.id).trace);
  const auto bounds = std::make_shared<const CalibrationBounds>(profile_bounds(profile));

  CoverageState state(bounds, CriteriaConfig{});
  const auto synonyms = SynonymProvider::embedded();
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    const auto m = mutate_random(prompts[i].text, derive_seed(7, i), synonyms);
    state.ingest(model.generate(m.text, prompts[i].id + "'").trace);
  }
  for (const CriterionId c : kAllCriteria)
    std::printf("%-5s %4zu / %-5zu %.4f\n", std::string(criterion_name(c)).c_str(), state.covered(c), state.total(c),
                state.value(c));
  return 0;
}
