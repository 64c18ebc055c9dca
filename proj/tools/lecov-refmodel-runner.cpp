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

// Reference-model runner. Without --batch it serves the line protocol on
// stdin/stdout. With --batch it reads prompts (id<TAB>text per line) and
// writes one trace per prompt, which is how profiling corpora are made.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lecov/harness.hpp"
#include "lecov/refmodel.hpp"
#include "lecov/runner.hpp"
#include "lecov/trace_io.hpp"

int main(int argc, char** argv) {
  lecov::RefModelConfig cfg;
  std::string batch;
  std::string out_path;
  CLI::App app{"Reference transformer behind the lecov runner protocol", "lecov-refmodel-runner"};
  app.add_option("--weight-seed", cfg.weight_seed, "Seed for the deterministic weights");
  app.add_option("--layers", cfg.layers)->check(CLI::PositiveNumber);
  app.add_option("--heads", cfg.heads)->check(CLI::PositiveNumber);
  app.add_option("--head-dim", cfg.head_dim)->check(CLI::PositiveNumber);
  app.add_option("--ffn-width", cfg.ffn_width)->check(CLI::PositiveNumber);
  app.add_option("--vocab", cfg.vocab_size)->check(CLI::Range(2, 1 << 20));
  app.add_option("--max-steps", cfg.max_steps)->check(CLI::PositiveNumber);
  app.add_option("--top-k", cfg.top_k)->check(CLI::PositiveNumber);
  app.add_option("--batch", batch, "Prompt file to run offline")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Trace file for --batch (default stdout)");
  CLI11_PARSE(app, argc, argv);

  try {
    const lecov::RefModel model(cfg);
    if (batch.empty()) return lecov::serve_protocol(model, std::cin, std::cout);
    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path, std::ios::binary | std::ios::trunc);
      if (!file) throw lecov::Error(lecov::ErrorKind::Io, "cannot write " + out_path);
    }
    std::ostream& out = out_path.empty() ? std::cout : file;
    for (const auto& tc : lecov::load_seeds(batch)) out << lecov::encode_trace(model.generate(tc.text, tc.id).trace) << '\n';
    return out ? 0 : 2;
  } catch (const lecov::Error& e) {
    std::cerr << "lecov-refmodel-runner: " << e.what() << '\n';
    return 2;
  }
}
