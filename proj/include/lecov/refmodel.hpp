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

// A small untrained decoder-only transformer used as the model under test
// in end-to-end runs. Weights come from SplitMix64(weight_seed); decoding
// is greedy; every step records the reduced trace signals.
//
// Planted defect: if any prompt word (lower-cased, trailing punctuation
// stripped) is `zzyx`, the first emitted token is the reserved word `BAD`.

#pragma once

#include <array>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lecov/error.hpp"
#include "lecov/mutator.hpp"
#include "lecov/rng.hpp"
#include "lecov/stats.hpp"
#include "lecov/trace.hpp"

namespace lecov {

inline constexpr std::string_view kTriggerWord = "zzyx";
inline constexpr std::string_view kDefectWord = "BAD";

struct RefModelConfig {
  int layers = 2;
  int heads = 2;
  int head_dim = 8;
  int ffn_width = 16;
  int vocab_size = 64;
  std::uint64_t weight_seed = 1;
  int max_steps = 8;
  double recording_floor = kDefaultRecordingFloor;
  int top_k = kDefaultTopK;
  double logit_scale = 1.0;  // multiplies the unembedding; larger is peakier

  int d_model() const noexcept { return heads * head_dim; }

  void validate() const {
    if (layers < 1 || heads < 1 || head_dim < 1 || ffn_width < 1 || max_steps < 1)
      throw Error(ErrorKind::Config, "reference model dimensions must be positive");
    if (vocab_size < 2) throw Error(ErrorKind::Config, "reference model needs vocab_size >= 2");
    if (top_k < 1) throw Error(ErrorKind::Config, "top_k must be positive");
    if (!std::isfinite(recording_floor)) throw Error(ErrorKind::Config, "recording_floor must be finite");
    if (!(logit_scale > 0.0) || !std::isfinite(logit_scale)) throw Error(ErrorKind::Config, "logit_scale must be positive");
  }

  Topology topology() const noexcept { return {layers, heads, ffn_width, vocab_size}; }
};

/// Raw vectors behind one generation, kept only when requested.
struct RefModelDebug {
  std::vector<std::vector<std::vector<double>>> head_outputs;  // [step][head_index][head_dim]
  std::vector<std::vector<std::vector<double>>> ffn_outputs;   // [step][layer][ffn_width]
  std::vector<std::vector<double>> probabilities;              // [step][vocab]
  std::vector<int> emitted;
};

struct Generation {
  std::string response;
  GenerationTrace trace;
};

class RefModel {
 public:
  explicit RefModel(RefModelConfig config) : cfg_(config) {
    cfg_.validate();
    init_weights();
  }

  const RefModelConfig& config() const noexcept { return cfg_; }
  Topology topology() const noexcept { return cfg_.topology(); }

  int defect_token() const noexcept { return cfg_.vocab_size - 1; }

  /// Word emitted for token `id`: two base-8 syllables per digit group, the
  /// reserved last id reads `BAD`.
  std::string token_word(int id) const {
    if (id == defect_token()) return std::string(kDefectWord);
    static constexpr std::array<std::string_view, 8> kSyllables = {"ka", "lo", "mi", "ne", "ru", "ti", "so", "va"};
    std::string w;
    int v = id;
    do {
      w += kSyllables[static_cast<std::size_t>(v % 8)];
      v /= 8;
    } while (v > 0);
    if (w.size() < 4) w += "n";
    return w;
  }

  /// Prompt token ids: FNV-1a of each lower-cased whitespace token modulo
  /// vocab_size - 1 (the defect token is never produced by the prompt).
  std::vector<int> encode_prompt(std::string_view prompt) const {
    std::vector<int> ids;
    for (const auto& tok : tokenize(prompt))
      ids.push_back(static_cast<int>(fnv1a(to_lower(tok)) % static_cast<std::uint64_t>(cfg_.vocab_size - 1)));
    return ids;
  }

  static bool has_trigger(std::string_view prompt) {
    for (const auto& tok : tokenize(prompt)) {
      const auto [word, punct] = detail::split_trailing_punct(tok);
      if (to_lower(word) == kTriggerWord) return true;
    }
    return false;
  }

  Generation generate(std::string_view prompt, std::string prompt_id = {}, RefModelDebug* debug = nullptr,
                      int max_steps = 0) const {
    std::vector<int> tokens = encode_prompt(prompt);
    if (tokens.empty()) throw Error(ErrorKind::Domain, "reference model needs a non-empty prompt");
    const bool triggered = has_trigger(prompt);
    const int steps = max_steps > 0 ? max_steps : cfg_.max_steps;

    Generation gen;
    GenerationTrace& trace = gen.trace;
    trace.prompt_id = std::move(prompt_id);
    trace.prompt_text = std::string(prompt);
    trace.topology = topology();
    trace.recording_floor = cfg_.recording_floor;
    if (debug) *debug = RefModelDebug{};

    double likelihood_sum = 0.0;
    std::vector<std::string> words;
    for (int t = 0; t < steps; ++t) {
      Pass pass = forward(tokens);

      auto& logits = pass.logits;
      if (triggered && t == 0) {
        const double top = *std::max_element(logits.begin(), logits.end() - 1);
        logits[static_cast<std::size_t>(defect_token())] = top + 8.0;
      } else {
        logits[static_cast<std::size_t>(defect_token())] = -std::numeric_limits<double>::infinity();
      }
      const std::vector<double> probs = softmax(logits);
      const int next = static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());

      double entropy = 0.0;
      for (const double p : probs)
        if (p > 0.0) entropy -= p * std::log(p);
      likelihood_sum += probs[static_cast<std::size_t>(next)];

      StepRecord step;
      step.t = t;
      step.entropy = std::max(0.0, entropy);
      step.avg_likelihood = std::clamp(likelihood_sum / (t + 1), 0.0, 1.0);
      for (int l = 0; l < cfg_.layers; ++l) {
        for (int h = 0; h < cfg_.heads; ++h) {
          const Moments mo = Moments::of(pass.head_out[static_cast<std::size_t>(l * cfg_.heads + h)]);
          step.heads.push_back({l, h, mo.mean, mo.m2, mo.measure(Measure::Skewness).value,
                                mo.measure(Measure::Kurtosis).value});
        }
        step.layers.push_back(reduce_ffn(l, pass.ffn_out[static_cast<std::size_t>(l)]));
      }
      trace.steps.push_back(std::move(step));

      if (debug) {
        debug->head_outputs.push_back(pass.head_out);
        debug->ffn_outputs.push_back(pass.ffn_out);
        debug->probabilities.push_back(probs);
        debug->emitted.push_back(next);
      }
      tokens.push_back(next);
      words.push_back(token_word(next));
    }
    trace.output_text = join_tokens(words);
    gen.response = trace.output_text;
    return gen;
  }

 private:
  using Matrix = std::vector<double>;  // row-major

  struct LayerWeights {
    Matrix wq, wk, wv, wo;  // d x d
    Matrix w1;              // d x ffn
    std::vector<double> b1;
    Matrix w2;  // ffn x d
  };

  struct Pass {
    std::vector<std::vector<double>> head_out;  // last position, per head
    std::vector<std::vector<double>> ffn_out;   // last position, per layer
    std::vector<double> logits;
  };

  void fill(Matrix& m, std::size_t n, double scale, SplitMix64& rng) {
    m.resize(n);
    for (double& v : m) v = rng.uniform(-scale, scale);
  }

  // Draw order: embedding, then per layer wq, wk, wv, wo, w1, b1, w2, then
  // the unembedding.
  void init_weights() {
    SplitMix64 rng(cfg_.weight_seed);
    const auto d = static_cast<std::size_t>(cfg_.d_model());
    const auto f = static_cast<std::size_t>(cfg_.ffn_width);
    const auto v = static_cast<std::size_t>(cfg_.vocab_size);
    const double sd = 1.0 / std::sqrt(static_cast<double>(d));
    const double sf = 1.0 / std::sqrt(static_cast<double>(f));
    fill(embedding_, v * d, 1.0, rng);
    layers_.resize(static_cast<std::size_t>(cfg_.layers));
    for (auto& lw : layers_) {
      fill(lw.wq, d * d, 1.5 * sd, rng);
      fill(lw.wk, d * d, 1.5 * sd, rng);
      fill(lw.wv, d * d, 1.5 * sd, rng);
      fill(lw.wo, d * d, sd, rng);
      fill(lw.w1, d * f, 1.5 * sd, rng);
      fill(lw.b1, f, 0.3, rng);
      fill(lw.w2, f * d, sf, rng);
    }
    fill(unembedding_, d * v, 2.0 * sd * cfg_.logit_scale, rng);
  }

  static std::vector<double> layer_norm(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (const double v : x) mean += v;
    mean /= n;
    double var = 0.0;
    for (const double v : x) var += (v - mean) * (v - mean);
    var /= n;
    const double inv = 1.0 / std::sqrt(var + 1e-5);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean) * inv;
    return out;
  }

  static std::vector<double> softmax(std::span<const double> logits) {
    double top = -std::numeric_limits<double>::infinity();
    for (const double v : logits) top = std::max(top, v);
    std::vector<double> p(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
      p[i] = std::isinf(logits[i]) && logits[i] < 0 ? 0.0 : std::exp(logits[i] - top);
      sum += p[i];
    }
    for (double& v : p) v /= sum;
    return p;
  }

  // y[cols] = x[rows] * M[rows x cols]
  static void matvec(std::span<const double> x, const Matrix& m, std::size_t cols, std::span<double> y) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t r = 0; r < x.size(); ++r) {
      const double xr = x[r];
      const double* row = m.data() + r * cols;
      for (std::size_t c = 0; c < cols; ++c) y[c] += xr * row[c];
    }
  }

  Pass forward(const std::vector<int>& tokens) const {
    const auto d = static_cast<std::size_t>(cfg_.d_model());
    const auto f = static_cast<std::size_t>(cfg_.ffn_width);
    const auto hd = static_cast<std::size_t>(cfg_.head_dim);
    const std::size_t n = tokens.size();

    std::vector<std::vector<double>> h(n, std::vector<double>(d));
    for (std::size_t i = 0; i < n; ++i) {
      const double* e = embedding_.data() + static_cast<std::size_t>(tokens[i]) * d;
      for (std::size_t j = 0; j < d; ++j) {
        const double freq = std::pow(10000.0, -static_cast<double>(j / 2 * 2) / static_cast<double>(d));
        const double pe = (j % 2 == 0) ? std::sin(static_cast<double>(i) * freq) : std::cos(static_cast<double>(i) * freq);
        h[i][j] = e[j] + 0.5 * pe;
      }
    }

    Pass pass;
    const double scale = 1.0 / std::sqrt(static_cast<double>(hd));
    for (const LayerWeights& lw : layers_) {
      std::vector<std::vector<double>> q(n, std::vector<double>(d)), k(n, std::vector<double>(d)),
          v(n, std::vector<double>(d));
      for (std::size_t i = 0; i < n; ++i) {
        const auto a = layer_norm(h[i]);
        matvec(a, lw.wq, d, q[i]);
        matvec(a, lw.wk, d, k[i]);
        matvec(a, lw.wv, d, v[i]);
      }
      std::vector<std::vector<double>> ctx(n, std::vector<double>(d, 0.0));
      for (int head = 0; head < cfg_.heads; ++head) {
        const std::size_t off = static_cast<std::size_t>(head) * hd;
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<double> scores(i + 1);
          for (std::size_t j = 0; j <= i; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < hd; ++c) s += q[i][off + c] * k[j][off + c];
            scores[j] = s * scale;
          }
          const auto w = softmax(scores);
          for (std::size_t j = 0; j <= i; ++j)
            for (std::size_t c = 0; c < hd; ++c) ctx[i][off + c] += w[j] * v[j][off + c];
        }
        pass.head_out.emplace_back(ctx[n - 1].begin() + static_cast<std::ptrdiff_t>(off),
                                   ctx[n - 1].begin() + static_cast<std::ptrdiff_t>(off + hd));
      }
      std::vector<double> proj(d), hidden(f), back(d);
      for (std::size_t i = 0; i < n; ++i) {
        matvec(ctx[i], lw.wo, d, proj);
        for (std::size_t j = 0; j < d; ++j) h[i][j] += proj[j];
        const auto a = layer_norm(h[i]);
        matvec(a, lw.w1, f, hidden);
        for (std::size_t j = 0; j < f; ++j) hidden[j] = std::max(0.0, hidden[j] + lw.b1[j]);
        matvec(hidden, lw.w2, d, back);
        for (std::size_t j = 0; j < d; ++j) h[i][j] += back[j];
        if (i == n - 1) pass.ffn_out.push_back(hidden);
      }
    }
    const auto a = layer_norm(h[n - 1]);
    pass.logits.assign(static_cast<std::size_t>(cfg_.vocab_size), 0.0);
    matvec(a, unembedding_, static_cast<std::size_t>(cfg_.vocab_size), pass.logits);
    return pass;
  }

  LayerActivations reduce_ffn(int layer, const std::vector<double>& acts) const {
    LayerActivations la;
    la.layer = layer;
    for (std::size_t i = 0; i < acts.size(); ++i)
      if (acts[i] > cfg_.recording_floor) la.activated.push_back({static_cast<int>(i), acts[i]});
    std::vector<int> order(acts.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&acts](int a, int b) { return acts[static_cast<std::size_t>(a)] > acts[static_cast<std::size_t>(b)]; });
    order.resize(std::min(order.size(), static_cast<std::size_t>(cfg_.top_k)));
    la.topk = std::move(order);
    return la;
  }

  RefModelConfig cfg_;
  Matrix embedding_;
  std::vector<LayerWeights> layers_;
  Matrix unembedding_;
};

}  // namespace lecov
