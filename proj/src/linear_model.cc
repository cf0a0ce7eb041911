// Copyright 2026 The kblink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kblink/linear_model.h"

#include <numeric>
#include <random>
#include <sstream>

#include "kblink/binary_io.h"
#include "kblink/error.h"

namespace kblink::classify {

namespace {
constexpr const char *kMagic = "KBLMODEL";
}

std::vector<double> LinearModel::Score(const FeatureMatrix &stacked) const {
  if (stacked.cols() != weights.size()) {
    throw InvalidArgument("feature width " + std::to_string(stacked.cols()) +
                          " does not match model width " +
                          std::to_string(weights.size()));
  }
  std::vector<double> scores(stacked.rows());
  for (size_t r = 0; r < stacked.rows(); ++r) {
    auto x = stacked.row(r);
    double s = bias;
    for (size_t c = 0; c < x.size(); ++c) s += weights[c] * x[c];
    scores[r] = s;
  }
  return scores;
}

std::string LinearModel::Serialize() const {
  std::ostringstream buf;
  BinaryWriter w(buf);
  w.Header(kMagic, kModelFormatVersion);
  w.F64(config.lambda);
  w.U32(static_cast<uint32_t>(config.epochs));
  w.U64(config.seed);
  w.U32(static_cast<uint32_t>(config.k));
  w.F64(config.similarity.beta);
  w.F64(config.similarity.eta);
  w.U32(config.similarity.max_distance);
  w.F64(config.threshold);
  w.U32(static_cast<uint32_t>(scaler.size()));
  for (const auto &[lo, hi] : scaler.ranges()) {
    w.F64(lo);
    w.F64(hi);
  }
  w.U32(static_cast<uint32_t>(weights.size()));
  for (double v : weights) w.F64(v);
  w.F64(bias);
  return buf.str();
}

void LinearModel::Save(const std::string &path) const {
  const std::string bytes = Serialize();
  auto out = OpenForWrite(path);
  BinaryWriter(out).Raw(bytes.data(), bytes.size());
}

LinearModel LinearModel::Load(const std::string &path) {
  auto in = OpenForRead(path);
  BinaryReader r(in, path);
  r.Header(kMagic, kModelFormatVersion);
  LinearModel m;
  m.config.lambda = r.F64();
  m.config.epochs = static_cast<int>(r.U32());
  m.config.seed = r.U64();
  m.config.k = static_cast<int>(r.U32());
  m.config.similarity.beta = r.F64();
  m.config.similarity.eta = r.F64();
  m.config.similarity.max_distance = r.U32();
  m.config.threshold = r.F64();
  std::vector<std::pair<double, double>> ranges(r.U32());
  for (auto &[lo, hi] : ranges) {
    lo = r.F64();
    hi = r.F64();
  }
  m.scaler = Scaler(std::move(ranges));
  m.weights.resize(r.U32());
  for (double &v : m.weights) v = r.F64();
  m.bias = r.F64();
  if (m.scaler.size() != kNumLocalFeatures ||
      m.weights.size() != static_cast<size_t>(m.config.k + 1) * kNumLocalFeatures) {
    throw FormatError(path + ": inconsistent model dimensions");
  }
  return m;
}

SvmSolution TrainLinearSvm(const FeatureMatrix &x, std::span<const int> labels,
                           double lambda, int epochs, uint64_t seed) {
  if (x.rows() != labels.size()) throw InvalidArgument("label count mismatch");
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (epochs <= 0) throw InvalidArgument("epochs must be positive");
  bool has_pos = false, has_neg = false;
  for (int y : labels) {
    if (y != 1 && y != -1) throw InvalidArgument("labels must be +1 or -1");
    (y > 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) throw InvalidArgument("degenerate labels");

  const size_t n = x.rows();
  const size_t d = x.cols();
  std::vector<double> w(d, 0.0), w_avg(d, 0.0);
  double b = 0.0, b_avg = 0.0;
  uint64_t averaged = 0;
  const int average_from = epochs / 2;

  std::mt19937_64 rng(seed);
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});

  uint64_t t = 0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    for (size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[rng() % i]);
    }
    for (size_t idx : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      auto row = x.row(idx);
      const double y = labels[idx];
      double margin = b;
      for (size_t c = 0; c < d; ++c) margin += w[c] * row[c];
      margin *= y;
      const double shrink = 1.0 - eta * lambda;
      for (double &v : w) v *= shrink;
      b *= shrink;
      if (margin < 1.0) {
        for (size_t c = 0; c < d; ++c) w[c] += eta * y * row[c];
        b += eta * y;
      }
      if (epoch >= average_from) {
        ++averaged;
        const double mix = 1.0 / static_cast<double>(averaged);
        for (size_t c = 0; c < d; ++c) w_avg[c] += (w[c] - w_avg[c]) * mix;
        b_avg += (b - b_avg) * mix;
      }
    }
  }
  return {std::move(w_avg), b_avg};
}

}  // namespace kblink::classify
