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

#include "kblink/matrix.h"

#include <algorithm>

#include "kblink/error.h"

namespace kblink {

void FeatureMatrix::AppendRow(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw InvalidArgument("row width mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

FeatureMatrix FeatureMatrix::Block(size_t first, size_t count) const {
  if (first + count > cols_) throw InvalidArgument("column block out of range");
  FeatureMatrix out(rows_, count);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < count; ++c) out.at(r, c) = at(r, first + c);
  }
  return out;
}

SparseMatrix::SparseMatrix(size_t rows, size_t cols, std::vector<Triplet> triplets)
    : rows_(rows), cols_(cols) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet &a, const Triplet &b) {
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
    return std::get<0>(a) < std::get<0>(b);
  });
  col_start_.assign(cols + 1, 0);
  for (size_t i = 0; i < triplets.size();) {
    auto [r, c, v] = triplets[i];
    if (r >= rows || c >= cols) throw InvalidArgument("sparse entry out of range");
    size_t j = i + 1;
    while (j < triplets.size() && std::get<0>(triplets[j]) == r &&
           std::get<1>(triplets[j]) == c) {
      v += std::get<2>(triplets[j]);
      ++j;
    }
    if (v != 0.0) {
      row_index_.push_back(r);
      values_.push_back(v);
      ++col_start_[c + 1];
    }
    i = j;
  }
  for (size_t c = 0; c < cols; ++c) col_start_[c + 1] += col_start_[c];
}

SparseMatrix SparseMatrix::Identity(size_t n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (size_t i = 0; i < n; ++i) t.emplace_back(i, i, 1.0);
  return SparseMatrix(n, n, std::move(t));
}

double SparseMatrix::Get(size_t row, size_t col) const {
  auto begin = row_index_.begin() + col_start_[col];
  auto end = row_index_.begin() + col_start_[col + 1];
  auto it = std::lower_bound(begin, end, row);
  if (it == end || *it != row) return 0.0;
  return values_[it - row_index_.begin()];
}

double SparseMatrix::ColumnSum(size_t col) const {
  double sum = 0.0;
  for (size_t k = col_start_[col]; k < col_start_[col + 1]; ++k) sum += values_[k];
  return sum;
}

FeatureMatrix SparseMatrix::Multiply(const FeatureMatrix &x) const {
  if (x.rows() != cols_) throw InvalidArgument("dimension mismatch in multiply");
  FeatureMatrix out(rows_, x.cols());
  for (size_t c = 0; c < cols_; ++c) {
    auto src = x.row(c);
    for (size_t k = col_start_[c]; k < col_start_[c + 1]; ++k) {
      auto dst = out.row(row_index_[k]);
      const double v = values_[k];
      for (size_t j = 0; j < src.size(); ++j) dst[j] += v * src[j];
    }
  }
  return out;
}

std::vector<double> SparseMatrix::Multiply(std::span<const double> x) const {
  if (x.size() != cols_) throw InvalidArgument("dimension mismatch in multiply");
  std::vector<double> out(rows_, 0.0);
  for (size_t c = 0; c < cols_; ++c) {
    for (size_t k = col_start_[c]; k < col_start_[c + 1]; ++k) {
      out[row_index_[k]] += values_[k] * x[c];
    }
  }
  return out;
}

std::vector<std::vector<double>> SparseMatrix::ToDense() const {
  std::vector<std::vector<double>> dense(rows_, std::vector<double>(cols_, 0.0));
  for (size_t c = 0; c < cols_; ++c) {
    for (size_t k = col_start_[c]; k < col_start_[c + 1]; ++k) {
      dense[row_index_[k]][c] = values_[k];
    }
  }
  return dense;
}

}  // namespace kblink
