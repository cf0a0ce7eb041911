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

#ifndef KBLINK_MATRIX_H_
#define KBLINK_MATRIX_H_

#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

namespace kblink {

// Dense row-major matrix of doubles. Rows are candidate vertices, columns are
// features.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double &at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  void AppendRow(std::span<const double> values);

  // Columns [first, first + count) as a new matrix.
  FeatureMatrix Block(size_t first, size_t count) const;

  const std::vector<double> &data() const { return data_; }

  bool operator==(const FeatureMatrix &) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

// Compressed sparse column matrix.
class SparseMatrix {
 public:
  using Triplet = std::tuple<size_t, size_t, double>;  // (row, col, value)

  SparseMatrix() = default;
  // Duplicate coordinates are summed; explicit zeros are dropped.
  SparseMatrix(size_t rows, size_t cols, std::vector<Triplet> triplets);

  static SparseMatrix Identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t nonzeros() const { return values_.size(); }

  double Get(size_t row, size_t col) const;
  double ColumnSum(size_t col) const;

  // Column iteration: entries [col_start(c), col_start(c+1)).
  size_t col_start(size_t c) const { return col_start_[c]; }
  size_t row_index(size_t k) const { return row_index_[k]; }
  double value(size_t k) const { return values_[k]; }

  FeatureMatrix Multiply(const FeatureMatrix &x) const;
  std::vector<double> Multiply(std::span<const double> x) const;

  std::vector<std::vector<double>> ToDense() const;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<size_t> col_start_{0};
  std::vector<size_t> row_index_;
  std::vector<double> values_;
};

}  // namespace kblink

#endif  // KBLINK_MATRIX_H_
