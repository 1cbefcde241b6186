// Copyright 2026 The syspart Authors
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

#ifndef SYSPART_NUMERICS_H_
#define SYSPART_NUMERICS_H_

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace syspart {

// Dense real matrix stored row-major.
class Matrix {
 public:
  Matrix() = default;
  // Zero matrix of the given shape.
  Matrix(int rows, int cols);
  // Convenience for literals in code and tests. All rows must have the same
  // length; a ragged literal is a programming error and aborts.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  // Builds a matrix from nested rows, rejecting ragged, empty or non-finite
  // input.
  static absl::StatusOr<Matrix> FromRows(
      const std::vector<std::vector<double>>& rows);
  static Matrix Identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double operator()(int r, int c) const { return data_[r * cols_ + c]; }
  double& operator()(int r, int c) { return data_[r * cols_ + c]; }
  std::span<const double> row(int r) const {
    return {data_.data() + static_cast<size_t>(r) * cols_,
            static_cast<size_t>(cols_)};
  }
  std::span<const double> data() const { return data_; }

  Matrix Transpose() const;
  // Rows and columns picked in the given order. Indices must be in range.
  Matrix Submatrix(std::span<const int> row_indices,
                   std::span<const int> col_indices) const;

  bool AllFinite() const;
  bool IsIntegerValued() const;
  std::string ShapeString() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

absl::StatusOr<Matrix> MatMul(const Matrix& a, const Matrix& b);

// Sum of the magnitudes of all entries.
double AbsSum(const Matrix& a);

// [blocks[0] | blocks[1] | ...]; every block must have the same row count.
absl::StatusOr<Matrix> HConcat(std::span<const Matrix> blocks);

// Threshold below which a singular value counts as zero. By default
// tau = max(rows, cols) * eps * sigma_max; `absolute` replaces tau outright.
struct RankTolerance {
  std::optional<double> absolute;

  double Threshold(int rows, int cols, double sigma_max) const;
};

// Singular values in non-increasing order.
absl::StatusOr<std::vector<double>> SingularValues(const Matrix& a);

// Number of singular values strictly above the tolerance threshold. An empty
// matrix has rank 0.
absl::StatusOr<int> NumericalRank(const Matrix& a,
                                  const RankTolerance& tolerance = {});

// Rank by Gaussian elimination in exact rational arithmetic. Only defined for
// integer-valued matrices; anything else is InvalidArgument.
absl::StatusOr<int> ExactRank(const Matrix& a);

}  // namespace syspart

#endif  // SYSPART_NUMERICS_H_
