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

#include "syspart/numerics.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <boost/multiprecision/cpp_int.hpp>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace syspart {

Matrix::Matrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), 0.0) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) std::abort();
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

absl::StatusOr<Matrix> Matrix::FromRows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    return absl::InvalidArgumentError("matrix must have at least one entry");
  }
  Matrix m(static_cast<int>(rows.size()),
           static_cast<int>(rows.front().size()));
  for (int r = 0; r < m.rows_; ++r) {
    if (static_cast<int>(rows[r].size()) != m.cols_) {
      return absl::InvalidArgumentError(
          absl::StrFormat("row %d has %d entries, expected %d", r + 1,
                          rows[r].size(), m.cols_));
    }
    for (int c = 0; c < m.cols_; ++c) {
      if (!std::isfinite(rows[r][c])) {
        return absl::InvalidArgumentError(
            absl::StrFormat("entry (%d, %d) is not finite", r + 1, c + 1));
      }
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::Identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::Transpose() const {
  Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::Submatrix(std::span<const int> row_indices,
                         std::span<const int> col_indices) const {
  Matrix s(static_cast<int>(row_indices.size()),
           static_cast<int>(col_indices.size()));
  for (int r = 0; r < s.rows_; ++r) {
    for (int c = 0; c < s.cols_; ++c) {
      s(r, c) = (*this)(row_indices[r], col_indices[c]);
    }
  }
  return s;
}

bool Matrix::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

bool Matrix::IsIntegerValued() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) {
    return std::isfinite(v) && std::trunc(v) == v &&
           std::abs(v) < 9.0e15;  // exactly representable integers only
  });
}

std::string Matrix::ShapeString() const {
  return absl::StrCat(rows_, "x", cols_);
}

absl::StatusOr<Matrix> MatMul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot multiply ", a.ShapeString(), " by ",
                     b.ShapeString()));
  }
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

double AbsSum(const Matrix& a) {
  double sum = 0.0;
  for (const double v : a.data()) sum += std::abs(v);
  return sum;
}

absl::StatusOr<Matrix> HConcat(std::span<const Matrix> blocks) {
  if (blocks.empty()) {
    return absl::InvalidArgumentError("hconcat of an empty block list");
  }
  const int rows = blocks.front().rows();
  int cols = 0;
  for (const Matrix& b : blocks) {
    if (b.rows() != rows) {
      return absl::InvalidArgumentError(
          absl::StrCat("hconcat row mismatch: ", blocks.front().ShapeString(),
                       " vs ", b.ShapeString()));
    }
    cols += b.cols();
  }
  Matrix out(rows, cols);
  int offset = 0;
  for (const Matrix& b : blocks) {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < b.cols(); ++c) out(r, offset + c) = b(r, c);
    }
    offset += b.cols();
  }
  return out;
}

double RankTolerance::Threshold(int rows, int cols, double sigma_max) const {
  if (absolute.has_value()) return *absolute;
  return std::max(rows, cols) * std::numeric_limits<double>::epsilon() *
         sigma_max;
}

absl::StatusOr<std::vector<double>> SingularValues(const Matrix& a) {
  if (a.empty()) {
    return absl::InvalidArgumentError("singular values of an empty matrix");
  }
  if (!a.AllFinite()) {
    return absl::InvalidArgumentError("matrix has non-finite entries");
  }
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
      view(a.data().data(), a.rows(), a.cols());
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(view);
  if (svd.info() != Eigen::Success) {
    return absl::InternalError(
        absl::StrCat("SVD did not converge on a ", a.ShapeString(),
                     " matrix"));
  }
  const Eigen::VectorXd& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

absl::StatusOr<int> NumericalRank(const Matrix& a,
                                  const RankTolerance& tolerance) {
  if (a.empty()) return 0;
  absl::StatusOr<std::vector<double>> sigma = SingularValues(a);
  if (!sigma.ok()) return sigma.status();
  const double tau =
      tolerance.Threshold(a.rows(), a.cols(), sigma->empty() ? 0.0 : sigma->front());
  int rank = 0;
  for (const double s : *sigma) {
    if (s > tau) ++rank;
  }
  return rank;
}

absl::StatusOr<int> ExactRank(const Matrix& a) {
  using Rational = boost::multiprecision::cpp_rational;
  if (a.empty()) return 0;
  if (!a.IsIntegerValued()) {
    return absl::InvalidArgumentError(
        "exact rank requires integer-valued entries");
  }
  const int rows = a.rows();
  const int cols = a.cols();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      m[r][c] = Rational(static_cast<long long>(a(r, c)));
    }
  }
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[rank]);
    for (int r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const Rational factor = m[r][c] / m[rank][c];
      for (int k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace syspart
