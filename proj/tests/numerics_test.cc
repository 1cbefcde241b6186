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
#include <limits>
#include <random>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace syspart {
namespace {

using ::testing::HasSubstr;
using ::testing::Pointwise;
using ::testing::DoubleNear;

TEST(MatrixTest, FromRowsRejectsRaggedInput) {
  EXPECT_FALSE(Matrix::FromRows({{1, 2}, {3}}).ok());
  absl::StatusOr<Matrix> m = Matrix::FromRows({{1, 2}, {3, 4}});
  ASSERT_TRUE(m.ok());
  EXPECT_EQ(*m, (Matrix{{1, 2}, {3, 4}}));
}

TEST(MatrixTest, TransposeAndSubmatrix) {
  const Matrix m{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(m.Transpose(), (Matrix{{1, 4}, {2, 5}, {3, 6}}));
  const std::vector<int> rows{1};
  const std::vector<int> cols{0, 2};
  EXPECT_EQ(m.Submatrix(rows, cols), (Matrix{{4, 6}}));
}

TEST(MatrixTest, FinitenessAndIntegrality) {
  Matrix m{{1, 2}, {3, 4}};
  EXPECT_TRUE(m.AllFinite());
  EXPECT_TRUE(m.IsIntegerValued());
  m(0, 1) = 0.5;
  EXPECT_FALSE(m.IsIntegerValued());
  m(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(m.AllFinite());
}

TEST(MatMulTest, Examples) {
  EXPECT_EQ(*MatMul(Matrix::Identity(2), Matrix{{1, 2}, {3, 4}}),
            (Matrix{{1, 2}, {3, 4}}));
  EXPECT_EQ(*MatMul(Matrix{{1, 1}, {1, 1}}, Matrix{{1}, {1}}),
            (Matrix{{2}, {2}}));
  EXPECT_EQ(*MatMul(Matrix{{1, 1}, {1, -1}}, Matrix{{1}, {1}}),
            (Matrix{{2}, {0}}));
}

TEST(MatMulTest, DimensionMismatchNamesBothShapes) {
  absl::StatusOr<Matrix> product = MatMul(Matrix(2, 3), Matrix(2, 3));
  ASSERT_FALSE(product.ok());
  EXPECT_THAT(product.status().message(), HasSubstr("2x3"));
}

TEST(MatMulTest, AssociativeOnIntegerMatrices) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = testing::RandomIntMatrix(rng, 3, 4, -3, 3);
    const Matrix b = testing::RandomIntMatrix(rng, 4, 2, -3, 3);
    const Matrix c = testing::RandomIntMatrix(rng, 2, 5, -3, 3);
    EXPECT_EQ(*MatMul(*MatMul(a, b), c), *MatMul(a, *MatMul(b, c)));
  }
}

TEST(AbsSumTest, Examples) {
  EXPECT_EQ(AbsSum(Matrix(3, 3)), 0.0);
  EXPECT_EQ(AbsSum(Matrix{{1, -2}, {-3, 4}}), 10.0);
  // |a14| + |a24| + |a34| + |a54| of the turbofan model.
  EXPECT_NEAR(AbsSum(Matrix{{0.5731}, {0.1897}, {0.007994}, {1.195}}),
              1.965794, 1e-12);
}

TEST(AbsSumTest, InvariantUnderTranspose) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix real = testing::RandomRealMatrix(rng, 3, 7);
    EXPECT_DOUBLE_EQ(AbsSum(real), AbsSum(real.Transpose()));
    const Matrix integer = testing::RandomIntMatrix(rng, 3, 7, -9, 9);
    EXPECT_EQ(AbsSum(integer), AbsSum(integer.Transpose()));
  }
}

TEST(HConcatTest, Examples) {
  const Matrix identity = Matrix::Identity(2);
  EXPECT_EQ(*HConcat(std::vector<Matrix>{identity}), identity);
  EXPECT_EQ(*HConcat(std::vector<Matrix>{Matrix{{1}, {1}}, Matrix{{2}, {0}}}),
            (Matrix{{1, 2}, {1, 0}}));
  const Matrix a{{1, 1}, {1, 1}};
  const Matrix b{{1}, {1}};
  EXPECT_EQ(*HConcat(std::vector<Matrix>{b, *MatMul(a, b)}),
            (Matrix{{1, 2}, {1, 2}}));
}

TEST(HConcatTest, RowMismatchIsAnError) {
  EXPECT_FALSE(HConcat(std::vector<Matrix>{Matrix(2, 1), Matrix(3, 1)}).ok());
}

TEST(SingularValuesTest, DiagonalMatrix) {
  absl::StatusOr<std::vector<double>> sv =
      SingularValues(Matrix{{3, 0}, {0, -4}});
  ASSERT_TRUE(sv.ok());
  EXPECT_THAT(*sv, Pointwise(DoubleNear(1e-12), std::vector<double>{4, 3}));
}

TEST(NumericalRankTest, Examples) {
  EXPECT_EQ(*NumericalRank(Matrix::Identity(5)), 5);
  EXPECT_EQ(*NumericalRank(Matrix{{1, 1}, {1, 1}}), 1);
  EXPECT_EQ(*NumericalRank(Matrix{{1, 2}, {1, 2}}), 1);
  EXPECT_EQ(*ExactRank(Matrix{{1, 2}, {1, 2}}), 1);
}

TEST(NumericalRankTest, ZeroAndEmptyMatrices) {
  EXPECT_EQ(*NumericalRank(Matrix(3, 2)), 0);
  EXPECT_EQ(*NumericalRank(Matrix(0, 4)), 0);
  EXPECT_EQ(*ExactRank(Matrix(3, 2)), 0);
}

TEST(NumericalRankTest, AbsoluteToleranceOverridesDefault) {
  const Matrix m{{1, 0}, {0, 1e-6}};
  EXPECT_EQ(*NumericalRank(m), 2);
  EXPECT_EQ(*NumericalRank(m, {.absolute = 1e-3}), 1);
}

TEST(NumericalRankTest, NeverExceedsSmallerDimension) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> dim(1, 8);
    const Matrix m = testing::RandomRealMatrix(rng, dim(rng), dim(rng));
    const int rank = *NumericalRank(m);
    EXPECT_GE(rank, 0);
    EXPECT_LE(rank, std::min(m.rows(), m.cols()));
    EXPECT_EQ(rank, *NumericalRank(m.Transpose()));
  }
}

TEST(NumericalRankTest, InvariantUnderRowPermutation) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = *MatMul(testing::RandomIntMatrix(rng, 6, 3, -3, 3),
                             testing::RandomIntMatrix(rng, 3, 5, -3, 3));
    std::vector<int> rows{0, 1, 2, 3, 4, 5};
    std::shuffle(rows.begin(), rows.end(), rng);
    const std::vector<int> cols{0, 1, 2, 3, 4};
    EXPECT_EQ(*NumericalRank(m.Submatrix(rows, cols)), *NumericalRank(m));
  }
}

TEST(NumericalRankTest, NonFiniteInputIsAnError) {
  Matrix m = Matrix::Identity(2);
  m(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_FALSE(NumericalRank(m).ok());
}

TEST(ExactRankTest, RejectsNonIntegerInput) {
  EXPECT_FALSE(ExactRank(Matrix{{0.5}}).ok());
}

TEST(ExactRankTest, RankDeficientProducts) {
  std::mt19937_64 rng(3);
  for (int k = 1; k <= 4; ++k) {
    const Matrix m = *MatMul(testing::RandomIntMatrix(rng, 6, k, -3, 3),
                             testing::RandomIntMatrix(rng, k, 6, -3, 3));
    EXPECT_LE(*ExactRank(m), k);
    EXPECT_EQ(*ExactRank(m), *NumericalRank(m));
  }
}

}  // namespace
}  // namespace syspart
