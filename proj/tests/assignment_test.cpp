// Copyright 2026 The Ontomerge Authors.
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

#include "ontomerge/assignment.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ontomerge/disjoint_sets.hpp"

namespace ontomerge {
namespace {

std::int64_t BruteMax(const SquareMatrix<std::int64_t>& w) {
  std::vector<std::size_t> perm(w.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  do {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < w.size(); ++i) sum += w[i][perm[i]];
    best = std::max(best, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return w.empty() ? 0 : best;
}

TEST(MaxWeightAssignmentTest, EmptyMatrix) {
  EXPECT_EQ(MaxWeightAssignment(SquareMatrix<std::int64_t>{}), 0);
}

TEST(MaxWeightAssignmentTest, PrefersAntiDiagonal) {
  SquareMatrix<std::int64_t> w = {{1, 5}, {5, 1}};
  std::vector<std::size_t> assignment;
  EXPECT_EQ(MaxWeightAssignment(w, &assignment), 10);
  EXPECT_EQ(assignment, (std::vector<std::size_t>{1, 0}));
}

TEST(MaxWeightAssignmentTest, RejectsNonSquare) {
  SquareMatrix<std::int64_t> w = {{1, 2}, {3}};
  EXPECT_THROW(MaxWeightAssignment(w), std::invalid_argument);
}

TEST(MaxWeightAssignmentTest, MatchesBruteForceOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    SquareMatrix<std::int64_t> w(n, std::vector<std::int64_t>(n));
    for (auto& row : w) {
      for (auto& x : row) x = static_cast<std::int64_t>(rng() % 41) - 20;
    }
    std::vector<std::size_t> assignment;
    const std::int64_t got = MaxWeightAssignment(w, &assignment);
    ASSERT_EQ(got, BruteMax(w)) << "trial " << trial;
    std::vector<std::size_t> sorted = assignment;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(sorted[i], i);
    std::int64_t realized = 0;
    for (std::size_t i = 0; i < n; ++i) realized += w[i][assignment[i]];
    ASSERT_EQ(realized, got);
  }
}

TEST(MaxWeightAssignmentTest, RationalEntriesAreExact) {
  SquareMatrix<Rational> w = {{Rational(1, 3), Rational(1, 2)}, {Rational(1, 6), Rational(1)}};
  EXPECT_EQ(MaxWeightAssignment(w), Rational(4, 3));
}

TEST(FindPerfectMatchingTest, LexicographicallyFirst) {
  auto m = FindPerfectMatching(3, [](std::size_t, std::size_t) { return true; });
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(*m, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(FindPerfectMatchingTest, AgreesWithPermutationEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<std::vector<bool>> ok(n, std::vector<bool>(n));
    for (auto& row : ok) {
      for (std::size_t j = 0; j < n; ++j) row[j] = rng() % 3 != 0;
    }
    std::optional<std::vector<std::size_t>> first;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      bool good = true;
      for (std::size_t i = 0; i < n && good; ++i) good = ok[i][perm[i]];
      if (good) {
        first = perm;
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto got = FindPerfectMatching(n, [&](std::size_t i, std::size_t j) { return ok[i][j]; });
    ASSERT_EQ(got, first) << "trial " << trial;
  }
}

TEST(DisjointSetsTest, UnionAndFind) {
  DisjointSets s(5);
  EXPECT_TRUE(s.Union(0, 1));
  EXPECT_TRUE(s.Union(3, 4));
  EXPECT_FALSE(s.Union(1, 0));
  EXPECT_TRUE(s.Connected(0, 1));
  EXPECT_FALSE(s.Connected(1, 3));
  EXPECT_TRUE(s.Union(1, 4));
  EXPECT_TRUE(s.Connected(0, 3));
  EXPECT_FALSE(s.Connected(2, 0));
}

}  // namespace
}  // namespace ontomerge
