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

// Bipartite assignment on square matrices: maximum-weight assignment
// (Hungarian method with potentials, O(n^3)) and an exhaustive search for a
// perfect matching over a boolean compatibility relation.

#ifndef ONTOMERGE_ASSIGNMENT_HPP_
#define ONTOMERGE_ASSIGNMENT_HPP_

#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ontomerge/rational.hpp"

namespace ontomerge {

template <typename W>
using SquareMatrix = std::vector<std::vector<W>>;

// Returns the maximum total weight over all permutations. When `assignment`
// is non-null it receives, for each row, the column it is matched to.
template <std::signed_integral W>
W MaxWeightAssignment(const SquareMatrix<W>& weight,
                      std::vector<std::size_t>* assignment = nullptr) {
  const std::size_t n = weight.size();
  for (const auto& row : weight) {
    if (row.size() != n) throw std::invalid_argument("matrix is not square");
  }
  if (assignment) assignment->assign(n, 0);
  if (n == 0) return 0;

  const W inf = std::numeric_limits<W>::max() / 4;
  // Minimize the negated weights; index 0 is the virtual column.
  std::vector<W> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<W> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      std::size_t i0 = p[j0], j1 = 0;
      W delta = inf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        W cur = -weight[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  W total = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    total += weight[p[j] - 1][j - 1];
    if (assignment) (*assignment)[p[j] - 1] = j - 1;
  }
  return total;
}

// Exact rational variant: scales every entry by the common denominator and
// solves the integer problem.
inline Rational MaxWeightAssignment(const SquareMatrix<Rational>& weight,
                                    std::vector<std::size_t>* assignment = nullptr) {
  std::int64_t scale = 1;
  for (const auto& row : weight) {
    for (const auto& w : row) scale = std::lcm(scale, w.den());
  }
  SquareMatrix<std::int64_t> scaled(weight.size());
  for (std::size_t i = 0; i < weight.size(); ++i) {
    scaled[i].reserve(weight[i].size());
    for (const auto& w : weight[i]) scaled[i].push_back(w.num() * (scale / w.den()));
  }
  return Rational(MaxWeightAssignment(scaled, assignment), scale);
}

// Depth-first search over rows in order, trying columns in ascending order,
// so the first matching found is the lexicographically smallest one.
inline std::optional<std::vector<std::size_t>> FindPerfectMatching(
    std::size_t n, const std::function<bool(std::size_t, std::size_t)>& compatible) {
  std::vector<std::vector<bool>> ok(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) ok[i][j] = compatible(i, j);
  }
  std::vector<std::size_t> chosen(n, 0);
  std::vector<bool> taken(n, false);
  auto search = [&](auto&& self, std::size_t row) -> bool {
    if (row == n) return true;
    for (std::size_t col = 0; col < n; ++col) {
      if (taken[col] || !ok[row][col]) continue;
      taken[col] = true;
      chosen[row] = col;
      if (self(self, row + 1)) return true;
      taken[col] = false;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return chosen;
}

}  // namespace ontomerge

#endif  // ONTOMERGE_ASSIGNMENT_HPP_
