#pragma once

// Test-only oracles and generators. Nothing here calls into the
// normal-form code it is used to check.

#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "prolim/fgab.hpp"
#include "prolim/zlinalg.hpp"

namespace prolim::testing {

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

/// Cofactor expansion along the first row.
inline Integer laplace_determinant(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(a(0, j)) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, k = 0; c < n; ++c)
        if (c != j) minor(r - 1, k++) = a(r, c);
    const Integer term = a(0, j) * laplace_determinant(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1} where
/// D_k is the gcd of all k x k minors.
inline std::vector<Integer> invariant_factors_by_minors(const IntMatrix& a) {
  std::vector<Integer> out;
  Integer prev = 1;
  const std::size_t kmax = std::min(a.rows(), a.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    Integer g = 0;
    for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
      for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
        const Integer m = laplace_determinant(a.select_rows(rows).select_columns(cols));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
      });
    });
    if (sgn(g) == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

/// Saturation by exhaustion: adjoin every x in [-bound, bound]^r with
/// k x in the current subgroup for some 2 <= k <= 6, until nothing changes.
inline IntMatrix brute_force_saturation(const FgAbGroup& h, const IntMatrix& gens, long bound) {
  const std::size_t r = h.ngens();
  IntMatrix current = gens;
  for (bool grew = true; grew;) {
    grew = false;
    const Subgroup cur(h, current);
    std::vector<IntVector> add;
    std::vector<long> xs(r, -bound);
    for (;;) {
      IntVector v(r);
      for (std::size_t i = 0; i < r; ++i) v[i] = xs[i];
      if (!cur.contains(v))
        for (long k = 2; k <= 6; ++k)
          if (cur.contains(Integer(k) * v)) {
            add.push_back(v);
            break;
          }
      std::size_t i = 0;
      while (i < r && xs[i] == bound) xs[i++] = -bound;
      if (i == r) break;
      ++xs[i];
    }
    if (!add.empty()) {
      current = hcat(current, IntMatrix::from_columns(r, add));
      grew = true;
    }
  }
  return current;
}

inline IntVector vec(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace prolim::testing
