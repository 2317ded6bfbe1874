#pragma once
// shared helpers for the test binaries: deterministic random matrices,
// random unimodular/SL_n(Z) elements, small column builders

#include <random>
#include <vector>

#include "sharbly/linalg.hpp"

namespace sharbly::testutil {

inline Col C(std::vector<long> v) {
  Col c(v.size());
  for (size_t i = 0; i < v.size(); ++i) c[i] = v[i];
  return c;
}

inline IntMatrix M(int rows, std::vector<std::vector<long>> cols) {
  std::vector<Col> cs;
  for (auto& c : cols) cs.push_back(C(c));
  return IntMatrix::from_cols(rows, cs);
}

// random integer matrix with entries in [-mag, mag]
inline IntMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, long mag = 4) {
  std::uniform_int_distribution<long> d(-mag, mag);
  IntMatrix m(rows, cols);
  for (Int& x : m.e) x = d(rng);
  return m;
}

// product of random elementary matrices; det = +1
inline IntMatrix random_sl(std::mt19937_64& rng, int n, int steps = 12, long mag = 2) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<long> coef(-mag, mag);
  IntMatrix g = IntMatrix::identity(n);
  for (int s = 0; s < steps; ++s) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    long c = coef(rng);
    for (int col = 0; col < n; ++col) g(i, col) += Int(c) * g(j, col);
  }
  return g;
}

// random unimodular matrix with det = +1 or -1
inline IntMatrix random_gl(std::mt19937_64& rng, int n, int steps = 12) {
  IntMatrix g = random_sl(rng, n, steps);
  if (rng() & 1)
    for (int col = 0; col < n; ++col) g(0, col) = -g(0, col);
  return g;
}

// random nonzero column, entries in [-mag, mag]
inline Col random_col(std::mt19937_64& rng, int n, long mag = 3) {
  std::uniform_int_distribution<long> d(-mag, mag);
  while (true) {
    Col c(n);
    bool nz = false;
    for (Int& x : c) {
      long v = d(rng);
      x = v;
      nz |= v != 0;
    }
    if (nz) return c;
  }
}

}  // namespace sharbly::testutil
