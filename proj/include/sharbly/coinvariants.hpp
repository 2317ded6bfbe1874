#pragma once
// Reduction of sharbly chains modulo SL_n(Z): canonical forms of basic
// symbols under (unimodular row action, column permutation with sign,
// column negation), and chain reduction to canonically keyed coefficients.

#include <map>

#include "sharbly/core.hpp"

namespace sharbly {

// which determinant class of GL_n(Z) carries the symbol onto its canonical
// matrix: plus = only det +1, minus = only det -1, both = either
enum class Coset { plus, minus, both };

// Canonical name of the SL_n(Z)-orbit of a basic symbol.
//   canonical: prefix-Hermite lexicographic minimum over the reachable images
//   sign: orientation of the symbol relative to the canonical representative
//         (paired with det +1 when reachable, with det -1 otherwise)
//   self_negating: orbit identifies the symbol with its own negative, so the
//         class is zero in coinvariants
// Two symbols lie in the same class iff (canonical, coset) agree; their
// relative orientation is the product of the sign fields.
struct CanonicalKey {
  IntMatrix canonical;
  Coset coset = Coset::plus;
  int sign = 1;
  bool self_negating = false;

  std::string to_string() const;
};

struct ReduceOptions {
  long long node_budget = 200'000'000;   // canonicalization search steps
  bool disable_split = false;   // force the whole-matrix search; cross-checks
                                // the component decomposition in tests
};

CanonicalKey canonical_form(const BasicSharbly& b, const ReduceOptions& opts = {});

struct CanonicalKeyLess {
  bool operator()(const CanonicalKey& a, const CanonicalKey& b) const {
    int c = cmp_matrix(a.canonical, b.canonical);
    if (c != 0) return c < 0;
    return static_cast<int>(a.coset) < static_cast<int>(b.coset);
  }
};

using Reduced = std::map<CanonicalKey, Rat, CanonicalKeyLess>;

// image of z in the SL_n(Z)-coinvariants: self-negating classes are dropped,
// equivalent symbols merge with their relative orientations
Reduced reduce(const Chain& z, const ReduceOptions& opts = {});

// true iff reduce(boundary(z)) is empty
bool is_cycle(const Chain& z, const ReduceOptions& opts = {});

enum class Parity { even, odd, none };

// compares reduce(z) with reduce(sn_act(z)); z should be a cycle
Parity parity_of_cycle(const Chain& z, const ReduceOptions& opts = {});

// canonical forms are memoized per stored matrix; tests reset between budgets
void clear_canonical_cache();

}  // namespace sharbly
