#pragma once
// Exact integer/rational linear algebra over GMP: ranks, determinants,
// row-style Hermite normal form, lattice saturation, unimodular completion.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace sharbly {

using Int = mpz_class;
using Rat = mpq_class;
using Col = std::vector<Int>;   // one column vector

struct SharblyError : std::runtime_error {
  explicit SharblyError(const std::string& what) : std::runtime_error(what) {}
};
struct BudgetExceeded : SharblyError {
  BudgetExceeded() : SharblyError("budget exceeded") {}
};

// dense integer matrix, column-major storage
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<Int> e;   // e[j*rows + i]

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c) {}

  static IntMatrix identity(int n);
  static IntMatrix from_cols(int rows, const std::vector<Col>& cols);

  Int& operator()(int i, int j) { return e[static_cast<size_t>(j) * rows + i]; }
  const Int& operator()(int i, int j) const { return e[static_cast<size_t>(j) * rows + i]; }

  Col col(int j) const;
  void set_col(int j, const Col& v);
  std::vector<Col> columns() const;
  IntMatrix transpose() const;

  bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && e == o.e; }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }
};

// total order on columns: entrywise lexicographic, first entry most significant
int cmp_col(const Col& a, const Col& b);
// (rows, cols, entries column-major) lexicographic; used for map keys
int cmp_matrix(const IntMatrix& a, const IntMatrix& b);

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
Col mat_mul(const IntMatrix& a, const Col& v);

std::string serialize(const IntMatrix& m);   // stable textual key for memo tables

// v / gcd(entries), negated so the first nonzero entry is positive; idempotent
Col primitive_normalize(const Col& v);

int rank(const IntMatrix& m);
Rat det(const IntMatrix& m);
Int det_int(const IntMatrix& m);   // exact integer determinant (Bareiss)

// staircase form: U*M = H with U unimodular, H row-echelon with positive
// pivots and entries above each pivot reduced into [0, pivot); for full row
// rank this is the row-style Hermite normal form.  Uinv = U^-1.
struct Staircase {
  IntMatrix H, U, Uinv;
  int rank = 0;
  int det_u = 1;                 // det U, always +-1
  std::vector<int> pivot_cols;
};
Staircase staircase(const IntMatrix& m);

struct HnfResult {
  IntMatrix H, U;
};
// requires full row rank; H unique for fixed column order
HnfResult hnf(const IntMatrix& m);

// Z-basis of span(S) ∩ Z^n in a canonical (HNF of the transposed basis) form
std::vector<Col> saturate_span(const std::vector<Col>& s);

// gamma in SL_n(Z) with gamma*b in span(e_1..e_a) for every b in the
// saturated basis B; built from the HNF completion, one row negated if needed
IntMatrix complete_to_sl(const std::vector<Col>& basis);

// rational kernel basis of M (solutions of M x = 0), one vector per non-pivot column
std::vector<std::vector<Rat>> kernel_basis(const IntMatrix& m);

// integer coordinates of each vector in the given independent basis;
// error if a vector is not an integer combination
std::vector<Col> lattice_coords(const std::vector<Col>& basis, const std::vector<Col>& vecs);

}  // namespace sharbly
