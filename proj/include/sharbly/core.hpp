#pragma once
// Basic sharblies and chains modulo the permutation-sign, non-spanning and
// scaling relators, the boundary operator, and block composition [x|y].

#include <map>
#include <vector>

#include "sharbly/linalg.hpp"

namespace sharbly {

// one generator [v_1,...,v_{n+k}]: n+k primitive columns spanning Q^n,
// stored sorted in the fixed column order (sort sign lives in the coefficient)
struct BasicSharbly {
  int n = 0;
  std::vector<Col> cols;

  int degree() const { return static_cast<int>(cols.size()) - n; }
  IntMatrix matrix() const { return IntMatrix::from_cols(n, cols); }
  bool operator<(const BasicSharbly& o) const;
  bool operator==(const BasicSharbly& o) const { return n == o.n && cols == o.cols; }
};

// finite formal rational combination of basic sharblies of fixed (n, degree)
struct Chain {
  int n = 0;
  int degree = 0;
  std::map<BasicSharbly, Rat> terms;

  bool is_zero() const { return terms.empty(); }
  Chain& add(const BasicSharbly& b, const Rat& c);   // drops zero coefficients
  Chain operator+(const Chain& o) const;
  Chain operator-(const Chain& o) const;
  Chain operator*(const Rat& c) const;
};

// applies relators: normalizes columns (scaling), sorts them with the
// permutation sign, kills non-spanning and repeated-column symbols
Chain make_basic(int n, const std::vector<Col>& raw_cols);

// linear extension of del[v_1..v_m] = sum_i (-1)^{i+1} [.., v_i deleted, ..]
Chain boundary(const Chain& z);

// block juxtaposition: x's columns into coordinates 1..a, y's into a+1..a+b
Chain compose(const Chain& x, const Chain& y);

// diag(-1,1,...,1) applied to every column of every term
Chain sn_act(const Chain& z);

}  // namespace sharbly
