#include "sharbly/linalg.hpp"

#include <algorithm>

namespace sharbly {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_cols(int rows, const std::vector<Col>& cols) {
  IntMatrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols; ++j) {
    if (static_cast<int>(cols[j].size()) != rows) throw SharblyError("column has wrong dimension");
    m.set_col(j, cols[j]);
  }
  return m;
}

Col IntMatrix::col(int j) const {
  Col v(rows);
  for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

void IntMatrix::set_col(int j, const Col& v) {
  for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

std::vector<Col> IntMatrix::columns() const {
  std::vector<Col> out(cols);
  for (int j = 0; j < cols; ++j) out[j] = col(j);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols, rows);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) t(j, i) = (*this)(i, j);
  return t;
}

int cmp_col(const Col& a, const Col& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

int cmp_matrix(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows != b.rows) return a.rows < b.rows ? -1 : 1;
  if (a.cols != b.cols) return a.cols < b.cols ? -1 : 1;
  for (size_t i = 0; i < a.e.size(); ++i) {
    int c = cmp(a.e[i], b.e[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw SharblyError("matrix dimension mismatch");
  IntMatrix r(a.rows, b.cols);
  for (int j = 0; j < b.cols; ++j)
    for (int k = 0; k < a.cols; ++k) {
      const Int& bkj = b(k, j);
      if (bkj == 0) continue;
      for (int i = 0; i < a.rows; ++i) r(i, j) += a(i, k) * bkj;
    }
  return r;
}

Col mat_mul(const IntMatrix& a, const Col& v) {
  if (a.cols != static_cast<int>(v.size())) throw SharblyError("matrix dimension mismatch");
  Col r(a.rows);
  for (int k = 0; k < a.cols; ++k) {
    if (v[k] == 0) continue;
    for (int i = 0; i < a.rows; ++i) r[i] += a(i, k) * v[k];
  }
  return r;
}

std::string serialize(const IntMatrix& m) {
  std::string s = std::to_string(m.rows) + "x" + std::to_string(m.cols) + ":";
  for (const Int& x : m.e) {
    s += x.get_str();
    s += ',';
  }
  return s;
}

Col primitive_normalize(const Col& v) {
  Int g = 0;
  for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) throw SharblyError("zero column");
  Col out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  for (const Int& x : out) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : out) y = -y;
    break;
  }
  return out;
}

namespace {

// row ops applied to H and mirrored on U (rows) and Uinv (columns)
struct Elim {
  IntMatrix *h, *u, *uinv;
  int* det_u;

  void swap_rows(int a, int b) {
    for (int j = 0; j < h->cols; ++j) std::swap((*h)(a, j), (*h)(b, j));
    if (u)
      for (int j = 0; j < u->cols; ++j) std::swap((*u)(a, j), (*u)(b, j));
    if (uinv)
      for (int i = 0; i < uinv->rows; ++i) std::swap((*uinv)(i, a), (*uinv)(i, b));
    if (det_u) *det_u = -*det_u;
  }

  void negate_row(int a) {
    for (int j = 0; j < h->cols; ++j) (*h)(a, j) = -(*h)(a, j);
    if (u)
      for (int j = 0; j < u->cols; ++j) (*u)(a, j) = -(*u)(a, j);
    if (uinv)
      for (int i = 0; i < uinv->rows; ++i) (*uinv)(i, a) = -(*uinv)(i, a);
    if (det_u) *det_u = -*det_u;
  }

  // row_i -= q * row_r
  void submul(int i, int r, const Int& q) {
    if (q == 0) return;
    for (int j = 0; j < h->cols; ++j) (*h)(i, j) -= q * (*h)(r, j);
    if (u)
      for (int j = 0; j < u->cols; ++j) (*u)(i, j) -= q * (*u)(r, j);
    if (uinv)
      for (int k = 0; k < uinv->rows; ++k) (*uinv)(k, r) += q * (*uinv)(k, i);
  }

  // unimodular 2x2 gcd step on rows (r, i), clearing H(i, j); det +1
  void gcd_rows(int r, int i, int j) {
    Int a = (*h)(r, j), b = (*h)(i, j), g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int p = a / g, q = b / g;   // new rows: (x*r + y*i, -q*r + p*i)
    auto combine = [&](IntMatrix& m, bool by_rows, int ra, int rb) {
      if (by_rows) {
        for (int jj = 0; jj < m.cols; ++jj) {
          Int va = m(ra, jj), vb = m(rb, jj);
          m(ra, jj) = x * va + y * vb;
          m(rb, jj) = p * vb - q * va;
        }
      } else {
        // inverse transpose action on Uinv columns: (p*ca + q*cb, -y*ca + x*cb)
        for (int ii = 0; ii < m.rows; ++ii) {
          Int va = m(ii, ra), vb = m(ii, rb);
          m(ii, ra) = p * va + q * vb;
          m(ii, rb) = x * vb - y * va;
        }
      }
    };
    combine(*h, true, r, i);
    if (u) combine(*u, true, r, i);
    if (uinv) combine(*uinv, false, r, i);
  }
};

Staircase staircase_impl(const IntMatrix& m, bool want_u, bool want_uinv) {
  Staircase s;
  s.H = m;
  if (want_u) s.U = IntMatrix::identity(m.rows);
  if (want_uinv) s.Uinv = IntMatrix::identity(m.rows);
  Elim el{&s.H, want_u ? &s.U : nullptr, want_uinv ? &s.Uinv : nullptr, &s.det_u};
  int n = m.rows, r = 0;
  for (int j = 0; j < m.cols && r < n; ++j) {
    int piv = -1;
    for (int i = r; i < n; ++i)
      if (s.H(i, j) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r) el.swap_rows(piv, r);
    for (int i = r + 1; i < n; ++i)
      if (s.H(i, j) != 0) {
        if (s.H(i, j) % s.H(r, j) == 0)
          el.submul(i, r, Int(s.H(i, j) / s.H(r, j)));
        else
          el.gcd_rows(r, i, j);
      }
    if (s.H(r, j) < 0) el.negate_row(r);
    for (int i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), s.H(i, j).get_mpz_t(), s.H(r, j).get_mpz_t());
      el.submul(i, r, q);
    }
    s.pivot_cols.push_back(j);
    ++r;
  }
  s.rank = r;
  return s;
}

}  // namespace

Staircase staircase(const IntMatrix& m) { return staircase_impl(m, true, true); }

int rank(const IntMatrix& m) { return staircase_impl(m, false, false).rank; }

Int det_int(const IntMatrix& m) {
  if (m.rows != m.cols) throw SharblyError("determinant of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) { piv = i; break; }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        a(i, j) = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        a(i, j) /= prev;   // exact by Bareiss
      }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

Rat det(const IntMatrix& m) { return Rat(det_int(m)); }

HnfResult hnf(const IntMatrix& m) {
  Staircase s = staircase_impl(m, true, false);
  if (s.rank != m.rows) throw SharblyError("row-rank-deficient matrix");
  return {std::move(s.H), std::move(s.U)};
}

std::vector<Col> saturate_span(const std::vector<Col>& s) {
  if (s.empty()) throw SharblyError("zero column");
  IntMatrix m = IntMatrix::from_cols(static_cast<int>(s[0].size()), s);
  Staircase st = staircase_impl(m, false, true);
  if (st.rank == 0) throw SharblyError("zero column");
  // saturation basis: first rank columns of U^-1; canonicalize via HNF of its transpose
  std::vector<Col> basis(st.rank);
  for (int j = 0; j < st.rank; ++j) basis[j] = st.Uinv.col(j);
  IntMatrix bt = IntMatrix::from_cols(static_cast<int>(s[0].size()), basis).transpose();
  HnfResult h = hnf(bt);
  return h.H.transpose().columns();
}

IntMatrix complete_to_sl(const std::vector<Col>& basis) {
  if (basis.empty()) throw SharblyError("not saturated");
  int n = static_cast<int>(basis[0].size());
  int a = static_cast<int>(basis.size());
  IntMatrix b = IntMatrix::from_cols(n, basis);
  Staircase s = staircase_impl(b, true, false);
  if (s.rank != a) throw SharblyError("not saturated");
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j)
      if (s.H(i, j) != (i == j ? 1 : 0)) throw SharblyError("not saturated");
  IntMatrix gamma = std::move(s.U);
  if (s.det_u < 0) {
    int row = a < n ? a : n - 1;   // outside the image block when possible
    for (int j = 0; j < n; ++j) gamma(row, j) = -gamma(row, j);
  }
  return gamma;
}

std::vector<std::vector<Rat>> kernel_basis(const IntMatrix& m) {
  Staircase s = staircase_impl(m, false, false);
  std::vector<bool> is_pivot(m.cols, false);
  for (int j : s.pivot_cols) is_pivot[j] = true;
  std::vector<std::vector<Rat>> out;
  for (int q = 0; q < m.cols; ++q) {
    if (is_pivot[q]) continue;
    // back-substitute H(:,pivots) * y = H(:,q) over the staircase
    std::vector<Rat> y(s.rank);
    for (int i = s.rank - 1; i >= 0; --i) {
      Rat acc(s.H(i, q));
      for (int t = i + 1; t < s.rank; ++t) acc -= Rat(s.H(i, s.pivot_cols[t])) * y[t];
      acc /= Rat(s.H(i, s.pivot_cols[i]));
      y[i] = acc;
    }
    std::vector<Rat> k(m.cols);
    k[q] = -1;
    for (int t = 0; t < s.rank; ++t) k[s.pivot_cols[t]] = y[t];
    out.push_back(std::move(k));
  }
  return out;
}

std::vector<Col> lattice_coords(const std::vector<Col>& basis, const std::vector<Col>& vecs) {
  int n = static_cast<int>(basis[0].size());
  int a = static_cast<int>(basis.size());
  IntMatrix b = IntMatrix::from_cols(n, basis);
  Staircase s = staircase_impl(b, true, false);
  if (s.rank != a) throw SharblyError("basis not independent");
  std::vector<Col> out;
  out.reserve(vecs.size());
  for (const Col& v : vecs) {
    Col w = mat_mul(s.U, v);
    for (int i = a; i < n; ++i)
      if (w[i] != 0) throw SharblyError("vector outside lattice span");
    // solve upper-triangular T y = w[0..a)
    Col y(a);
    for (int i = a - 1; i >= 0; --i) {
      Int acc = w[i];
      for (int t = i + 1; t < a; ++t) acc -= s.H(i, t) * y[t];
      if (acc % s.H(i, i) != 0) throw SharblyError("vector not in lattice");
      y[i] = acc / s.H(i, i);
    }
    out.push_back(std::move(y));
  }
  return out;
}

}  // namespace sharbly
