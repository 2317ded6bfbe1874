#include "sharbly/coinvariants.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sharbly/linalg.hpp"

namespace sharbly {

namespace {

// achiever set: all (det class, column permutation sign) pairs carrying the
// symbol onto its canonical matrix; always a coset of a subgroup of {+-1}^2
using Ach = std::set<std::pair<int, int>>;

struct CanonResult {
  IntMatrix C;
  Ach A;
};

constexpr std::pair<int, int> klein_mul(std::pair<int, int> a, std::pair<int, int> b) {
  return {a.first * b.first, a.second * b.second};
}

Ach klein_span(std::pair<int, int> base, const std::vector<std::pair<int, int>>& gens) {
  Ach sub{{1, 1}};
  for (bool grew = true; grew;) {
    grew = false;
    for (auto g : gens)
      for (auto h : Ach(sub))
        if (sub.insert(klein_mul(g, h)).second) grew = true;
  }
  Ach out;
  for (auto h : sub) out.insert(klein_mul(base, h));
  return out;
}

CanonicalKey key_from(IntMatrix C, const Ach& A) {
  CanonicalKey k;
  k.canonical = std::move(C);
  bool pp = A.count({1, 1}), pm = A.count({1, -1});
  bool mp = A.count({-1, 1}), mm = A.count({-1, -1});
  k.self_negating = (pp && pm) || (mp && mm);
  bool plus = pp || pm, minus = mp || mm;
  k.coset = plus && minus ? Coset::both : plus ? Coset::plus : Coset::minus;
  k.sign = plus ? (pp ? 1 : -1) : (mp ? 1 : -1);
  return k;
}

// ---- flat path: tie-frontier scan over class-sorted column orderings ------

// per-column profile: sorted multisets of gcds of 2x2 and 3x3 minors formed
// with the other columns; invariant under the whole relator group, so equal
// positions across an orbit carry equal profiles
std::vector<int> column_classes(const std::vector<Col>& cols, int n) {
  const int m = static_cast<int>(cols.size());
  using Profile = std::pair<std::vector<Int>, std::vector<Int>>;
  std::vector<Profile> prof(m);
  for (int j = 0; j < m; ++j) {
    std::vector<Int> g2, g3;
    for (int l = 0; l < m; ++l) {
      if (l == j) continue;
      Int g = 0;
      for (int r1 = 0; r1 < n; ++r1)
        for (int r2 = r1 + 1; r2 < n; ++r2) {
          Int minor = cols[j][r1] * cols[l][r2] - cols[j][r2] * cols[l][r1];
          mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), minor.get_mpz_t());
        }
      g2.push_back(g);
    }
    if (n >= 3)
      for (int l1 = 0; l1 < m; ++l1) {
        if (l1 == j) continue;
        for (int l2 = l1 + 1; l2 < m; ++l2) {
          if (l2 == j) continue;
          const Col &a = cols[j], &b = cols[l1], &c = cols[l2];
          Int g = 0;
          for (int r1 = 0; r1 < n; ++r1)
            for (int r2 = r1 + 1; r2 < n; ++r2)
              for (int r3 = r2 + 1; r3 < n; ++r3) {
                Int minor = a[r1] * (b[r2] * c[r3] - b[r3] * c[r2]) -
                            a[r2] * (b[r1] * c[r3] - b[r3] * c[r1]) +
                            a[r3] * (b[r1] * c[r2] - b[r2] * c[r1]);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), minor.get_mpz_t());
              }
          g3.push_back(g);
        }
      }
    std::sort(g2.begin(), g2.end());
    std::sort(g3.begin(), g3.end());
    prof[j] = {std::move(g2), std::move(g3)};
  }
  std::vector<Profile> uniq = prof;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<int> cls(m);
  for (int j = 0; j < m; ++j)
    cls[j] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), prof[j]) - uniq.begin());
  return cls;
}

struct SearchState {
  IntMatrix U;
  int det_u = 1;
  int parity = 1;
  uint64_t used = 0;
};

// applies U to eps*v, folds rows >= r into a single nonnegative pivot via
// unimodular row operations mirrored into U, then reduces the rows above a
// new pivot; the emitted column is the next column of the prefix Hermite
// form, hence independent of which tied state produced it
Col emit_column(SearchState& st, int r, const Col& v, int eps) {
  const int n = st.U.rows;
  Col h = mat_mul(st.U, v);
  if (eps < 0)
    for (Int& x : h) x = -x;

  auto swap_rows = [&](int i, int j) {
    for (int c = 0; c < n; ++c) std::swap(st.U(i, c), st.U(j, c));
    std::swap(h[i], h[j]);
    st.det_u = -st.det_u;
  };
  auto negate_row = [&](int i) {
    for (int c = 0; c < n; ++c) st.U(i, c) = -st.U(i, c);
    h[i] = -h[i];
    st.det_u = -st.det_u;
  };
  auto submul = [&](int i, int j, const Int& q) {   // row_i -= q*row_j
    if (q == 0) return;
    for (int c = 0; c < n; ++c) st.U(i, c) -= q * st.U(j, c);
    h[i] -= q * h[j];
  };

  for (int i = r + 1; i < n; ++i) {
    if (h[i] == 0) continue;
    if (h[r] == 0) {
      swap_rows(r, i);
      continue;
    }
    if (h[i] % h[r] == 0) {
      submul(i, r, Int(h[i] / h[r]));
    } else {
      Int g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                 h[r].get_mpz_t(), h[i].get_mpz_t());
      Int p = h[r] / g, q = h[i] / g;   // det [[x,y],[-q,p]] = +1
      for (int c = 0; c < n; ++c) {
        Int a = st.U(r, c), b = st.U(i, c);
        st.U(r, c) = x * a + y * b;
        st.U(i, c) = p * b - q * a;
      }
      Int a = h[r], b = h[i];
      h[r] = x * a + y * b;
      h[i] = p * b - q * a;
    }
  }
  if (r < n && h[r] != 0) {
    if (h[r] < 0) negate_row(r);
    for (int i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h[i].get_mpz_t(), h[r].get_mpz_t());
      submul(i, r, q);
    }
  }
  return h;
}

CanonResult flat_canonical(const std::vector<Col>& cols, int n, long long& budget) {
  const int m = static_cast<int>(cols.size());
  if (m > 64) throw SharblyError("sharbly too wide to canonicalize");
  std::vector<int> cls = column_classes(cols, n);
  std::vector<int> cls_seq = cls;
  std::sort(cls_seq.begin(), cls_seq.end());

  std::vector<SearchState> frontier{{IntMatrix::identity(n), 1, 1, 0}};
  IntMatrix C(n, m);
  int r = 0;
  for (int p = 0; p < m; ++p) {
    std::vector<SearchState> best;
    Col hmin;
    for (const SearchState& st : frontier)
      for (int j = 0; j < m; ++j) {
        if (st.used >> j & 1 || cls[j] != cls_seq[p]) continue;
        for (int eps : {1, -1}) {
          if (--budget < 0) throw BudgetExceeded();
          SearchState child = st;
          int below = j - __builtin_popcountll(st.used & ((uint64_t(1) << j) - 1));
          if (below & 1) child.parity = -child.parity;
          child.used |= uint64_t(1) << j;
          Col h = emit_column(child, r, cols[j], eps);
          int c = best.empty() ? -1 : cmp_col(h, hmin);
          if (c < 0) {
            hmin = std::move(h);
            best.clear();
          }
          if (c <= 0) best.push_back(std::move(child));
        }
      }
    C.set_col(p, hmin);
    if (r < n && hmin[r] != 0) ++r;
    frontier.clear();
    std::set<std::string> seen;
    for (SearchState& st : best) {
      std::string key = serialize(st.U);
      key += '|';
      key += std::to_string(st.used);
      key += st.det_u < 0 ? "-" : "+";
      key += st.parity < 0 ? "-" : "+";
      if (seen.insert(key).second) frontier.push_back(std::move(st));
    }
  }
  Ach a;
  for (const SearchState& st : frontier) a.insert({st.det_u, st.parity});
  return {std::move(C), std::move(a)};
}

// ---- split path: matroid components, factor recursion, block assembly -----

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void join(int x, int y) { p[find(x)] = find(y); }
};

const CanonResult& canonical_of_cols(const std::vector<Col>& cols, int n,
                                     long long& budget, bool disable_split);

std::unordered_map<std::string, CanonResult> memo;

CanonResult canonical_uncached(const std::vector<Col>& cols, int n,
                               long long& budget, bool disable_split) {
  const int m = static_cast<int>(cols.size());
  IntMatrix M = IntMatrix::from_cols(n, cols);

  std::vector<std::vector<int>> comps;
  if (!disable_split) {
    UnionFind uf(m);
    for (const std::vector<Rat>& k : kernel_basis(M)) {
      int first = -1;
      for (int j = 0; j < m; ++j)
        if (k[j] != 0) {
          if (first < 0) first = j;
          uf.join(first, j);
        }
    }
    std::vector<std::vector<int>> by_root(m);
    for (int j = 0; j < m; ++j) by_root[uf.find(j)].push_back(j);
    for (auto& g : by_root)
      if (!g.empty()) comps.push_back(std::move(g));
  }
  if (comps.size() <= 1) return flat_canonical(cols, n, budget);

  struct Factor {
    std::vector<int> idx;
    int a = 0, mcols = 0, mb = 1;
    std::vector<Col> L;
    const CanonResult* rec = nullptr;
  };
  std::vector<Factor> fs;
  for (std::vector<int>& idx : comps) {
    Factor f;
    f.idx = std::move(idx);
    f.mcols = static_cast<int>(f.idx.size());
    std::vector<Col> s;
    for (int j : f.idx) s.push_back(cols[j]);
    f.L = saturate_span(s);
    f.a = static_cast<int>(f.L.size());
    Chain fb = make_basic(f.a, lattice_coords(f.L, s));
    const auto& [sym, coeff] = *fb.terms.begin();
    f.mb = coeff > 0 ? 1 : -1;
    f.rec = &canonical_of_cols(sym.cols, f.a, budget, disable_split);
    fs.push_back(std::move(f));
  }

  std::sort(fs.begin(), fs.end(), [](const Factor& x, const Factor& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.mcols != y.mcols) return x.mcols < y.mcols;
    return cmp_matrix(x.rec->C, y.rec->C) < 0;
  });

  // the split is valid only when Z^n is the direct sum of the saturated
  // component lattices; otherwise fall back to the whole-matrix search
  IntMatrix B(n, n);
  int off = 0;
  for (const Factor& f : fs)
    for (const Col& v : f.L) B.set_col(off++, v);
  Int db = off == n ? det_int(B) : Int(0);
  if (db != 1 && db != -1) return flat_canonical(cols, n, budget);
  int t = db > 0 ? 1 : -1;

  // sign of regrouping the stored column order into sorted component order
  std::vector<int> grouped;
  for (const Factor& f : fs) grouped.insert(grouped.end(), f.idx.begin(), f.idx.end());
  int s0 = 1;
  for (size_t i = 0; i < grouped.size(); ++i)
    for (size_t j = i + 1; j < grouped.size(); ++j)
      if (grouped[i] > grouped[j]) s0 = -s0;

  IntMatrix C(n, m);
  int roff = 0, coff = 0;
  for (const Factor& f : fs) {
    for (int j = 0; j < f.mcols; ++j)
      for (int i = 0; i < f.a; ++i) C(roff + i, coff + j) = f.rec->C(i, j);
    roff += f.a;
    coff += f.mcols;
  }

  std::pair<int, int> base{t, s0};
  std::vector<std::pair<int, int>> gens;
  for (const Factor& f : fs) {
    auto ref = *f.rec->A.begin();
    base = klein_mul(base, {ref.first, f.mb * ref.second});
    for (auto ds : f.rec->A) gens.push_back(klein_mul(ds, ref));
  }
  // block transpositions of isomorphic factors: row parity (-1)^a, column
  // parity (-1)^m; parities are homomorphic, so generators suffice
  for (size_t i = 0; i + 1 < fs.size(); ++i) {
    const Factor &x = fs[i], &y = fs[i + 1];
    if (x.a == y.a && x.mcols == y.mcols && x.rec->C == y.rec->C)
      gens.push_back({x.a % 2 ? -1 : 1, x.mcols % 2 ? -1 : 1});
  }
  return {std::move(C), klein_span(base, gens)};
}

const CanonResult& canonical_of_cols(const std::vector<Col>& cols, int n,
                                     long long& budget, bool disable_split) {
  std::string key = serialize(IntMatrix::from_cols(n, cols));
  if (disable_split) key += "|flat";
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  CanonResult res = canonical_uncached(cols, n, budget, disable_split);
  return memo.emplace(std::move(key), std::move(res)).first->second;
}

CanonicalKey canonical_inner(const BasicSharbly& b, long long& budget,
                             bool disable_split) {
  const CanonResult& r = canonical_of_cols(b.cols, b.n, budget, disable_split);
  return key_from(r.C, r.A);
}

}  // namespace

std::string CanonicalKey::to_string() const {
  std::ostringstream os;
  os << canonical.rows << "x" << canonical.cols << "[";
  for (int j = 0; j < canonical.cols; ++j) {
    if (j) os << ";";
    for (int i = 0; i < canonical.rows; ++i)
      os << (i ? "," : "") << canonical(i, j).get_str();
  }
  os << "]," << (coset == Coset::both ? "both" : coset == Coset::plus ? "plus" : "minus");
  if (self_negating) os << ",self-negating";
  return os.str();
}

CanonicalKey canonical_form(const BasicSharbly& b, const ReduceOptions& opts) {
  long long budget = opts.node_budget;
  return canonical_inner(b, budget, opts.disable_split);
}

Reduced reduce(const Chain& z, const ReduceOptions& opts) {
  long long budget = opts.node_budget;
  Reduced out;
  for (const auto& [b, c] : z.terms) {
    CanonicalKey k = canonical_inner(b, budget, opts.disable_split);
    if (k.self_negating) continue;
    int s = k.sign;
    k.sign = 1;
    out[std::move(k)] += c * s;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

bool is_cycle(const Chain& z, const ReduceOptions& opts) {
  return reduce(boundary(z), opts).empty();
}

Parity parity_of_cycle(const Chain& z, const ReduceOptions& opts) {
  Reduced a = reduce(z, opts), b = reduce(sn_act(z), opts);
  if (a.size() != b.size()) return Parity::none;
  CanonicalKeyLess less;
  bool even = true, odd = true;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (less(ia->first, ib->first) || less(ib->first, ia->first)) return Parity::none;
    if (ia->second != ib->second) even = false;
    if (ia->second != -ib->second) odd = false;
  }
  return even ? Parity::even : odd ? Parity::odd : Parity::none;
}

void clear_canonical_cache() { memo.clear(); }

}  // namespace sharbly
