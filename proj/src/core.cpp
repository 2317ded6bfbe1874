#include "sharbly/core.hpp"

#include <algorithm>
#include <numeric>

namespace sharbly {

bool BasicSharbly::operator<(const BasicSharbly& o) const {
  if (n != o.n) return n < o.n;
  if (cols.size() != o.cols.size()) return cols.size() < o.cols.size();
  for (size_t j = 0; j < cols.size(); ++j) {
    int c = cmp_col(cols[j], o.cols[j]);
    if (c != 0) return c < 0;
  }
  return false;
}

Chain& Chain::add(const BasicSharbly& b, const Rat& c) {
  if (c == 0) return *this;
  auto [it, inserted] = terms.emplace(b, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
  return *this;
}

Chain Chain::operator+(const Chain& o) const {
  Chain r = *this;
  for (const auto& [b, c] : o.terms) r.add(b, c);
  return r;
}

Chain Chain::operator-(const Chain& o) const {
  Chain r = *this;
  for (const auto& [b, c] : o.terms) r.add(b, Rat(-c));
  return r;
}

Chain Chain::operator*(const Rat& c) const {
  Chain r;
  r.n = n;
  r.degree = degree;
  if (c == 0) return r;
  for (const auto& [b, co] : terms) r.terms.emplace(b, co * c);
  return r;
}

Chain make_basic(int n, const std::vector<Col>& raw_cols) {
  Chain z;
  z.n = n;
  z.degree = static_cast<int>(raw_cols.size()) - n;
  if (z.degree < 0) throw SharblyError("too few columns for a sharbly");
  std::vector<Col> cols(raw_cols.size());
  for (size_t j = 0; j < raw_cols.size(); ++j) {
    if (static_cast<int>(raw_cols[j].size()) != n) throw SharblyError("column has wrong dimension");
    for (const Int& x : raw_cols[j])
      if (x != 0) goto nonzero;
    throw SharblyError("zero vector in sharbly");
  nonzero:
    cols[j] = primitive_normalize(raw_cols[j]);
  }
  {
    // sort columns, folding the permutation sign into the coefficient
    std::vector<int> order(cols.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cmp_col(cols[a], cols[b]) < 0; });
    int sign = 1;
    for (size_t i = 0; i < order.size(); ++i)
      for (size_t j = i + 1; j < order.size(); ++j)
        if (order[i] > order[j]) sign = -sign;
    BasicSharbly b;
    b.n = n;
    b.cols.reserve(cols.size());
    for (int idx : order) b.cols.push_back(cols[idx]);
    for (size_t j = 0; j + 1 < b.cols.size(); ++j)
      if (b.cols[j] == b.cols[j + 1]) return z;   // repeated column: self-negating
    if (rank(b.matrix()) != n) return z;          // non-spanning symbols are the zero chain
    z.terms.emplace(std::move(b), Rat(sign));
  }
  return z;
}

Chain boundary(const Chain& z) {
  if (z.degree < 1) throw SharblyError("cannot take boundary");
  Chain out;
  out.n = z.n;
  out.degree = z.degree - 1;
  for (const auto& [b, c] : z.terms) {
    for (size_t i = 0; i < b.cols.size(); ++i) {
      std::vector<Col> face;
      face.reserve(b.cols.size() - 1);
      for (size_t j = 0; j < b.cols.size(); ++j)
        if (j != i) face.push_back(b.cols[j]);
      Chain f = make_basic(z.n, face);
      for (const auto& [fb, fc] : f.terms)
        out.add(fb, (i % 2 == 0 ? c : Rat(-c)) * fc);
    }
  }
  return out;
}

Chain compose(const Chain& x, const Chain& y) {
  Chain out;
  out.n = x.n + y.n;
  out.degree = x.degree + y.degree;
  for (const auto& [bx, cx] : x.terms)
    for (const auto& [by, cy] : y.terms) {
      std::vector<Col> cols;
      cols.reserve(bx.cols.size() + by.cols.size());
      for (const Col& v : bx.cols) {
        Col w(out.n);
        std::copy(v.begin(), v.end(), w.begin());
        cols.push_back(std::move(w));
      }
      for (const Col& v : by.cols) {
        Col w(out.n);
        std::copy(v.begin(), v.end(), w.begin() + x.n);
        cols.push_back(std::move(w));
      }
      Chain t = make_basic(out.n, cols);
      for (const auto& [tb, tc] : t.terms) out.add(tb, cx * cy * tc);
    }
  return out;
}

Chain sn_act(const Chain& z) {
  Chain out;
  out.n = z.n;
  out.degree = z.degree;
  for (const auto& [b, c] : z.terms) {
    std::vector<Col> cols = b.cols;
    for (Col& v : cols) v[0] = -v[0];
    Chain t = make_basic(z.n, cols);
    for (const auto& [tb, tc] : t.terms) out.add(tb, c * tc);
  }
  return out;
}

}  // namespace sharbly
