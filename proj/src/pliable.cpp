#include "sharbly/pliable.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace sharbly {

namespace {

// incremental integer echelon state; rows are primitive, kept in increasing
// lead position, and zero before their lead, so one pass per row suffices
struct Echelon {
  std::vector<Col> rows;
  std::vector<int> lead;

  int rank() const { return static_cast<int>(rows.size()); }

  // true iff v enlarges the span; v is absorbed either way
  bool add(Col v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      const Int& x = v[lead[r]];
      if (x == 0) continue;
      Int g;
      mpz_gcd(g.get_mpz_t(), rows[r][lead[r]].get_mpz_t(), x.get_mpz_t());
      Int pa = rows[r][lead[r]] / g, xb = x / g;
      for (size_t c = 0; c < v.size(); ++c) v[c] = pa * v[c] - xb * rows[r][c];
    }
    int l = -1;
    for (size_t c = 0; c < v.size(); ++c)
      if (v[c] != 0) {
        l = static_cast<int>(c);
        break;
      }
    if (l < 0) return false;
    v = primitive_normalize(v);
    size_t pos = 0;
    while (pos < lead.size() && lead[pos] < l) ++pos;
    rows.insert(rows.begin() + pos, std::move(v));
    lead.insert(lead.begin() + pos, l);
    return true;
  }

  bool contains(const Col& v) const {
    Echelon e = *this;
    return !e.add(v);
  }
};

void pliable_dfs(const std::vector<Col>& cols, int a, int k, int pos,
                 std::vector<int>& chosen, const Echelon& e,
                 std::vector<std::vector<int>>& out) {
  if (static_cast<int>(chosen.size()) == k) {
    if (e.rank() == a) out.push_back(chosen);
    return;
  }
  int need = k - static_cast<int>(chosen.size());
  if (static_cast<int>(cols.size()) - pos < need) return;
  if (e.rank() + need < a) return;
  for (int j = pos; j < static_cast<int>(cols.size()); ++j) {
    Echelon e2 = e;
    e2.add(cols[j]);
    if (e2.rank() > a) continue;
    chosen.push_back(j);
    pliable_dfs(cols, a, k, j + 1, chosen, e2, out);
    chosen.pop_back();
  }
}

bool exists_rank_le(const std::vector<Col>& cols, int k, int target, int pos,
                    int count, const Echelon& e) {
  if (count == k) return true;
  if (static_cast<int>(cols.size()) - pos < k - count) return false;
  for (int j = pos; j < static_cast<int>(cols.size()); ++j) {
    Echelon e2 = e;
    e2.add(cols[j]);
    if (e2.rank() > target) continue;
    if (exists_rank_le(cols, k, target, j + 1, count + 1, e2)) return true;
  }
  return false;
}

IntMatrix plying_gamma(const std::vector<Col>& selected) {
  static std::map<std::string, IntMatrix> cache;
  std::vector<Col> basis = saturate_span(selected);
  std::string key = serialize(IntMatrix::from_cols(static_cast<int>(selected[0].size()), basis));
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, complete_to_sl(basis)).first;
  return it->second;
}

void require_direct_sum(const std::vector<Col>& a_set, const std::vector<Col>& b_set) {
  Echelon ea, eb, eab;
  for (const Col& v : a_set) ea.add(v), eab.add(v);
  for (const Col& v : b_set) eb.add(v), eab.add(v);
  if (eab.rank() != ea.rank() + eb.rank())
    throw SharblyError("not a direct-sum configuration");
}

void combinations(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > m) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<PliableSubset> pliable_subsets(const std::vector<Col>& columns, int a, int k) {
  std::vector<std::vector<int>> sets;
  std::vector<int> chosen;
  pliable_dfs(columns, a, k, 0, chosen, Echelon{}, sets);

  const int m = static_cast<int>(columns.size());
  std::vector<PliableSubset> out;
  for (std::vector<int>& s : sets) {
    PliableSubset ps;
    ps.indices = std::move(s);
    std::vector<bool> in(m, false);
    for (int j : ps.indices) in[j] = true;
    long inv = 0;
    for (int j : ps.indices)
      for (int t = 0; t < j; ++t) inv += !in[t];
    ps.shuffle_sign = inv % 2 ? -1 : 1;
    std::vector<Col> sel;
    for (int j : ps.indices) sel.push_back(columns[j]);
    ps.gamma = plying_gamma(sel);
    out.push_back(std::move(ps));
  }
  return out;
}

DepthChart depth_chart(const std::vector<Col>& a_set, int up_to) {
  DepthChart d;
  d.p = static_cast<int>(a_set.size());
  int kmax = up_to < 0 ? d.p : std::min(d.p, up_to);
  d.values = {0};
  for (int k = 1; k <= kmax; ++k) {
    // adding one column changes the minimum by 0 or 1
    int prev = d.values.back();
    bool stays = exists_rank_le(a_set, k, prev, 0, 0, Echelon{});
    d.values.push_back(prev + !stays);
  }
  return d;
}

int min_dim_replace(const std::vector<Col>& a_set, const std::vector<Col>& b_set, int i) {
  const int p = static_cast<int>(a_set.size());
  const int q = static_cast<int>(b_set.size());
  if (i < 0 || i > p || i > q) throw SharblyError("replacement size out of range");
  require_direct_sum(a_set, b_set);

  int best = INT_MAX;
  combinations(p, p - i, [&](const std::vector<int>& keep) {
    Echelon ek;
    for (int j : keep) ek.add(a_set[j]);
    combinations(q, i, [&](const std::vector<int>& add) {
      Echelon e = ek;
      for (int j : add) e.add(b_set[j]);
      best = std::min(best, e.rank());
    });
  });
  return best;
}

bool key_lemma_holds(const std::vector<Col>& a_set, const std::vector<Col>& b_set,
                     int a, int k) {
  require_direct_sum(a_set, b_set);
  for (int i = 1; i < k; ++i) {
    if (i > static_cast<int>(a_set.size()) || i > static_cast<int>(b_set.size()))
      continue;   // empty replacement family
    if (min_dim_replace(a_set, b_set, i) <= a) return false;
  }
  return true;
}

std::vector<std::vector<int>> palettes(const std::vector<Col>& columns, int a) {
  const int m = static_cast<int>(columns.size());
  std::set<std::vector<int>> out;
  combinations(m, a, [&](const std::vector<int>& base) {
    Echelon e;
    for (int j : base)
      if (!e.add(columns[j])) return;
    std::vector<int> closure;
    for (int j = 0; j < m; ++j)
      if (e.contains(columns[j])) closure.push_back(j);
    out.insert(std::move(closure));
  });
  return {out.begin(), out.end()};
}

}  // namespace sharbly
