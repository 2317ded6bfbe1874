#include "sharbly/cocycle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <queue>
#include <random>
#include <utility>

#include "sharbly/pliable.hpp"

namespace sharbly {

namespace {

int sgn_rat(const Rat& r) { return sgn(r.get_num()); }

}  // namespace

double Value::as_double() const {
  return exact ? exact_value.get_d() : numeric.estimate;
}

namespace {

// certified |value| lower bound, 0 when none is available
double mag_lb(const Value& v) {
  return v.exact ? std::abs(v.exact_value.get_d()) : v.numeric.magnitude_lb;
}

}  // namespace

bool Value::nonzero_certified() const {
  if (exact) return exact_value != 0;
  return numeric.magnitude_lb > 0;
}

int Value::certified_sign() const {
  if (exact) return sgn_rat(exact_value);
  if (numeric.magnitude_lb > 0) return numeric.estimate > 0 ? 1 : -1;
  throw SharblyError("inconclusive value");
}

Value value_add(const Value& a, const Value& b) {
  if (a.exact && b.exact) return Value::of(a.exact_value + b.exact_value);
  if (a.zero_certified()) return b;
  if (b.zero_certified()) return a;
  NumericValue n;
  n.estimate = a.as_double() + b.as_double();
  n.error = a.error_bound() + b.error_bound();
  // certified magnitudes only accumulate when the certified signs agree
  if (mag_lb(a) > 0 && mag_lb(b) > 0 && a.certified_sign() == b.certified_sign())
    n.magnitude_lb = mag_lb(a) + mag_lb(b);
  else
    n.magnitude_lb = std::max(0.0, std::abs(n.estimate) - n.error);
  n.method = a.exact ? b.numeric.method : a.numeric.method;
  n.work = (a.exact ? 0 : a.numeric.work) + (b.exact ? 0 : b.numeric.work);
  return Value::of(n);
}

Value value_mul(const Value& a, const Value& b) {
  if (a.exact && b.exact) return Value::of(a.exact_value * b.exact_value);
  if (a.zero_certified() || b.zero_certified()) return Value::of(Rat(0));
  NumericValue n;
  double x = a.as_double(), y = b.as_double();
  double ex = a.error_bound(), ey = b.error_bound();
  n.estimate = x * y;
  n.error = std::abs(x) * ey + std::abs(y) * ex + ex * ey;
  n.magnitude_lb = mag_lb(a) * mag_lb(b);
  n.method = a.exact ? b.numeric.method : a.numeric.method;
  n.work = (a.exact ? 0 : a.numeric.work) + (b.exact ? 0 : b.numeric.work);
  return Value::of(n);
}

Value value_scale(const Value& a, const Rat& c) {
  if (a.exact) return Value::of(a.exact_value * c);
  NumericValue n = a.numeric;
  double cd = c.get_d();
  n.estimate *= cd;
  n.error *= std::abs(cd);
  n.magnitude_lb *= std::abs(cd);
  return Value::of(n);
}

Value CosharblyEvaluator::evaluate(const std::vector<Col>& cols,
                                   const EvalOptions& opts) const {
  if (static_cast<int>(cols.size()) != arity()) throw SharblyError("wrong arity");
  for (const Col& v : cols) {
    if (static_cast<int>(v.size()) != c_) throw SharblyError("wrong arity");
    if (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; }))
      throw SharblyError("zero column");
  }
  return eval_impl(cols, opts);
}

namespace {

// ---------------------------------------------------------------- mu_trivial

struct MuTrivial final : CosharblyEvaluator {
  MuTrivial() : CosharblyEvaluator(1, 0, Parity::even) {}
  Value eval_impl(const std::vector<Col>&, const EvalOptions&) const override {
    return Value::of(Rat(1));
  }
};

// ------------------------------------------------------------ volume cocycle

// integrand det(sum_i t_i a_i a_i^T)^{-(c+1)/2} on the truncated simplex
// T_delta = {t_i >= delta}, parametrized by barycentric y via
// t = delta + (1 - d*delta) y.  Log-convex in t, hence convex, so every cell
// admits rigorous bounds: volume*f(centroid) below (Jensen) and the vertex
// mean above (chordal majorant).
struct Integrand {
  int c = 0, d = 0;
  std::vector<std::vector<double>> a;   // d columns of length c
  double delta = 0, s = 1;

  double operator()(const std::vector<double>& y) const {
    double m[9] = {0};
    for (int i = 0; i < d; ++i) {
      double t = delta + s * y[i];
      for (int p = 0; p < c; ++p)
        for (int q = p; q < c; ++q) m[p * c + q] += t * a[i][p] * a[i][q];
    }
    double det;
    if (c == 2) {
      det = m[0] * m[3] - m[1] * m[1];
    } else {
      det = m[0] * (m[4] * m[8] - m[5] * m[5]) - m[1] * (m[1] * m[8] - m[5] * m[2]) +
            m[2] * (m[1] * m[5] - m[4] * m[2]);
    }
    if (!(det > 0)) return std::numeric_limits<double>::infinity();
    return std::pow(det, -0.5 * (c + 1));
  }
};

struct Cell {
  std::vector<std::vector<double>> v;   // d barycentric vertices
  std::vector<double> fv;               // cached vertex values
  double vol = 0, lo = 0, hi = 0;
  int depth = 0;
  double gap() const { return hi - lo; }
  bool operator<(const Cell& o) const { return gap() < o.gap(); }
};

void cell_bounds(Cell& c, const Integrand& f) {
  int d = f.d;
  std::vector<double> mid(d, 0.0);
  double vsum = 0;
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) mid[k] += c.v[i][k] / d;
    vsum += c.fv[i];
  }
  c.lo = c.vol * f(mid);
  c.hi = c.vol * vsum / d;
}

struct Rung {
  double lo = 0, hi = 0;
  long long evals = 0;
};

Rung integrate(const Integrand& f, double tol, long budget) {
  int d = f.d;
  Cell root;
  root.v.assign(d, std::vector<double>(d, 0.0));
  root.fv.assign(d, 0.0);
  for (int i = 0; i < d; ++i) {
    root.v[i][i] = 1.0;
    root.fv[i] = f(root.v[i]);
  }
  root.vol = std::pow(f.s, d - 1);
  for (int i = 2; i < d; ++i) root.vol /= i;
  cell_bounds(root, f);

  std::priority_queue<Cell> q;
  double lo = root.lo, hi = root.hi;
  Rung r;
  r.evals = d + 1;
  q.push(std::move(root));
  for (long step = 0; step < budget; ++step) {
    if (hi - lo <= tol * std::max(std::abs(lo), 1e-12)) break;
    Cell worst = q.top();
    q.pop();
    lo -= worst.lo;
    hi -= worst.hi;
    // Split the edge with the largest value jump; near the blow-up faces this
    // tracks the gradient far better than the longest edge.  Every few levels
    // fall back to the longest edge so cells cannot degenerate into slivers.
    int bi = 0, bj = 1;
    double best = -1;
    bool by_length = worst.depth % 4 == 3;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        double len = 0;
        for (int k = 0; k < d; ++k) {
          double e = worst.v[i][k] - worst.v[j][k];
          len += e * e;
        }
        double score = by_length ? len : std::abs(worst.fv[i] - worst.fv[j]) * len;
        if (score > best) {
          best = score;
          bi = i;
          bj = j;
        }
      }
    std::vector<double> mid(d);
    for (int k = 0; k < d; ++k) mid[k] = 0.5 * (worst.v[bi][k] + worst.v[bj][k]);
    double fmid = f(mid);
    Cell left = worst, right = std::move(worst);
    left.v[bi] = mid;
    left.fv[bi] = fmid;
    right.v[bj] = mid;
    right.fv[bj] = fmid;
    left.vol *= 0.5;
    right.vol *= 0.5;
    left.depth = ++right.depth;
    cell_bounds(left, f);
    cell_bounds(right, f);
    r.evals += 3;
    lo += left.lo + right.lo;
    hi += left.hi + right.hi;
    q.push(std::move(left));
    q.push(std::move(right));
  }
  r.lo = lo;
  r.hi = hi;
  return r;
}

constexpr int kRungs = 6;

double rung_delta(int d, int j) { return 1.0 / (4.0 * d) / double(1 << j); }

struct VolumeCocycle final : CosharblyEvaluator {
  explicit VolumeCocycle(int c)
      : CosharblyEvaluator(c, c * (c + 1) / 2 - c, c % 2 ? Parity::even : Parity::odd) {}

  // columns of P: coordinates of a_i a_i^T in the basis of squares followed by
  // the off-diagonal products, primitive representatives throughout
  static IntMatrix rank_one_matrix(int c, const std::vector<Col>& cols) {
    int d = c * (c + 1) / 2;
    IntMatrix p(d, d);
    for (int j = 0; j < d; ++j) {
      Col a = primitive_normalize(cols[j]);
      int r = 0;
      for (int i = 0; i < c; ++i) p(r++, j) = a[i] * a[i];
      for (int i = 0; i < c; ++i)
        for (int k = i + 1; k < c; ++k) p(r++, j) = a[i] * a[k];
    }
    return p;
  }

  static Integrand make_integrand(int c, const std::vector<Col>& cols, int rung) {
    Integrand f;
    f.c = c;
    f.d = c * (c + 1) / 2;
    f.a.reserve(f.d);
    for (const Col& v : cols) {
      Col a = primitive_normalize(v);
      std::vector<double> ad(c);
      for (int i = 0; i < c; ++i) ad[i] = a[i].get_d();
      f.a.push_back(std::move(ad));
    }
    f.delta = rung_delta(f.d, rung);
    f.s = 1.0 - f.d * f.delta;
    return f;
  }

  Value eval_impl(const std::vector<Col>& cols, const EvalOptions& opts) const override {
    IntMatrix p = rank_one_matrix(c(), cols);
    Int dp = det_int(p);
    if (dp == 0) return Value::of(Rat(0));

    // refine toward the full simplex on a halving ladder of truncations and
    // extrapolate the remaining tail geometrically; later rungs carry the
    // singular behavior, so the split budget ramps up toward them.  The
    // ladder runs on the lower bounds: the centroid rule converges much
    // faster than the chordal upper bound, which near the blow-up faces is
    // slack-dominated and would corrupt the increments.
    std::array<Rung, kRungs> rungs;
    auto run_rung = [&](int j) {
      long budget = std::max(400L, (opts.cells << (j + 1)) >> kRungs);
      return integrate(make_integrand(c(), cols, j), opts.tol, budget);
    };
    if (opts.threads > 1) {
      std::vector<std::future<Rung>> futs;
      futs.reserve(kRungs);
      for (int j = 0; j < kRungs; ++j)
        futs.push_back(std::async(std::launch::async, run_rung, j));
      for (int j = 0; j < kRungs; ++j) rungs[j] = futs[j].get();
    } else {
      for (int j = 0; j < kRungs; ++j) rungs[j] = run_rung(j);
    }

    double inc_prev = 0, inc = 0, lo = 0, hi = 0;
    long long work = 0;
    for (int j = 0; j < kRungs; ++j) {
      const Rung& r = rungs[j];
      work += r.evals;
      if (j > 0) {
        inc_prev = inc;
        inc = std::max(0.0, r.lo - lo);
      }
      lo = r.lo;
      hi = r.hi;
    }
    double ratio = inc_prev > 1e-300 ? std::clamp(inc / inc_prev, 0.0, 0.9) : 0.0;
    double tail = inc * ratio / (1.0 - ratio);
    double upper = hi + tail + 3.0 * (tail + inc);
    double mid = lo + tail;

    // lo certifies the full integral from below (positive integrand), while
    // the upper side adds the extrapolated tail with a three-fold margin
    double dpd = dp.get_d();
    NumericValue n;
    n.estimate = dpd * mid;
    n.error = std::abs(dpd) * std::max(mid - lo, upper - mid);
    n.magnitude_lb = std::abs(dpd) * lo;
    n.method = "adaptive simplex quadrature, halving-tail ladder";
    n.work = work;
    return Value::of(n);
  }
};

// --------------------------------------------------------------- product

IntMatrix random_unimodular(std::mt19937_64& rng, int n, int& det) {
  IntMatrix m = IntMatrix::identity(n);
  det = 1;
  std::uniform_int_distribution<int> coeff(-2, 2), pick(0, n - 1);
  for (int t = 0; t < 2 * n + 4 && n > 1; ++t) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    Int c(coeff(rng));
    for (int k = 0; k < n; ++k) m(i, k) += c * m(j, k);
  }
  if (rng() & 1) {
    int i = pick(rng);
    for (int k = 0; k < n; ++k) m(i, k) = -m(i, k);
    det = -det;
  }
  return m;
}

// block upper-triangular h = [[A,B],[0,D]] with det A * det D = 1; replying by
// h*gamma must leave every product evaluation unchanged
IntMatrix replying_twist(std::mt19937_64& rng, int a, int b) {
  int da = 1, dd = 1;
  IntMatrix A = random_unimodular(rng, a, da);
  IntMatrix D = random_unimodular(rng, b, dd);
  if (da * dd == -1) {
    for (int k = 0; k < b; ++k) D(0, k) = -D(0, k);
  }
  std::uniform_int_distribution<int> coeff(-2, 2);
  IntMatrix h(a + b, a + b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j) h(i, j) = A(i, j);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) h(a + i, a + j) = D(i, j);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) h(i, a + j) = coeff(rng);
  return h;
}

struct ProductEvaluator final : CosharblyEvaluator {
  EvaluatorPtr mu, nu;

  ProductEvaluator(EvaluatorPtr m, EvaluatorPtr n)
      : CosharblyEvaluator(m->c() + n->c(), m->degree() + n->degree(), m->parity()),
        mu(std::move(m)),
        nu(std::move(n)) {}

  Value eval_impl(const std::vector<Col>& cols, const EvalOptions& opts) const override {
    int a = mu->c(), b = nu->c();
    if (rank(IntMatrix::from_cols(c(), cols)) < c()) return Value::of(Rat(0));

    Value total = Value::of(Rat(0));
    auto subsets = pliable_subsets(cols, a, a + mu->degree());
    for (size_t si = 0; si < subsets.size(); ++si) {
      const PliableSubset& sub = subsets[si];
      IntMatrix g = sub.gamma;
      if (opts.replying_seed) {
        std::mt19937_64 rng(opts.replying_seed * 1000003ULL + si);
        g = mat_mul(replying_twist(rng, a, b), g);
      }
      std::vector<Col> left;
      left.reserve(sub.indices.size());
      for (int idx : sub.indices) {
        Col w = mat_mul(g, cols[idx]);
        left.emplace_back(w.begin(), w.begin() + a);
      }
      std::vector<Col> right;
      bool dead = false;
      std::vector<char> in(cols.size(), 0);
      for (int idx : sub.indices) in[idx] = 1;
      for (size_t j = 0; j < cols.size() && !dead; ++j) {
        if (in[j]) continue;
        Col w = mat_mul(g, cols[j]);
        Col bot(w.begin() + a, w.end());
        if (std::all_of(bot.begin(), bot.end(), [](const Int& x) { return x == 0; }))
          dead = true;   // the projected symbol has a zero column
        else
          right.push_back(std::move(bot));
      }
      if (dead) continue;
      Value term = value_mul(mu->evaluate(left, opts), nu->evaluate(right, opts));
      if (sub.shuffle_sign < 0) term = value_scale(term, Rat(-1));
      total = value_add(total, term);
    }
    return total;
  }
};

}  // namespace

EvaluatorPtr mu_trivial() { return std::make_shared<MuTrivial>(); }

EvaluatorPtr volume_cocycle(int c) {
  if (c != 2 && c != 3) throw SharblyError("volume cocycle needs c in {2, 3}");
  return std::make_shared<VolumeCocycle>(c);
}

EvaluatorPtr product(EvaluatorPtr mu, EvaluatorPtr nu) {
  if (!mu || !nu) throw SharblyError("null evaluator");
  if (mu->parity() != nu->parity()) throw SharblyError("parity mismatch");
  return std::make_shared<ProductEvaluator>(std::move(mu), std::move(nu));
}

Parity parity_of_cosharbly(const EvaluatorPtr& mu) { return mu->parity(); }

Value pair(const EvaluatorPtr& mu, const Chain& z, const EvalOptions& opts) {
  if (z.n != mu->c() || z.degree != mu->degree()) throw SharblyError("wrong arity");
  Value total = Value::of(Rat(0));
  for (const auto& [sym, coeff] : z.terms)
    total = value_add(total, value_scale(mu->evaluate(sym.cols, opts), coeff));
  return total;
}

VolumeCrossCheck volume_cross_check(int c, const std::vector<Col>& cols,
                                    const EvalOptions& opts) {
  if (c != 2 && c != 3) throw SharblyError("volume cocycle needs c in {2, 3}");
  int d = c * (c + 1) / 2;
  if (static_cast<int>(cols.size()) != d) throw SharblyError("wrong arity");
  if (rank(IntMatrix::from_cols(c, cols)) < c)
    throw SharblyError("cross-check requires spanning columns");

  VolumeCrossCheck out;
  Integrand f = VolumeCocycle::make_integrand(c, cols, kRungs - 1);
  out.delta = f.delta;
  Rung r = integrate(f, opts.tol, std::max(400L, opts.cells));
  out.quad_lo = r.lo;
  out.quad_hi = r.hi;
  out.cells = r.evals;

  // uniform samples on the same truncated simplex
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(std::numeric_limits<double>::min(), 1.0);
  double vol = std::pow(f.s, d - 1);
  for (int i = 2; i < d; ++i) vol /= i;
  long n = std::max(1000L, opts.mc_samples);
  double sum = 0, sumsq = 0;
  std::vector<double> y(d);
  for (long i = 0; i < n; ++i) {
    double tot = 0;
    for (int k = 0; k < d; ++k) {
      y[k] = -std::log(u(rng));
      tot += y[k];
    }
    for (int k = 0; k < d; ++k) y[k] /= tot;
    double v = f(y);
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / n;
  double var = std::max(0.0, sumsq / n - mean * mean);
  out.mc_estimate = vol * mean;
  out.mc_half_width = 3.0 * vol * std::sqrt(var / n);
  out.samples = n;
  out.overlap = out.quad_lo <= out.mc_estimate + out.mc_half_width &&
                out.mc_estimate - out.mc_half_width <= out.quad_hi;
  return out;
}

long SymbolicPairing::total_multiplicity() const {
  long t = 0;
  for (const auto& term : terms) t += term.multiplicity;
  return t;
}

bool SymbolicPairing::all_identical() const { return terms.size() == 1; }

SymbolicPairing pair_symbolic(const EvaluatorPtr& mu, const EvaluatorPtr& nu,
                              const Chain& z, const ReduceOptions& ropts) {
  int a = mu->c(), b = nu->c();
  if (z.n != a + b || z.degree != mu->degree() + nu->degree())
    throw SharblyError("wrong arity");

  struct Raw {
    int sign;
    CanonicalKey left, right;
  };
  std::vector<Raw> raws;
  for (const auto& [sym, coeff] : z.terms) {
    int cs;
    if (coeff == 1)
      cs = 1;
    else if (coeff == -1)
      cs = -1;
    else
      throw SharblyError("pair_symbolic requires unit coefficients");

    for (const PliableSubset& sub : pliable_subsets(sym.cols, a, a + mu->degree())) {
      std::vector<Col> left, right;
      std::vector<char> in(sym.cols.size(), 0);
      for (int idx : sub.indices) in[idx] = 1;
      bool dead = false;
      for (int idx : sub.indices) {
        Col w = mat_mul(sub.gamma, sym.cols[idx]);
        left.emplace_back(w.begin(), w.begin() + a);
      }
      for (size_t j = 0; j < sym.cols.size() && !dead; ++j) {
        if (in[j]) continue;
        Col w = mat_mul(sub.gamma, sym.cols[j]);
        Col bot(w.begin() + a, w.end());
        if (std::all_of(bot.begin(), bot.end(), [](const Int& x) { return x == 0; }))
          dead = true;
        else
          right.push_back(std::move(bot));
      }
      if (dead) continue;

      Chain lb = make_basic(a, left), rb = make_basic(b, right);
      if (lb.is_zero() || rb.is_zero()) continue;
      int mb_l = sgn_rat(lb.terms.begin()->second);
      int mb_r = sgn_rat(rb.terms.begin()->second);
      CanonicalKey kl = canonical_form(lb.terms.begin()->first, ropts);
      CanonicalKey kr = canonical_form(rb.terms.begin()->first, ropts);
      if (kl.self_negating || kr.self_negating) continue;
      int s = cs * sub.shuffle_sign * mb_l * mb_r * kl.sign * kr.sign;
      kl.sign = kr.sign = 1;
      raws.push_back({s, std::move(kl), std::move(kr)});
    }
  }

  CanonicalKeyLess less;
  std::sort(raws.begin(), raws.end(), [&](const Raw& x, const Raw& y) {
    if (less(x.left, y.left)) return true;
    if (less(y.left, x.left)) return false;
    if (less(x.right, y.right)) return true;
    if (less(y.right, x.right)) return false;
    return x.sign < y.sign;
  });

  SymbolicPairing out;
  for (auto& r : raws) {
    if (!out.terms.empty()) {
      PairingTerm& last = out.terms.back();
      bool same = last.sign == r.sign && !less(last.left, r.left) && !less(r.left, last.left) &&
                  !less(last.right, r.right) && !less(r.right, last.right);
      if (same) {
        ++last.multiplicity;
        continue;
      }
    }
    out.terms.push_back({r.sign, std::move(r.left), std::move(r.right), 1});
  }
  // presentation convention: the first term is the reference and reads +1
  if (!out.terms.empty() && out.terms[0].sign < 0)
    for (auto& t : out.terms) t.sign = -t.sign;
  return out;
}

}  // namespace sharbly
