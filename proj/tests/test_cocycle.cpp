#include <doctest.h>

#include <random>

#include "sharbly/cocycle.hpp"
#include "sharbly/named.hpp"
#include "test_util.hpp"

using namespace sharbly;
using namespace sharbly::testutil;

namespace {

bool key_eq(const CanonicalKey& a, const CanonicalKey& b) {
  CanonicalKeyLess less;
  return !less(a, b) && !less(b, a);
}

EvaluatorPtr mu3x(int k) {   // k-fold product of the SL3 volume cocycle
  EvaluatorPtr m = volume_cocycle(3);
  for (int j = 1; j < k; ++j) m = product(volume_cocycle(3), m);
  return m;
}

EvaluatorPtr mu3k1(int k) {  // mu3 x ... x mu3 x mu1 with k volume factors
  EvaluatorPtr m = mu_trivial();
  for (int j = 0; j < k; ++j) m = product(volume_cocycle(3), m);
  return m;
}

Col rand_primitive(std::mt19937_64& rng, int n, long mag) {
  for (;;) {
    Col v = random_col(rng, n, mag);
    if (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; })) continue;
    return primitive_normalize(v);
  }
}

// pairwise independent primitive columns (no two on a common ray)
std::vector<Col> rand_rays(std::mt19937_64& rng, int n, int count, long mag) {
  std::vector<Col> out;
  while (static_cast<int>(out.size()) < count) {
    Col v = rand_primitive(rng, n, mag);
    bool dup = false;
    for (const Col& w : out) dup = dup || w == v;
    if (!dup) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

TEST_CASE("trivial cosharbly evaluates to one on nonzero columns") {
  auto mu1 = mu_trivial();
  CHECK(mu1->c() == 1);
  CHECK(mu1->degree() == 0);
  CHECK(mu1->arity() == 1);
  CHECK(parity_of_cosharbly(mu1) == Parity::even);

  Value v = mu1->evaluate({Col{Int(1)}});
  CHECK(v.exact);
  CHECK(v.exact_value == 1);
  CHECK(mu1->evaluate({Col{Int(-7)}}).exact_value == 1);
  CHECK(v.certified_sign() == 1);

  CHECK_THROWS_WITH(mu1->evaluate({Col{Int(0)}}), "zero column");
  CHECK_THROWS_WITH(mu1->evaluate({Col{Int(1)}, Col{Int(2)}}), "wrong arity");

  Value p = pair(mu1, z1());
  CHECK(p.exact);
  CHECK(p.exact_value == 1);
  CHECK_THROWS_WITH((void)pair(mu1, z2()), "wrong arity");
}

TEST_CASE("volume cocycle vanishes exactly on degenerate tuples") {
  auto mu2 = volume_cocycle(2);
  CHECK(mu2->arity() == 3);
  CHECK(parity_of_cosharbly(mu2) == Parity::odd);
  CHECK(parity_of_cosharbly(volume_cocycle(3)) == Parity::even);
  CHECK_THROWS(volume_cocycle(4));

  // repeated ray after primitive normalization
  Value v = mu2->evaluate({C({1, 0}), C({2, 0}), C({0, 1})});
  CHECK(v.exact);
  CHECK(v.exact_value == 0);
  CHECK(v.zero_certified());

  // non-spanning columns
  Value w = mu2->evaluate({C({1, 0}), C({2, 0}), C({3, 0})});
  CHECK(w.exact);
  CHECK(w.exact_value == 0);

  CHECK_THROWS_WITH(mu2->evaluate({C({1, 0}), C({0, 0}), C({0, 1})}), "zero column");
  CHECK_THROWS_WITH(mu2->evaluate({C({1, 0}), C({0, 1})}), "wrong arity");
  CHECK_THROWS_WITH(mu2->evaluate({C({1, 0, 0}), C({0, 1, 0}), C({0, 0, 1})}), "wrong arity");
}

TEST_CASE("every independent triple carries the same SL2 volume magnitude") {
  auto mu2 = volume_cocycle(2);
  Value base = pair(mu2, z2());
  CHECK_FALSE(base.exact);
  CHECK(base.nonzero_certified());
  CHECK(base.numeric.magnitude_lb > 0);

  std::mt19937_64 rng(2024);
  int done = 0;
  while (done < 8) {
    auto cols = rand_rays(rng, 2, 3, 4);
    Value v = mu2->evaluate(cols);
    if (v.exact) continue;   // hit a dependent triple, value exactly zero
    ++done;
    CHECK(v.nonzero_certified());
    // the ideal triangle law: equal magnitudes within combined bounds
    CHECK(std::abs(std::abs(v.numeric.estimate) - std::abs(base.numeric.estimate)) <=
          v.numeric.error + base.numeric.error);
    // and the certified part never exceeds the other interval's ceiling
    CHECK(v.numeric.magnitude_lb <=
          std::abs(base.numeric.estimate) + base.numeric.error + 1e-9);
  }

  // mirroring the first coordinate flips the sign
  auto cols = z2().terms.begin()->first.cols;
  std::vector<Col> mirrored;
  for (Col v : cols) {
    v[0] = -v[0];
    mirrored.push_back(v);
  }
  Value m = mu2->evaluate(mirrored);
  CHECK(base.certified_sign() * m.certified_sign() == -1);
  CHECK(std::abs(base.numeric.estimate + m.numeric.estimate) <=
        base.numeric.error + m.numeric.error);
}

TEST_CASE("volume values are antisymmetric, scale-free, and SL-invariant") {
  std::mt19937_64 rng(77);
  for (int c : {2, 3}) {
    auto mu = volume_cocycle(c);
    std::vector<Col> cols =
        c == 2 ? z2().terms.begin()->first.cols : z3().terms.begin()->first.cols;

    // swapping two columns negates the value
    std::vector<Col> swapped = cols;
    std::swap(swapped[0], swapped[2]);
    Value a = mu->evaluate(cols), b = mu->evaluate(swapped);
    CHECK(a.certified_sign() * b.certified_sign() == -1);
    CHECK(std::abs(a.numeric.estimate + b.numeric.estimate) <=
          a.numeric.error + b.numeric.error);

    // scaling a column is invisible after primitive normalization
    std::vector<Col> scaled = cols;
    for (Int& x : scaled[1]) x *= -3;
    Value s = mu->evaluate(scaled);
    CHECK(s.numeric.estimate == a.numeric.estimate);
    CHECK(s.numeric.error == a.numeric.error);

    // an SL_c(Z) change of basis preserves sign exactly and value within bounds
    for (int trial = 0; trial < 4; ++trial) {
      IntMatrix g = random_sl(rng, c, 6, 2);
      std::vector<Col> moved;
      for (const Col& v : cols) moved.push_back(mat_mul(g, v));
      Value t = mu->evaluate(moved);
      CHECK(t.certified_sign() == a.certified_sign());
      CHECK(std::abs(t.numeric.estimate - a.numeric.estimate) <=
            t.numeric.error + a.numeric.error);
    }

    // diag(-1,1,..) matches the parity: odd for c=2, even for c=3
    std::vector<Col> neg = cols;
    for (Col& v : neg) v[0] = -v[0];
    Value nv = mu->evaluate(neg);
    CHECK(nv.certified_sign() == (c == 2 ? -a.certified_sign() : a.certified_sign()));
  }
}

TEST_CASE("alternating face sums of volume values vanish within bounds") {
  std::mt19937_64 rng(1311);
  EvalOptions fast;
  fast.cells = 6000;
  for (int c : {2, 3}) {
    auto mu = volume_cocycle(c);
    int d = c * (c + 1) / 2;
    for (int trial = 0; trial < (c == 2 ? 10 : 4); ++trial) {
      auto tuple = rand_rays(rng, c, d + 1, 3);
      double est = 0, err = 0;
      for (int i = 0; i <= d; ++i) {
        std::vector<Col> face;
        for (int j = 0; j <= d; ++j)
          if (j != i) face.push_back(tuple[j]);
        Value v = mu->evaluate(face, fast);
        double s = i % 2 == 0 ? 1.0 : -1.0;
        est += s * v.as_double();
        err += v.error_bound();
      }
      CHECK(std::abs(est) <= err + 1e-9);
    }
  }
}

TEST_CASE("deterministic bounds and Monte-Carlo agree on the truncated integral") {
  auto cc2 = volume_cross_check(2, z2().terms.begin()->first.cols);
  CHECK(cc2.overlap);
  CHECK(cc2.quad_lo <= cc2.quad_hi);
  CHECK(cc2.samples > 0);

  auto cc3 = volume_cross_check(3, z3().terms.begin()->first.cols);
  CHECK(cc3.overlap);

  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 3; ++trial) {
    auto cols = rand_rays(rng, 2, 3, 4);
    if (rank(IntMatrix::from_cols(2, cols)) < 2) continue;
    CHECK(volume_cross_check(2, cols).overlap);
  }
  CHECK_THROWS(volume_cross_check(2, {C({1, 0}), C({2, 0}), C({3, 0})}));
}

TEST_CASE("mu3 pairs strictly positively with z3") {
  Value v = pair(volume_cocycle(3), z3());
  CHECK_FALSE(v.exact);
  CHECK(v.numeric.estimate > 0);
  CHECK(v.numeric.magnitude_lb > 0);
  CHECK(v.nonzero_certified());
  CHECK(v.certified_sign() == 1);
  CHECK(v.numeric.work > 0);
  CHECK_FALSE(v.numeric.method.empty());

  // deterministic for fixed options, tighter certified bound with more cells
  Value again = pair(volume_cocycle(3), z3());
  CHECK(again.numeric.estimate == v.numeric.estimate);
  EvalOptions big;
  big.cells = 80000;
  Value refined = pair(volume_cocycle(3), z3(), big);
  CHECK(refined.numeric.magnitude_lb >= v.numeric.magnitude_lb);
  CHECK(refined.numeric.error <= v.numeric.error);
}

TEST_CASE("products require matching parity and compose arity") {
  CHECK_THROWS_WITH((void)product(volume_cocycle(2), volume_cocycle(3)), "parity mismatch");
  CHECK_THROWS_WITH((void)product(mu_trivial(), volume_cocycle(2)), "parity mismatch");

  auto mu4 = product(volume_cocycle(3), mu_trivial());
  CHECK(mu4->c() == 4);
  CHECK(mu4->degree() == 3);
  CHECK(mu4->arity() == 7);
  CHECK(parity_of_cosharbly(mu4) == Parity::even);

  auto odd = product(volume_cocycle(2), volume_cocycle(2));
  CHECK(odd->c() == 4);
  CHECK(odd->degree() == 2);
  CHECK(parity_of_cosharbly(odd) == Parity::odd);
}

TEST_CASE("product values track their factors on composed cycles") {
  auto mu3 = volume_cocycle(3);
  Value t = pair(mu3, z3());

  Value v4 = pair(product(mu3, mu_trivial()), z4());
  CHECK(v4.nonzero_certified());
  CHECK(v4.certified_sign() == t.certified_sign());
  CHECK(std::abs(v4.as_double() - t.as_double()) <= v4.error_bound() + t.error_bound());

  Value v33 = pair(product(mu3, mu3), compose(z3(), z3()));
  CHECK(v33.nonzero_certified());
  // two identical terms, each certified at least the product of factor bounds
  CHECK(v33.numeric.magnitude_lb >=
        2 * t.numeric.magnitude_lb * t.numeric.magnitude_lb - 1e-9);

  // no pliable subset at all: the empty sum is exactly zero
  std::vector<Col> generic = {C({1, 0, 0, 0}), C({0, 1, 0, 0}), C({0, 0, 1, 0}),
                              C({0, 0, 0, 1}), C({1, 1, 1, 1}), C({1, 2, 4, 8}),
                              C({1, 3, 9, 27})};
  Value empty = product(mu3, mu_trivial())->evaluate(generic);
  CHECK(empty.exact);
  CHECK(empty.exact_value == 0);

  // non-spanning symbols vanish before any enumeration
  std::vector<Col> flat = {C({1, 0, 0, 0}), C({0, 1, 0, 0}), C({1, 1, 0, 0}),
                           C({1, 2, 0, 0}), C({2, 1, 0, 0}), C({3, 1, 0, 0}),
                           C({1, 3, 0, 0})};
  Value ns = product(mu3, mu_trivial())->evaluate(flat);
  CHECK(ns.exact);
  CHECK(ns.exact_value == 0);

  // every pliable subset leaves a zero projected column: all terms drop
  auto odd2 = product(volume_cocycle(2), volume_cocycle(2));
  std::vector<Col> dropped = {C({1, 0, 0, 0}), C({0, 1, 0, 0}), C({1, 1, 0, 0}),
                              C({1, -1, 0, 0}), C({0, 0, 1, 0}), C({0, 0, 0, 1})};
  Value dr = odd2->evaluate(dropped);
  CHECK(dr.exact);
  CHECK(dr.exact_value == 0);
}

TEST_CASE("product evaluation does not depend on the plying choice") {
  std::mt19937_64 rng(424242);
  auto mu11 = product(mu_trivial(), mu_trivial());

  // exact path: every replying seed must reproduce the same rational
  for (int trial = 0; trial < 30; ++trial) {
    Col v = rand_primitive(rng, 2, 5), w = rand_primitive(rng, 2, 5);
    if (rank(IntMatrix::from_cols(2, {v, w})) < 2) continue;
    Value base = mu11->evaluate({v, w});
    CHECK(base.exact);
    for (unsigned long seed : {1UL, 2UL, 3UL}) {
      EvalOptions o;
      o.replying_seed = seed;
      Value again = mu11->evaluate({v, w}, o);
      CHECK(again.exact);
      CHECK(again.exact_value == base.exact_value);
    }
  }

  // numeric path: estimates agree within combined bounds under replying
  auto odd2 = product(volume_cocycle(2), volume_cocycle(2));
  std::vector<Col> blocks = {C({1, 0, 0, 0}), C({0, 1, 0, 0}), C({1, 1, 0, 0}),
                             C({0, 0, 1, 0}), C({0, 0, 0, 1}), C({0, 0, 1, 1})};
  EvalOptions fast;
  fast.cells = 4000;
  for (int trial = 0; trial < 12; ++trial) {
    IntMatrix g = random_sl(rng, 4, 8, 2);
    std::vector<Col> cols;
    for (const Col& v : blocks) cols.push_back(mat_mul(g, v));
    Value plain = odd2->evaluate(cols, fast);
    EvalOptions twisted = fast;
    twisted.replying_seed = 1000 + trial;
    Value moved = odd2->evaluate(cols, twisted);
    CHECK(std::abs(plain.as_double() - moved.as_double()) <=
          plain.error_bound() + moved.error_bound() + 1e-9);
    if (plain.nonzero_certified() && moved.nonzero_certified())
      CHECK(plain.certified_sign() == moved.certified_sign());
  }

  // z4 through a twisted plying still certifies the same positive value
  auto mu4 = product(volume_cocycle(3), mu_trivial());
  Value plain = pair(mu4, z4());
  EvalOptions tw;
  tw.replying_seed = 99;
  Value moved = pair(mu4, z4(), tw);
  CHECK(plain.certified_sign() == moved.certified_sign());
  CHECK(std::abs(plain.as_double() - moved.as_double()) <=
        plain.error_bound() + moved.error_bound());
}

TEST_CASE("symbolic pairings certify the k+1 identical positive terms") {
  auto mu3 = volume_cocycle(3);
  CanonicalKey z3key = canonical_form(z3().terms.begin()->first);
  CanonicalKey z1key = canonical_form(z1().terms.begin()->first);

  auto p41 = pair_symbolic(mu3, mu_trivial(), z4());
  REQUIRE(p41.terms.size() == 1);
  CHECK(p41.all_identical());
  CHECK(p41.terms[0].sign == 1);
  CHECK(p41.terms[0].multiplicity == 1);
  CHECK(p41.total_multiplicity() == 1);
  CHECK(key_eq(p41.terms[0].left, z3key));
  CHECK(key_eq(p41.terms[0].right, z1key));

  auto p33 = pair_symbolic(mu3, mu3, compose(z3(), z3()));
  REQUIRE(p33.terms.size() == 1);
  CHECK(p33.terms[0].sign == 1);
  CHECK(p33.terms[0].multiplicity == 2);
  CHECK(key_eq(p33.terms[0].left, z3key));
  CHECK(key_eq(p33.terms[0].right, z3key));

  for (int k = 1; k <= 3; ++k) {
    auto p = pair_symbolic(mu3, mu3x(k), z3k(k + 1));
    REQUIRE(p.terms.size() == 1);
    CHECK(p.terms[0].sign == 1);
    CHECK(p.terms[0].multiplicity == k + 1);
    CHECK(key_eq(p.terms[0].left, z3key));
    CHECK(key_eq(p.terms[0].right, canonical_form(z3k(k).terms.begin()->first)));

    auto q = pair_symbolic(mu3, mu3k1(k), z3k1(k + 1));
    REQUIRE(q.terms.size() == 1);
    CHECK(q.terms[0].sign == 1);
    CHECK(q.terms[0].multiplicity == k + 1);
    CHECK(key_eq(q.terms[0].left, z3key));
    CHECK(key_eq(q.terms[0].right, canonical_form(z3k1(k).terms.begin()->first)));
  }
}

TEST_CASE("symbolic pairing rejects bad inputs and drops dead terms") {
  auto mu2 = volume_cocycle(2);

  CHECK_THROWS_WITH((void)pair_symbolic(mu2, mu2, z3()), "wrong arity");

  Chain doubled = z4() + z4();
  CHECK_THROWS_WITH((void)pair_symbolic(volume_cocycle(3), mu_trivial(), doubled),
                    "pair_symbolic requires unit coefficients");

  // every pliable subset projects the leftover plane column to zero
  Chain dead = make_basic(4, {C({1, 0, 0, 0}), C({0, 1, 0, 0}), C({1, 1, 0, 0}),
                              C({1, -1, 0, 0}), C({0, 0, 1, 0}), C({0, 0, 0, 1})});
  auto p = pair_symbolic(mu2, mu2, dead);
  CHECK(p.terms.empty());
  CHECK(p.total_multiplicity() == 0);
  CHECK_FALSE(p.all_identical());
}

TEST_CASE("named cycle builders match their defining matrices") {
  CHECK(z1().n == 1);
  CHECK(z1().degree == 0);
  CHECK(z2().n == 2);
  CHECK(z2().degree == 1);
  CHECK(z3().degree == 3);
  CHECK((build_named("z4") - compose(z3(), z1())).is_zero());
  CHECK((build_named("z3k(1)") - z3()).is_zero());
  CHECK((build_named("z3k(2)") - compose(z3(), z3())).is_zero());
  CHECK((build_named("z3k1(1)") - z4()).is_zero());
  CHECK((build_named("z3k1(2)") - compose(z3(), z4())).is_zero());

  Chain two = z3k(2);
  CHECK(two.n == 6);
  CHECK(two.degree == 6);
  CHECK(two.terms.begin()->first.cols.size() == 12);
  Chain seven = z3k1(2);
  CHECK(seven.n == 7);
  CHECK(seven.terms.begin()->first.cols.size() == 13);

  CHECK_THROWS(build_named("z5"));
  CHECK_THROWS(build_named("z3k(0)"));
  CHECK_THROWS(build_named("z3k(x)"));
  CHECK_THROWS(build_named(""));
}
