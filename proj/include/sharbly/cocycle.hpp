#pragma once
// Cosharbly evaluators: the trivial rank-one functional, the volume cocycles
// on SL_2 and SL_3, and the pliable-subset product, plus exact symbolic
// pairings. Numeric values carry a certified magnitude lower bound; sign and
// nonvanishing claims rest on it, never on the heuristic tail estimate.

#include <memory>
#include <string>
#include <vector>

#include "sharbly/coinvariants.hpp"
#include "sharbly/core.hpp"

namespace sharbly {

struct NumericValue {
  double estimate = 0;
  double error = 0;
  double magnitude_lb = 0;   // certified lower bound on |true value|, 0 if none
  std::string method;
  long long work = 0;        // quadrature cells or sample count
};

struct Value {
  bool exact = true;
  Rat exact_value = Rat(0);
  NumericValue numeric;

  static Value of(Rat r) {
    Value v;
    v.exact_value = std::move(r);
    return v;
  }
  static Value of(NumericValue n) {
    Value v;
    v.exact = false;
    v.numeric = std::move(n);
    return v;
  }
  double as_double() const;
  double error_bound() const { return exact ? 0.0 : numeric.error; }
  bool nonzero_certified() const;
  bool zero_certified() const { return exact && exact_value == 0; }
  int certified_sign() const;   // throws "inconclusive value" when undecidable
};

Value value_add(const Value& a, const Value& b);
Value value_mul(const Value& a, const Value& b);
Value value_scale(const Value& a, const Rat& c);

struct EvalOptions {
  long cells = 20000;            // quadrature budget per volume integral
  double tol = 1e-3;             // relative gap target for adaptive refinement
  long mc_samples = 100000;      // Monte-Carlo cross-check budget
  unsigned long seed = 12345;
  int threads = 1;               // ladder rungs run concurrently when > 1;
                                 // results are assembled in order, so the
                                 // output is identical to a serial run
  unsigned long replying_seed = 0;   // nonzero: re-ply every pliable subset by
                                     // a random admissible block matrix; the
                                     // total must not change
};

class CosharblyEvaluator {
 public:
  virtual ~CosharblyEvaluator() = default;

  int c() const { return c_; }
  int degree() const { return degree_; }
  int arity() const { return c_ + degree_; }
  Parity parity() const { return parity_; }

  // columns must number c+degree, live in Q^c, and be nonzero
  Value evaluate(const std::vector<Col>& cols, const EvalOptions& opts = {}) const;

 protected:
  CosharblyEvaluator(int c, int degree, Parity parity)
      : c_(c), degree_(degree), parity_(parity) {}
  virtual Value eval_impl(const std::vector<Col>& cols, const EvalOptions& opts) const = 0;

 private:
  int c_, degree_;
  Parity parity_;
};

using EvaluatorPtr = std::shared_ptr<const CosharblyEvaluator>;

// value 1 on every nonzero rational column; even parity
EvaluatorPtr mu_trivial();

// sign(det P) times the invariant transverse volume of the cone spanned by
// the rank-one forms of the columns, c in {2, 3}; exact 0 when det P = 0;
// parity even iff c is odd
EvaluatorPtr volume_cocycle(int c);

// the pliable-subset product; factors must have equal parity
EvaluatorPtr product(EvaluatorPtr mu, EvaluatorPtr nu);

Parity parity_of_cosharbly(const EvaluatorPtr& mu);

// sum of coefficient * evaluation over the chain's terms
Value pair(const EvaluatorPtr& mu, const Chain& z, const EvalOptions& opts = {});

// deterministic two-sided quadrature bounds and an independent Monte-Carlo
// estimate of the same truncated integral; the intervals must overlap
struct VolumeCrossCheck {
  double delta = 0;
  double quad_lo = 0, quad_hi = 0;
  double mc_estimate = 0, mc_half_width = 0;   // three standard errors
  bool overlap = false;
  long long cells = 0, samples = 0;
};
VolumeCrossCheck volume_cross_check(int c, const std::vector<Col>& cols,
                                    const EvalOptions& opts = {});

// Exact term list of (mu x nu) on z before any numerics: each pliable term's
// left and right arguments reduced to canonical keys. Signs are presented
// relative to the first term, which is normalized to +1. Terms whose left or
// right class vanishes (zero projection, non-spanning, self-negating) are
// dropped; identical tuples merge into the multiplicity.
struct PairingTerm {
  int sign = 1;
  CanonicalKey left, right;
  long multiplicity = 1;
};
struct SymbolicPairing {
  std::vector<PairingTerm> terms;
  long total_multiplicity() const;
  bool all_identical() const;   // one merged term
};
SymbolicPairing pair_symbolic(const EvaluatorPtr& mu, const EvaluatorPtr& nu,
                              const Chain& z, const ReduceOptions& ropts = {});

}  // namespace sharbly
