#ifndef ZP3_SEPARATING_HPP
#define ZP3_SEPARATING_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zp3/verify.hpp"

namespace zp3 {

/// Point of the module, coordinates over Q(zeta_3p) in the variable order of
/// the VariableTable.
struct Point {
  std::vector<Cyc> coords;

  bool operator==(const Point& o) const;
  std::string str() const;
};

/// Comma-separated coordinates; each is INT, or [INT "*"] "w" ["^" INT]
/// with w the primitive cube root of unity.
Point parse_point(const std::string& text);

/// Left action on points dual to the right action on variables:
/// x_i(g.v) = x_i^g(v).
Point act_point(const VariableTable& vt, GroupElement g, const Point& v);

/// Exhaustive search over all 3p group elements for g with g.v1 = v2.
std::optional<GroupElement> same_orbit(const VariableTable& vt, const Point& v1, const Point& v2);

/// Exact evaluation over Q(zeta_3p).
Cyc evaluate(const VariableTable& vt, const Poly& f, const Point& v);

/// Evaluation with a per-point monomial cache, for sweeping many basis
/// elements against a fixed point.
class PointEvaluator {
 public:
  PointEvaluator(const VariableTable& vt, Point v);
  Cyc eval(const Poly& f);
  const Point& point() const { return v_; }

 private:
  Cyc eval_monomial(const Monomial& m);
  const VariableTable& vt_;
  Point v_;
  std::map<Monomial, Cyc> cache_;
};

struct SeparationCertificate {
  enum Kind { SameOrbit, Separated, Inconclusive } kind;
  GroupElement witness{0, 0};  // SameOrbit
  Poly separator;              // Separated
  int degree = 0;              // degree of the separator
  Cyc value1, value2;
  int d_max_searched = 0;
};

/// Orbit test first; then scans R_d bases for d = 1..d_max for an invariant
/// with distinct values. Inconclusive is an explicit outcome.
SeparationCertificate separate_pair(const InvariantRing& ring, const Point& v1, const Point& v2,
                                    int d_max);

/// Lower bound of the separating degree: on U1+V1, the pair (1,1,0,0) and
/// (w,1,0,0) agrees on every R_d basis element for d <= p and is separated
/// in degree p+1 with values 1 and w.
VerificationReport verify_sep_lower(long p);

/// Upper bound, randomized: on the multiplicity-free module, seeded random
/// pairs plus structured pairs must all be separated in degree <= p+1 or be
/// certified same-orbit.
VerificationReport verify_sep_upper_random(long p, int trials, unsigned long seed);

/// Lemma-style relative invariant: builds an A-invariant h interpolating
/// chi(d^b) at the points d^b.v and twists it. Requires Stab_G(v) <= ker chi.
/// With full_group_sum the sum runs over all 3p elements (value |G| at v);
/// the default B-sum gives value 3.
Poly relative_invariant_at(const VariableTable& vt, const Point& v, int chi_exponent,
                           bool full_group_sum = false);

}  // namespace zp3

#endif
