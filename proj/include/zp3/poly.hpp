#ifndef ZP3_POLY_HPP
#define ZP3_POLY_HPP

#include <map>
#include <string>
#include <vector>

#include "zp3/cyclo.hpp"
#include "zp3/group.hpp"
#include "zp3/zsum.hpp"

namespace zp3 {

/// Exponent vector over a fixed VariableTable.
struct Monomial {
  std::vector<int> e;

  Monomial() = default;
  explicit Monomial(int nvars) : e(nvars, 0) {}

  int degree() const;
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial quotient(const Monomial& o) const;  // *this / o
  bool operator==(const Monomial&) const = default;

  /// Graded lexicographic: degree first, then lex on the exponent vector.
  bool operator<(const Monomial& o) const;

  std::string str(const VariableTable& vt) const;
};

long weight(const VariableTable& vt, const Monomial& m);
ZSequence weight_sequence(const VariableTable& vt, const Monomial& m);

/// Per-instance degree vector (the canonic-factorization degrees).
std::vector<int> instance_degrees(const VariableTable& vt, const Monomial& m);

/// Image of m under d^b together with the omega-power it picks up.
std::pair<Monomial, int> act_monomial_b(const VariableTable& vt, const Monomial& m, int b);

/// Sparse polynomial with Cyc coefficients sharing one conductor.
class Poly {
 public:
  Poly() = default;

  const std::map<Monomial, Cyc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_homogeneous() const;
  int degree() const;  // max term degree; -1 for zero

  void add_term(const Monomial& m, const Cyc& c);
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Cyc& c) const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  static Poly monomial(const Monomial& m, const Cyc& c = Cyc(1));
  std::string str(const VariableTable& vt) const;

 private:
  std::map<Monomial, Cyc> terms_;
};

/// Is every monomial of f fixed by A (zero-weight)?
bool is_A_invariant(const VariableTable& vt, const Poly& f);

/// f^{d^b}, coefficients multiplied by the omega-powers of the action.
Poly act_poly_b(const VariableTable& vt, const Poly& f, int b);

/// Full right action f^g for g = c^a d^b; materializes zeta_p scalars, so
/// coefficients end up in conductor lcm(old, 3p).
Poly act_poly(const VariableTable& vt, const Poly& f, GroupElement g);

/// Relative transfer tau(f) = sum_{b in B} f^b; input must be A-invariant.
Poly transfer(const VariableTable& vt, const Poly& f);

/// B-sum twisted transfer on A-invariant input: sum_j omega^{-j chi} f^{d^j}.
Poly twisted_transfer(const VariableTable& vt, const Poly& f, int chi_exponent);

}  // namespace zp3

#endif
