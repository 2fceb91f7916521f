#ifndef ZP3_GROUP_HPP
#define ZP3_GROUP_HPP

#include <array>
#include <string>
#include <vector>

#include "zp3/cyclo.hpp"

namespace zp3 {

/// G = Z_p x| Z_q = <c, d : c^p = d^q = 1, d c d^-1 = c^r>.
/// q is kept in the data model but everything downstream targets q = 3.
struct GroupSpec {
  long p;
  long q = 3;
  long r;

  GroupSpec(long p, long r, long q = 3);
  long order() const { return p * q; }
};

/// Smallest r > 1 of multiplicative order 3 mod p; requires 3 | p-1.
long find_r(long p);

/// The l = (p-1)/3 orbits of multiplication by r on Z_p \ {0},
/// each as (a, ra, r^2 a) with a its smallest member, sorted by a.
std::vector<std::array<long, 3>> orbits(long p, long r);

struct IrreducibleLabel {
  enum Kind { OneDim, Induced };
  Kind kind;
  long index;  // OneDim: j in {0,1,2} (d acts by omega^j); Induced: i in 1..l

  bool operator==(const IrreducibleLabel&) const = default;
  std::string str() const;
};

/// Ordered multiset of irreducible summands.
struct ModuleSpec {
  std::vector<std::pair<IrreducibleLabel, int>> summands;

  /// Grammar: SPEC := TERM ("+" TERM)*, TERM := [INT "*"] LABEL,
  /// LABEL := "U0" | "U1" | "U2" | "V" INT. Whitespace ignored.
  static ModuleSpec parse(const std::string& text);
  std::string str() const;
  long dimension() const;
};

struct Variable {
  int index;
  IrreducibleLabel label;
  int copy;         // which instance of this label (1-based)
  int instance;     // global instance index (one per summand copy)
  long weight;      // theta in Z_p; 0 for 1-dim variables
  int b_scalar_exp; // j: d fixes a 1-dim variable up to omega^j; 0 for induced
  int orbit_pos;    // 0..2 within an induced instance; 0 for 1-dim
  std::string name;
};

/// Group element c^{a_exp} d^{b_exp}.
struct GroupElement {
  long a_exp;  // mod p
  int b_exp;   // mod 3
  bool operator==(const GroupElement&) const = default;
};

/// x^g = zeta_p^{zeta_p_exp} * omega^{omega_exp} * (variable var).
struct VarImage {
  int var;
  long zeta_p_exp;
  int omega_exp;
};

class VariableTable {
 public:
  VariableTable(const GroupSpec& g, const ModuleSpec& m);

  const GroupSpec& group() const { return g_; }
  const ModuleSpec& module_spec() const { return m_; }
  const std::vector<Variable>& vars() const { return vars_; }
  const Variable& var(int i) const { return vars_.at(i); }
  int size() const { return (int)vars_.size(); }
  int instance_count() const { return instances_; }

  /// Right action on variables: x_i^{c^a d^b}.
  VarImage act_variable(GroupElement g_elem, int var_index) const;

  GroupElement mul(GroupElement a, GroupElement b) const;  // group law
  GroupElement inv(GroupElement a) const;
  std::vector<GroupElement> all_elements() const;          // all 3p, deterministic order

 private:
  GroupSpec g_;
  ModuleSpec m_;
  std::vector<Variable> vars_;
  int instances_;
};

}  // namespace zp3

#endif
