#include "zp3/group.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace zp3 {

namespace {
long mod_pow_l(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

bool is_prime_l(long n) {
  if (n < 2) return false;
  for (long q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}
}  // namespace

GroupSpec::GroupSpec(long p_, long r_, long q_) : p(p_), q(q_), r(r_) {
  if (!is_prime_l(p)) throw std::invalid_argument("GroupSpec: p must be prime");
  if (q != 3) throw std::invalid_argument("GroupSpec: only q = 3 is supported");
  if ((p - 1) % q != 0) throw std::invalid_argument("GroupSpec: q must divide p-1");
  if (r < 2 || r > p - 1) throw std::invalid_argument("GroupSpec: r out of range");
  if (mod_pow_l(r, 3, p) != 1 || r % p == 1)
    throw std::invalid_argument("GroupSpec: r must have order 3 mod p");
}

long find_r(long p) {
  if (!is_prime_l(p) || (p - 1) % 3 != 0)
    throw std::invalid_argument("find_r: need prime p with 3 | p-1");
  for (long r = 2; r < p; ++r)
    if (r * r % p * r % p == 1 && r != 1) return r;
  throw std::logic_error("find_r: no element of order 3 found");
}

std::vector<std::array<long, 3>> orbits(long p, long r) {
  GroupSpec g(p, r);  // validates
  std::vector<std::array<long, 3>> result;
  std::set<long> seen;
  for (long a = 1; a < p; ++a) {
    if (seen.count(a)) continue;
    std::array<long, 3> orb{a, a * r % p, a * r % p * r % p};
    for (long x : orb) seen.insert(x);
    result.push_back(orb);
  }
  return result;
}

std::string IrreducibleLabel::str() const {
  return kind == OneDim ? "U" + std::to_string(index) : "V" + std::to_string(index);
}

ModuleSpec ModuleSpec::parse(const std::string& text) {
  ModuleSpec m;
  std::string s;
  for (char ch : text)
    if (!std::isspace((unsigned char)ch)) s += ch;
  size_t pos = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("ModuleSpec: " + msg + " at position " + std::to_string(pos) +
                                " in '" + text + "'");
  };
  while (pos < s.size()) {
    int mult = 1;
    if (std::isdigit((unsigned char)s[pos])) {
      size_t end;
      mult = std::stoi(s.substr(pos), &end);
      pos += end;
      if (mult < 1) fail("multiplicity must be positive");
      if (pos >= s.size() || s[pos] != '*') fail("expected '*' after multiplicity");
      ++pos;
    }
    if (pos >= s.size() || (s[pos] != 'U' && s[pos] != 'V')) fail("expected label U or V");
    char kind = s[pos++];
    if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail("expected label index");
    size_t end;
    long idx = std::stol(s.substr(pos), &end);
    pos += end;
    if (kind == 'U') {
      if (idx > 2) fail("U index must be 0, 1 or 2");
      m.summands.push_back({{IrreducibleLabel::OneDim, idx}, mult});
    } else {
      if (idx < 1) fail("V index must be >= 1");
      m.summands.push_back({{IrreducibleLabel::Induced, idx}, mult});
    }
    if (pos < s.size()) {
      if (s[pos] != '+') fail("expected '+'");
      ++pos;
      if (pos == s.size()) fail("trailing '+'");
    }
  }
  if (m.summands.empty()) throw std::invalid_argument("ModuleSpec: empty spec");
  return m;
}

std::string ModuleSpec::str() const {
  std::string out;
  for (size_t i = 0; i < summands.size(); ++i) {
    if (i) out += "+";
    if (summands[i].second != 1) out += std::to_string(summands[i].second) + "*";
    out += summands[i].first.str();
  }
  return out;
}

long ModuleSpec::dimension() const {
  long d = 0;
  for (auto& [lab, mult] : summands) d += mult * (lab.kind == IrreducibleLabel::OneDim ? 1 : 3);
  return d;
}

VariableTable::VariableTable(const GroupSpec& g, const ModuleSpec& m) : g_(g), m_(m) {
  auto orbs = orbits(g.p, g.r);
  long l = (g.p - 1) / 3;
  int inst = 0, one_dim_count = 0, induced_count = 0;
  for (auto& [lab, mult] : m.summands) {
    if (lab.kind == IrreducibleLabel::Induced && (lab.index < 1 || lab.index > l))
      throw std::invalid_argument("VariableTable: V" + std::to_string(lab.index) +
                                  " invalid for p = " + std::to_string(g.p));
    for (int copy = 1; copy <= mult; ++copy, ++inst) {
      if (lab.kind == IrreducibleLabel::OneDim) {
        ++one_dim_count;
        Variable v;
        v.index = (int)vars_.size();
        v.label = lab;
        v.copy = copy;
        v.instance = inst;
        v.weight = 0;
        v.b_scalar_exp = (int)lab.index;
        v.orbit_pos = 0;
        v.name = "u" + std::to_string(one_dim_count);
        vars_.push_back(v);
      } else {
        ++induced_count;
        const auto& orb = orbs[lab.index - 1];
        const char* letters = "xyz";
        for (int pos = 0; pos < 3; ++pos) {
          Variable v;
          v.index = (int)vars_.size();
          v.label = lab;
          v.copy = copy;
          v.instance = inst;
          v.weight = orb[pos];
          v.b_scalar_exp = 0;
          v.orbit_pos = pos;
          v.name = std::string(1, letters[pos]) + std::to_string(induced_count);
          vars_.push_back(v);
        }
      }
    }
  }
  instances_ = inst;
}

VarImage VariableTable::act_variable(GroupElement e, int var_index) const {
  const Variable& v = var(var_index);
  long a = ((e.a_exp % g_.p) + g_.p) % g_.p;
  int b = ((e.b_exp % 3) + 3) % 3;
  VarImage img;
  img.zeta_p_exp = v.weight * a % g_.p;
  if (v.label.kind == IrreducibleLabel::OneDim) {
    img.var = var_index;
    img.omega_exp = v.b_scalar_exp * b % 3;
  } else {
    // d sends weight theta to r*theta within the orbit (next position), scalar 1
    img.var = var_index - v.orbit_pos + (v.orbit_pos + b) % 3;
    img.omega_exp = 0;
  }
  return img;
}

GroupElement VariableTable::mul(GroupElement x, GroupElement y) const {
  // (c^a d^b)(c^a' d^b') = c^{a + a' r^b} d^{b + b'}
  long rb = mod_pow_l(g_.r, ((x.b_exp % 3) + 3) % 3, g_.p);
  long a = ((x.a_exp + y.a_exp % g_.p * rb) % g_.p + g_.p) % g_.p;
  return {a, (((x.b_exp + y.b_exp) % 3) + 3) % 3};
}

GroupElement VariableTable::inv(GroupElement x) const {
  int b = ((x.b_exp % 3) + 3) % 3;
  long rb = mod_pow_l(g_.r, (3 - b) % 3, g_.p);
  long a = (g_.p - x.a_exp % g_.p * rb % g_.p) % g_.p;
  return {a, (3 - b) % 3};
}

std::vector<GroupElement> VariableTable::all_elements() const {
  std::vector<GroupElement> out;
  for (long a = 0; a < g_.p; ++a)
    for (int b = 0; b < 3; ++b) out.push_back({a, b});
  return out;
}

}  // namespace zp3
