#include "zp3/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace zp3 {

int Monomial::degree() const { return std::accumulate(e.begin(), e.end(), 0); }

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& o) const {
  Monomial r(*this);
  for (size_t i = 0; i < e.size(); ++i) {
    r.e[i] -= o.e[i];
    if (r.e[i] < 0) throw std::invalid_argument("Monomial::quotient: does not divide");
  }
  return r;
}

bool Monomial::operator<(const Monomial& o) const {
  int da = degree(), db = o.degree();
  if (da != db) return da < db;
  return e < o.e;
}

std::string Monomial::str(const VariableTable& vt) const {
  std::string out;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vt.var((int)i).name;
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

long weight(const VariableTable& vt, const Monomial& m) {
  long p = vt.group().p;
  long w = 0;
  for (size_t i = 0; i < m.e.size(); ++i) w = (w + m.e[i] * vt.var((int)i).weight) % p;
  return w;
}

ZSequence weight_sequence(const VariableTable& vt, const Monomial& m) {
  ZSequence s(vt.group().p);
  for (size_t i = 0; i < m.e.size(); ++i)
    if (m.e[i] > 0) s.add(vt.var((int)i).weight, m.e[i]);
  return s;
}

std::vector<int> instance_degrees(const VariableTable& vt, const Monomial& m) {
  std::vector<int> d(vt.instance_count(), 0);
  for (size_t i = 0; i < m.e.size(); ++i) d[vt.var((int)i).instance] += m.e[i];
  return d;
}

std::pair<Monomial, int> act_monomial_b(const VariableTable& vt, const Monomial& m, int b) {
  Monomial img((int)m.e.size());
  int omega_exp = 0;
  for (size_t i = 0; i < m.e.size(); ++i) {
    if (m.e[i] == 0) continue;
    VarImage vi = vt.act_variable({0, b}, (int)i);
    img.e[vi.var] += m.e[i];
    omega_exp = (omega_exp + vi.omega_exp * m.e[i]) % 3;
  }
  return {img, omega_exp};
}

bool Poly::is_homogeneous() const {
  int d = -1;
  for (auto& [m, c] : terms_) {
    if (d == -1) d = m.degree();
    if (m.degree() != d) return false;
  }
  return true;
}

int Poly::degree() const {
  int d = -1;
  for (auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void Poly::add_term(const Monomial& m, const Cyc& c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(m, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r(*this);
  for (auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r(*this);
  for (auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (auto& [m1, c1] : terms_)
    for (auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
  return r;
}

Poly Poly::scaled(const Cyc& c) const {
  Poly r;
  if (c.is_zero()) return r;
  for (auto& [m, coef] : terms_) r.add_term(m, coef * c);
  return r;
}

Poly Poly::monomial(const Monomial& m, const Cyc& c) {
  Poly r;
  r.add_term(m, c);
  return r;
}

std::string Poly::str(const VariableTable& vt) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << m.str(vt);
  }
  return os.str();
}

bool is_A_invariant(const VariableTable& vt, const Poly& f) {
  for (auto& [m, c] : f.terms())
    if (weight(vt, m) != 0) return false;
  return true;
}

Poly act_poly_b(const VariableTable& vt, const Poly& f, int b) {
  Poly r;
  for (auto& [m, c] : f.terms()) {
    auto [img, w] = act_monomial_b(vt, m, b);
    r.add_term(img, c * Cyc::omega().pow(w));
  }
  return r;
}

Poly act_poly(const VariableTable& vt, const Poly& f, GroupElement g) {
  long p = vt.group().p;
  Cyc zp = Cyc::zeta(3 * p).pow(3);  // zeta_p inside Q(zeta_3p)
  Poly r;
  for (auto& [m, c] : f.terms()) {
    Monomial img((int)m.e.size());
    long zexp = 0;
    int wexp = 0;
    for (size_t i = 0; i < m.e.size(); ++i) {
      if (m.e[i] == 0) continue;
      VarImage vi = vt.act_variable(g, (int)i);
      img.e[vi.var] += m.e[i];
      zexp = (zexp + vi.zeta_p_exp * m.e[i]) % p;
      wexp = (wexp + vi.omega_exp * m.e[i]) % 3;
    }
    r.add_term(img, c * zp.pow(zexp) * Cyc::omega().pow(wexp).embed(3 * p));
  }
  return r;
}

Poly transfer(const VariableTable& vt, const Poly& f) {
  if (!is_A_invariant(vt, f))
    throw std::invalid_argument("transfer: input is not A-invariant");
  Poly r;
  for (int b = 0; b < 3; ++b) r = r + act_poly_b(vt, f, b);
  return r;
}

Poly twisted_transfer(const VariableTable& vt, const Poly& f, int chi_exponent) {
  if (!is_A_invariant(vt, f))
    throw std::invalid_argument("twisted_transfer: input is not A-invariant");
  Poly r;
  for (int b = 0; b < 3; ++b) {
    int inv = ((-chi_exponent * b) % 3 + 3) % 3;  // omega^{-j b}
    r = r + act_poly_b(vt, f, b).scaled(Cyc::omega().pow(inv));
  }
  return r;
}

}  // namespace zp3
