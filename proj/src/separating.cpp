#include "zp3/separating.hpp"

#include <array>
#include <cctype>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace zp3 {

namespace {

long now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

std::string element_str(GroupElement g) {
  std::ostringstream os;
  os << "c^" << g.a_exp << "*d^" << g.b_exp;
  return os.str();
}

}  // namespace

bool Point::operator==(const Point& o) const {
  if (coords.size() != o.coords.size()) return false;
  for (size_t i = 0; i < coords.size(); i++)
    if (coords[i] != o.coords[i]) return false;
  return true;
}

std::string Point::str() const {
  std::string s = "(";
  for (size_t i = 0; i < coords.size(); i++) {
    if (i) s += ",";
    s += coords[i].str();
  }
  return s + ")";
}

Point parse_point(const std::string& text) {
  Point pt;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) pos++;
  };
  auto parse_int = [&]() -> long {
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) pos++;
    while (pos < text.size() && std::isdigit((unsigned char)text[pos])) pos++;
    if (pos == start || (pos == start + 1 && !std::isdigit((unsigned char)text[start])))
      throw std::invalid_argument("point: expected integer at position " + std::to_string(start) +
                                  " in '" + text + "'");
    return std::stol(text.substr(start, pos - start));
  };
  while (true) {
    skip_ws();
    long mult = 1;
    bool have_mult = false;
    if (pos < text.size() && text[pos] != 'w') {
      mult = parse_int();
      have_mult = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        pos++;
        skip_ws();
      }
    }
    Cyc value(mult);
    if (pos < text.size() && text[pos] == 'w') {
      pos++;
      long e = 1;
      if (pos < text.size() && text[pos] == '^') {
        pos++;
        e = parse_int();
      }
      value = value * Cyc::omega().pow(e);
    } else if (!have_mult) {
      throw std::invalid_argument("point: expected coordinate at position " + std::to_string(pos) +
                                  " in '" + text + "'");
    }
    pt.coords.push_back(value);
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != ',')
      throw std::invalid_argument("point: expected ',' at position " + std::to_string(pos) +
                                  " in '" + text + "'");
    pos++;
  }
  return pt;
}

Point act_point(const VariableTable& vt, GroupElement g, const Point& v) {
  if ((int)v.coords.size() != vt.size())
    throw std::invalid_argument("act_point: dimension mismatch");
  long p = vt.group().p;
  Point out;
  out.coords.resize(v.coords.size());
  // x_i(g.v) = x_i^g(v): pull the variable image back to the coordinates.
  for (int i = 0; i < vt.size(); i++) {
    VarImage im = vt.act_variable(g, i);
    // zeta_p^z omega^w = zeta_3p^(3z + pw); build at the common conductor.
    Cyc s = Cyc::zeta(3 * p).pow(3 * im.zeta_p_exp + p * im.omega_exp);
    out.coords[i] = s * v.coords[im.var];
  }
  return out;
}

std::optional<GroupElement> same_orbit(const VariableTable& vt, const Point& v1, const Point& v2) {
  if (v1.coords.size() != v2.coords.size())
    throw std::invalid_argument("same_orbit: dimension mismatch");
  for (GroupElement g : vt.all_elements())
    if (act_point(vt, g, v1) == v2) return g;
  return std::nullopt;
}

Cyc evaluate(const VariableTable& vt, const Poly& f, const Point& v) {
  if ((int)v.coords.size() != vt.size())
    throw std::invalid_argument("evaluate: dimension mismatch");
  Cyc acc(0);
  for (const auto& [m, c] : f.terms()) {
    Cyc t = c;
    for (size_t i = 0; i < m.e.size(); i++)
      if (m.e[i] > 0) t = t * v.coords[i].pow(m.e[i]);
    acc = acc + t;
  }
  return acc;
}

PointEvaluator::PointEvaluator(const VariableTable& vt, Point v) : vt_(vt), v_(std::move(v)) {
  if ((int)v_.coords.size() != vt_.size())
    throw std::invalid_argument("PointEvaluator: dimension mismatch");
}

Cyc PointEvaluator::eval_monomial(const Monomial& m) {
  auto it = cache_.find(m);
  if (it != cache_.end()) return it->second;
  Cyc t(1);
  for (size_t i = 0; i < m.e.size(); i++)
    if (m.e[i] > 0) t = t * v_.coords[i].pow(m.e[i]);
  cache_.emplace(m, t);
  return t;
}

Cyc PointEvaluator::eval(const Poly& f) {
  Cyc acc(0);
  for (const auto& [m, c] : f.terms()) acc = acc + c * eval_monomial(m);
  return acc;
}

SeparationCertificate separate_pair(const InvariantRing& ring, const Point& v1, const Point& v2,
                                    int d_max) {
  const VariableTable& vt = ring.table();
  SeparationCertificate cert;
  cert.d_max_searched = d_max;
  if (auto g = same_orbit(vt, v1, v2)) {
    cert.kind = SeparationCertificate::SameOrbit;
    cert.witness = *g;
    return cert;
  }
  PointEvaluator e1(vt, v1), e2(vt, v2);
  for (int d = 1; d <= d_max; d++) {
    for (const Block& b : ring.blocks_of_degree(d)) {
      for (const Poly& f : ring.R_basis(b)) {
        Cyc a = e1.eval(f), bb = e2.eval(f);
        if (a != bb) {
          cert.kind = SeparationCertificate::Separated;
          cert.separator = f;
          cert.degree = d;
          cert.value1 = a;
          cert.value2 = bb;
          return cert;
        }
      }
    }
  }
  cert.kind = SeparationCertificate::Inconclusive;
  return cert;
}

VerificationReport verify_sep_lower(long p) {
  long t0 = now_ms();
  GroupSpec g(p, find_r(p));
  ModuleSpec m = ModuleSpec::parse("U1+V1");
  InvariantRing ring(g, m);
  const VariableTable& vt = ring.table();

  Point v1 = parse_point("1,1,0,0");
  Point v2 = parse_point("w,1,0,0");

  VerificationReport rep;
  rep.statement = "sep-lower";
  rep.params = {{"p", std::to_string(p)},
                {"module", "U1+V1"},
                {"v1", v1.str()},
                {"v2", v2.str()}};
  rep.window_lo = 1;
  rep.window_hi = (int)p + 1;
  rep.verdict = "PASS";

  // All invariants of degree <= p take the same value at both points.
  PointEvaluator e1(vt, v1), e2(vt, v2);
  for (int d = 1; d <= (int)p; d++) {
    bool agree = true;
    std::string bad;
    for (const Block& b : ring.blocks_of_degree(d)) {
      for (const Poly& f : ring.R_basis(b)) {
        if (e1.eval(f) != e2.eval(f)) {
          agree = false;
          bad = f.str(vt);
        }
      }
    }
    rep.instances.push_back({"R_" + std::to_string(d), d,
                             agree ? "agree" : "disagree:" + bad, "exact"});
    if (!agree) rep.verdict = "FAIL";
  }

  // Degree p+1 separator: the 1-dim variable times the twisted transfer of
  // x1^p, with the twist cancelling the scalar on the 1-dim variable.
  int j = vt.var(0).b_scalar_exp;
  int chi = (3 - j) % 3;
  Monomial u((int)vt.size()), xp((int)vt.size());
  u.e[0] = 1;
  xp.e[1] = (int)p;
  Poly sep = Poly::monomial(u) * twisted_transfer(vt, Poly::monomial(xp), chi);

  bool invariant = true;
  for (GroupElement h : vt.all_elements())
    if (act_poly(vt, sep, h) != sep) invariant = false;
  Cyc a = evaluate(vt, sep, v1), b = evaluate(vt, sep, v2);
  bool separated = invariant && a == Cyc(1) && b == Cyc::omega() && a != b;
  rep.instances.push_back({sep.str(vt), (int)p + 1,
                           separated ? "separates" : "does-not-separate", "exact"});
  rep.params.push_back({"value1", a.str()});
  rep.params.push_back({"value2", b.str()});
  if (!separated) rep.verdict = "FAIL";

  rep.timing_ms = now_ms() - t0;
  return rep;
}

VerificationReport verify_sep_upper_random(long p, int trials, unsigned long seed) {
  long t0 = now_ms();
  // Multiplicity-free module: every irreducible exactly once.
  std::string mspec = "U0+U1+U2+" + full_induced_module(p);
  GroupSpec g(p, find_r(p));
  ModuleSpec m = ModuleSpec::parse(mspec);
  InvariantRing ring(g, m);
  const VariableTable& vt = ring.table();
  int n = vt.size();
  int d_max = (int)p + 1;

  VerificationReport rep;
  rep.statement = "sep-upper";
  rep.params = {{"p", std::to_string(p)},
                {"module", mspec},
                {"trials", std::to_string(trials)},
                {"seed", std::to_string(seed)}};
  rep.window_lo = 1;
  rep.window_hi = d_max;
  rep.verdict = "PASS";

  auto record = [&](const std::string& name, const SeparationCertificate& c) {
    switch (c.kind) {
      case SeparationCertificate::SameOrbit:
        rep.instances.push_back({name, 0, "same-orbit:" + element_str(c.witness), "exact"});
        break;
      case SeparationCertificate::Separated:
        rep.instances.push_back({name, c.degree, "separated", "exact"});
        break;
      case SeparationCertificate::Inconclusive:
        rep.instances.push_back({name, d_max, "not-separated", "exact"});
        rep.verdict = "FAIL";
        break;
    }
  };

  // Structured pairs. Base point: all 1-dim coordinates 1, every induced
  // instance at (1,0,0); its stabilizer sits inside A.
  Point base;
  base.coords.assign(n, Cyc(0));
  for (int i = 0; i < n; i++) {
    const Variable& v = vt.var(i);
    if (v.label.kind == IrreducibleLabel::OneDim || v.orbit_pos == 0) base.coords[i] = Cyc(1);
  }
  // Same orbit: a translate of the base point must be recognized.
  record("orbit-translate", separate_pair(ring, base, act_point(vt, {1, 1}, base), d_max));
  // Twisting one nontrivial 1-dim coordinate leaves the G-orbit.
  for (int i = 0; i < n; i++) {
    const Variable& v = vt.var(i);
    if (v.label.kind != IrreducibleLabel::OneDim || v.b_scalar_exp == 0) continue;
    Point twisted = base;
    twisted.coords[i] = Cyc::omega();
    record("twist-" + v.name, separate_pair(ring, base, twisted, d_max));
  }

  for (int t = 0; t < trials; t++) {
    std::mt19937_64 rng(seed + (unsigned long)t);
    std::uniform_int_distribution<int> coord(-2, 2);
    Point a, b;
    a.coords.reserve(n);
    b.coords.reserve(n);
    for (int i = 0; i < n; i++) a.coords.push_back(Cyc((long)coord(rng)));
    for (int i = 0; i < n; i++) b.coords.push_back(Cyc((long)coord(rng)));
    if (a == b) continue;  // identical points carry no information
    record("trial-" + std::to_string(t), separate_pair(ring, a, b, d_max));
  }

  rep.timing_ms = now_ms() - t0;
  return rep;
}

Poly relative_invariant_at(const VariableTable& vt, const Point& v, int chi_exponent,
                           bool full_group_sum) {
  int j = ((chi_exponent % 3) + 3) % 3;
  // Precondition: the stabilizer must lie in the kernel of chi.
  for (GroupElement g : vt.all_elements()) {
    if (act_point(vt, g, v) == v && (j * g.b_exp) % 3 != 0)
      throw std::invalid_argument("relative_invariant_at: stabilizer element " + element_str(g) +
                                  " is outside ker(chi)");
  }
  long p = vt.group().p;

  // Transversal of the stabilizer: the first group element reaching each
  // distinct orbit point. chi is constant on each coset (Stab <= ker chi).
  std::vector<std::pair<GroupElement, Point>> orbit;
  for (GroupElement g : vt.all_elements()) {
    Point w = act_point(vt, g, v);
    bool seen = false;
    for (auto& [g2, w2] : orbit) seen = seen || w2 == w;
    if (!seen) orbit.emplace_back(g, w);
  }

  // h interpolates chi on the orbit: a chi-weighted sum of bumps, each a
  // product of affine-linear coordinate functionals vanishing on all other
  // orbit points (greedily one functional per shared coordinate value).
  Poly h;
  for (size_t i = 0; i < orbit.size(); i++) {
    const Point& w = orbit[i].second;
    std::vector<char> killed(orbit.size(), 0);
    killed[i] = 1;
    Poly bump = Poly::monomial(Monomial(vt.size()));
    for (size_t o = 0; o < orbit.size(); o++) {
      if (killed[o]) continue;
      const Point& w2 = orbit[o].second;
      int ci = -1;
      for (int c = 0; c < vt.size() && ci < 0; c++)
        if (w2.coords[c] != w.coords[c]) ci = c;
      // (x_ci - w2[ci]) / (w[ci] - w2[ci]) kills every remaining point
      // sharing that coordinate value
      Poly lin;
      Monomial xm(vt.size());
      xm.e[ci] = 1;
      lin.add_term(xm, Cyc(1));
      if (!w2.coords[ci].is_zero()) lin.add_term(Monomial(vt.size()), -w2.coords[ci]);
      bump = bump * lin.scaled((w.coords[ci] - w2.coords[ci]).inverse());
      for (size_t o2 = o; o2 < orbit.size(); o2++)
        if (orbit[o2].second.coords[ci] == w2.coords[ci]) killed[o2] = 1;
    }
    h = h + bump.scaled(Cyc::omega().pow((long)j * orbit[i].first.b_exp));
  }

  if (full_group_sum) {
    Poly f;
    for (GroupElement g : vt.all_elements())
      f = f + act_poly(vt, h, g).scaled(Cyc::omega().pow(-(long)j * g.b_exp));
    return f;
  }
  // A-average of h keeps the orbit values (the orbit is A-stable and chi is
  // trivial on A) and feeds the B-sum twisted transfer; the value at v is
  // then |B| = 3, the full-group constant |G| divided by p.
  Poly H;
  for (long a = 0; a < p; a++) H = H + act_poly(vt, h, GroupElement{a, 0});
  H = H.scaled(Cyc(Rat(1, (unsigned long)p)));
  return twisted_transfer(vt, H, j);
}

}  // namespace zp3
