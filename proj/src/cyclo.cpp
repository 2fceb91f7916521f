#include "zp3/cyclo.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace zp3 {

long euler_phi(long n) {
  long result = n;
  long m = n;
  for (long q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      result -= result / q;
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact division of integer polynomials, remainder must be zero.
std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
  std::vector<Int> quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
  while (num.size() >= den.size()) {
    while (!num.empty() && num.back() == 0) num.pop_back();
    if (num.size() < den.size()) break;
    Int lead = num.back() / den.back();
    size_t shift = num.size() - den.size();
    quot[shift] = lead;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= lead * den[i];
  }
  for (auto& c : num)
    if (c != 0) throw std::logic_error("poly_divide_exact: non-zero remainder");
  return quot;
}

struct FieldData {
  long n;
  long phi;
  std::vector<Int> modulus;            // Phi_n
  std::vector<std::vector<Rat>> xpow;  // x^{phi+k} reduced, k = 0..phi-2
};

const FieldData& field_data(long n) {
  static std::mutex mu;
  static std::map<long, FieldData> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  FieldData fd;
  fd.n = n;
  fd.phi = euler_phi(n);
  fd.modulus = cyclotomic_poly(n);
  // x^phi = -(lower part of Phi_n); higher powers by repeated shift.
  std::vector<Rat> cur(fd.phi, Rat(0));
  for (long i = 0; i < fd.phi; ++i) cur[i] = Rat(-fd.modulus[i]);
  for (long k = 0; k + 1 < fd.phi; ++k) {
    fd.xpow.push_back(cur);
    std::vector<Rat> next(fd.phi, Rat(0));
    Rat top = cur[fd.phi - 1];
    for (long i = fd.phi - 1; i > 0; --i) next[i] = cur[i - 1];
    if (top != 0)
      for (long i = 0; i < fd.phi; ++i) next[i] += top * Rat(-fd.modulus[i]);
    cur = std::move(next);
  }
  auto [pos, ok] = cache.emplace(n, std::move(fd));
  return pos->second;
}

// Reduce a coefficient vector of arbitrary length modulo Phi_n.
std::vector<Rat> reduce_mod(long n, std::vector<Rat> v) {
  const FieldData& fd = field_data(n);
  std::vector<Rat> out(fd.phi, Rat(0));
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    if ((long)k < fd.phi) {
      out[k] += v[k];
    } else {
      const auto& rep = fd.xpow.at(k - fd.phi);
      for (long i = 0; i < fd.phi; ++i) out[i] += v[k] * rep[i];
    }
  }
  return out;
}

}  // namespace

std::vector<Int> cyclotomic_poly(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be positive");
  if (n == 1) return {Int(-1), Int(1)};
  // (x^n - 1) / prod_{d|n, d<n} Phi_d
  std::vector<Int> num(n + 1, Int(0));
  num[0] = -1;
  num[n] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = poly_divide_exact(std::move(num), cyclotomic_poly(d));
  }
  return num;
}

Cyc::Cyc(long conductor, std::vector<Rat> coeffs) : n_(conductor), c_(std::move(coeffs)) {
  long phi = euler_phi(n_);
  if ((long)c_.size() > phi) {
    c_ = reduce_mod(n_, std::move(c_));
  } else {
    c_.resize(phi, Rat(0));
  }
  for (auto& x : c_) x.canonicalize();
}

Cyc Cyc::zeta(long n) {
  if (n < 1) throw std::invalid_argument("zeta: n must be positive");
  if (n == 1) return Cyc(1);
  std::vector<Rat> c(euler_phi(n), Rat(0));
  c[1] = 1;
  return Cyc(n, std::move(c));
}

bool Cyc::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyc::rational_value() const {
  if (!is_rational()) throw std::logic_error("rational_value: not a rational");
  return c_[0];
}

namespace {
// Lift operands with mismatched conductors: rationals promote freely,
// otherwise along divisibility; anything else is an error.
void align(Cyc& a, Cyc& b) {
  if (a.conductor() == b.conductor()) return;
  if (b.conductor() % a.conductor() == 0) {
    a = a.embed(b.conductor());
  } else if (a.conductor() % b.conductor() == 0) {
    b = b.embed(a.conductor());
  } else {
    throw std::invalid_argument("Cyc: conductor mismatch (" + std::to_string(a.conductor()) +
                                " vs " + std::to_string(b.conductor()) + "); embed first");
  }
}
}  // namespace

Cyc Cyc::operator-() const {
  std::vector<Rat> c(c_);
  for (auto& x : c) x = -x;
  return Cyc(n_, std::move(c));
}

Cyc Cyc::operator+(const Cyc& o) const {
  Cyc a = *this, b = o;
  align(a, b);
  std::vector<Rat> c(a.c_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return Cyc(a.n_, std::move(c));
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
  Cyc a = *this, b = o;
  align(a, b);
  std::vector<Rat> prod(a.c_.size() + b.c_.size(), Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Cyc(a.n_, reduce_mod(a.n_, std::move(prod)));
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw std::domain_error("Cyc: division by zero");
  // Extended Euclid in Q[x] against Phi_n.
  const FieldData& fd = field_data(n_);
  std::vector<Rat> r0(fd.modulus.size());
  for (size_t i = 0; i < fd.modulus.size(); ++i) r0[i] = Rat(fd.modulus[i]);
  std::vector<Rat> r1(c_);
  while (!r1.empty() && r1.back() == 0) r1.pop_back();
  std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};  // coeffs of the input polynomial
  auto is_zero_poly = [](const std::vector<Rat>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& r) { return r == 0; });
  };
  while (!is_zero_poly(r1)) {
    // r0 = q*r1 + r2
    std::vector<Rat> rem(r0), q(rem.size(), Rat(0));
    while (rem.size() >= r1.size()) {
      while (!rem.empty() && rem.back() == 0) rem.pop_back();
      if (rem.size() < r1.size()) break;
      Rat lead = rem.back() / r1.back();
      size_t shift = rem.size() - r1.size();
      q[shift] += lead;
      for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= lead * r1[i];
    }
    // s2 = s0 - q*s1
    std::vector<Rat> s2(std::max(s0.size(), q.size() + s1.size()), Rat(0));
    for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    while (!r1.empty() && r1.back() == 0) r1.pop_back();
  }
  // gcd = r0, a non-zero constant (Phi_n is irreducible over Q).
  while (!r0.empty() && r0.back() == 0) r0.pop_back();
  if (r0.size() != 1) throw std::logic_error("Cyc::inverse: gcd not constant");
  Rat g = r0[0];
  for (auto& x : s0) x /= g;
  return Cyc(n_, reduce_mod(n_, std::move(s0)));
}

Cyc Cyc::operator/(const Cyc& o) const { return *this * o.inverse(); }

Cyc Cyc::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Cyc result(1);
  result = result.embed(n_);
  Cyc base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

bool Cyc::operator==(const Cyc& o) const {
  if (is_rational() && o.is_rational()) return rational_value() == o.rational_value();
  Cyc a = *this, b = o;
  align(a, b);
  return a.c_ == b.c_;
}

Cyc Cyc::embed(long m) const {
  if (m % n_ != 0)
    throw std::invalid_argument("Cyc::embed: conductor " + std::to_string(n_) +
                                " does not divide " + std::to_string(m));
  if (m == n_) return *this;
  long step = m / n_;
  std::vector<Rat> v((c_.size() - 1) * step + 1, Rat(0));
  for (size_t k = 0; k < c_.size(); ++k) v[k * step] = c_[k];
  return Cyc(m, reduce_mod(m, std::move(v)));
}

std::string Cyc::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << (c_[k] > 0 ? " + " : " - ");
    Rat a = first ? c_[k] : Rat(abs(c_[k]));
    first = false;
    if (k == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << "z" << n_;
      if (k > 1) os << "^" << k;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = (__uint128_t)r * b % m;
    b = (__uint128_t)b * b % m;
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t m) {
  return mod_pow(a % m, m - 2, m);  // m prime
}

namespace {
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
    if (n % q == 0) return n == q;
  }
  // deterministic Miller-Rabin for n < 3.3e24 with these bases
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = (__uint128_t)x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}
}  // namespace

std::uint64_t default_modular_prime(long n, int skip) {
  for (std::uint64_t ell = (1ull << 30) + 1;; ++ell) {
    if (ell % (std::uint64_t)n != 1) continue;
    if (!is_prime_u64(ell)) continue;
    if (skip-- > 0) continue;
    return ell;
  }
}

ModularImage::ModularImage(std::uint64_t ell_, long n_) : ell(ell_), n(n_) {
  if (ell % (std::uint64_t)n != 1)
    throw std::invalid_argument("ModularImage: ell must be 1 mod n");
  if (!is_prime_u64(ell)) throw std::invalid_argument("ModularImage: ell must be prime");
  // find an element of exact order n
  for (std::uint64_t h = 2;; ++h) {
    std::uint64_t g = mod_pow(h, (ell - 1) / (std::uint64_t)n, ell);
    if (g == 1) continue;
    bool exact = true;
    for (long d = 1; d < n; ++d) {
      if (n % d == 0 && mod_pow(g, d, ell) == 1) {
        exact = false;
        break;
      }
    }
    if (exact) {
      zeta = g;
      return;
    }
  }
}

std::uint64_t ModularImage::map(const Cyc& a) const {
  Cyc v = a.conductor() == n ? a : a.embed(n);
  std::uint64_t acc = 0, zp = 1;
  for (const Rat& c : v.coeffs()) {
    if (c != 0) {
      Int num = c.get_num(), den = c.get_den();
      std::uint64_t dm = mpz_fdiv_ui(den.get_mpz_t(), ell);
      if (dm == 0) throw bad_reduction("denominator vanishes mod ell");
      std::uint64_t nm = mpz_fdiv_ui(num.get_mpz_t(), ell);
      std::uint64_t cm = (__uint128_t)nm * mod_inv(dm, ell) % ell;
      acc = (acc + (__uint128_t)cm * zp) % ell;
    }
    zp = (__uint128_t)zp * zeta % ell;
  }
  return acc;
}

}  // namespace zp3
