#ifndef ZP3_CYCLO_HPP
#define ZP3_CYCLO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace zp3 {

using Rat = mpq_class;
using Int = mpz_class;

long euler_phi(long n);

/// Coefficients of the n-th cyclotomic polynomial, index k = coefficient of x^k.
/// Monic, integer coefficients, degree phi(n).
std::vector<Int> cyclotomic_poly(long n);

/// Element of Q(zeta_n), stored as the reduced residue modulo Phi_n(x).
/// Immutable value type; all arithmetic is exact.
class Cyc {
 public:
  Cyc() : n_(1), c_(1, Rat(0)) {}
  explicit Cyc(const Rat& r) : n_(1), c_(1, r) {}
  explicit Cyc(long r) : n_(1), c_(1, Rat(r)) {}
  Cyc(long conductor, std::vector<Rat> coeffs);

  static Cyc zeta(long n);    // primitive n-th root of unity
  static Cyc omega() { return zeta(3); }

  long conductor() const { return n_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;        // lies in Q (all non-constant coeffs zero)
  Rat rational_value() const;      // requires is_rational()

  Cyc operator-() const;
  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator*(const Cyc& o) const;
  Cyc operator/(const Cyc& o) const;
  Cyc inverse() const;
  Cyc pow(long k) const;           // k may be negative
  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  /// Image under zeta_n -> zeta_m^{m/n}; requires n | m. Field homomorphism.
  Cyc embed(long m) const;

  std::string str() const;

 private:
  long n_;
  std::vector<Rat> c_;  // length phi(n_)
};

inline Cyc operator*(long a, const Cyc& b) { return Cyc(a) * b; }

/// Modular image of Q(zeta_n) in F_ell, ell prime with ell = 1 (mod n);
/// zeta_n is sent to a fixed element of multiplicative order n.
struct ModularImage {
  std::uint64_t ell;
  long n;
  std::uint64_t zeta;  // order-n element of F_ell

  ModularImage(std::uint64_t ell, long n);

  /// Throws bad_reduction if a denominator vanishes mod ell.
  std::uint64_t map(const Cyc& a) const;

  struct bad_reduction : std::runtime_error {
    using std::runtime_error::runtime_error;
  };
};

/// Smallest prime ell > 2^30 with ell = 1 (mod n); `skip` earlier hits
/// (used to re-sample deterministically after denominator collisions).
std::uint64_t default_modular_prime(long n, int skip = 0);

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t m);

}  // namespace zp3

#endif
