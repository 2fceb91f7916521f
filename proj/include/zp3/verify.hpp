#ifndef ZP3_VERIFY_HPP
#define ZP3_VERIFY_HPP

#include <string>
#include <utility>
#include <vector>

#include "zp3/invariants.hpp"

namespace zp3 {

struct ReportInstance {
  std::string monomial;
  int degree;
  std::string outcome;  // "member", "non-member", "contained", "finding:...", ...
  std::string mode;     // "exact" | "modular" | "certified" | "-"
};

/// Machine-readable outcome of one verification driver.
struct VerificationReport {
  std::string statement;
  std::vector<std::pair<std::string, std::string>> params;  // insertion-ordered
  int window_lo = 0;
  int window_hi = 0;
  std::vector<ReportInstance> instances;
  std::string verdict;  // "PASS" | "FAIL" | "FINDING"
  long timing_ms = 0;

  bool ok() const { return verdict != "FAIL"; }
  std::string to_json(bool include_timing = true) const;
  static VerificationReport from_json(const std::string& text);
};

const char* mode_name(RankMode m);

/// "V1+...+Vl": one copy of every 3-dim irreducible.
std::string full_induced_module(long p);
/// "2*V1+...+2*Vl".
std::string doubled_induced_module(long p);

/// Every A-invariant monomial m with deg(m) in [d_lo, d_hi], deg >= p+1 and
/// some instance degree >= 4 lies in I_+(R_+)_{<=p}. Module must be a sum of
/// induced (3-dim) irreducibles.
VerificationReport verify_prop31(long p, const std::string& mspec, int d_lo, int d_hi,
                                 RankMode mode);

/// I_d = sum_e R_e I_{d-e} for p+1 <= d in [d_lo, d_hi] on V1+...+Vl.
VerificationReport verify_cor32(long p, int d_lo, int d_hi, RankMode mode);

/// Every A-invariant monomial of degree >= p+1 over (V1+...+Vl)^{x2} lies in
/// I_2 I_+^2 + I_+(R_+)_{<=p}, except the p=7 profile (a^6,3a,5a) instances,
/// which are recorded as findings with exactly-computed membership.
VerificationReport verify_prop33(long p, int d_lo, int d_hi, RankMode mode);

/// The p=7 exceptional monomials themselves; verdict is always FINDING.
VerificationReport exceptional_case();

/// Windowed beta_k: degrees kp+2 .. kp+4. With expect_sharp, d = kp+2 must
/// be proved non-contained exactly and kp+3, kp+4 contained; otherwise only
/// containment at kp+3, kp+4 is required and kp+2 is recorded as found.
VerificationReport verify_betak(long p, const std::string& mspec, int k, bool expect_sharp,
                                RankMode mode);

/// (I_+^3)_d subseteq (I_+R_+ + R_+)_d for d <= d_max.
VerificationReport verify_i3(long p, const std::string& mspec, int d_max, RankMode mode);

/// Does the weight multiset split into at least `parts` non-empty zero-sum
/// parts? (Membership of a monomial in I_+^parts is exactly this.)
bool splits_into_zero_sum_parts(const ZSequence& phi, int parts);

}  // namespace zp3

#endif
