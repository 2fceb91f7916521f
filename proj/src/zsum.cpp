#include "zp3/zsum.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace zp3 {

namespace {
constexpr long kSubsetGuard = 24;

void check_guard(const ZSequence& s, const char* op) {
  if (s.length() > kSubsetGuard)
    throw std::invalid_argument(std::string(op) + ": |S| > 24 exceeds the enumeration guard");
}

// dp[sum] = bitmask of achievable subset sizes (bit k: some k-subset sums to `sum`).
std::vector<std::uint64_t> size_profile(const ZSequence& s) {
  std::vector<std::uint64_t> dp(s.modulus(), 0);
  dp[0] = 1;  // empty subset
  for (long e : s.elements()) {
    std::vector<std::uint64_t> nxt = dp;
    for (long sum = 0; sum < s.modulus(); ++sum) {
      if (dp[sum]) nxt[(sum + e) % s.modulus()] |= dp[sum] << 1;
    }
    dp = std::move(nxt);
  }
  return dp;
}
}  // namespace

ZSequence::ZSequence(long p) : p_(p), mult_(p, 0), len_(0) {
  if (p < 2) throw std::invalid_argument("ZSequence: modulus must be >= 2");
}

ZSequence::ZSequence(long p, const std::vector<long>& elems) : ZSequence(p) {
  for (long e : elems) add(e);
}

ZSequence ZSequence::parse(const std::string& csv, long p) {
  ZSequence s(p);
  if (csv.empty()) return s;
  std::stringstream ss(csv);
  std::string tok;
  size_t pos = 0;
  while (std::getline(ss, tok, ',')) {
    size_t end = 0;
    long v = 0;
    try {
      v = std::stol(tok, &end);
    } catch (const std::exception&) {
      end = 0;
    }
    while (end < tok.size() && std::isspace((unsigned char)tok[end])) ++end;
    if (end == 0 || end != tok.size())
      throw std::invalid_argument("ZSequence: expected integer at position " +
                                  std::to_string(pos) + " in '" + csv + "'");
    s.add(v);
    pos += tok.size() + 1;
  }
  return s;
}

void ZSequence::add(long e, long count) {
  mult_[((e % p_) + p_) % p_] += count;
  len_ += count;
}

void ZSequence::remove(long e, long count) {
  long idx = ((e % p_) + p_) % p_;
  if (mult_[idx] < count) throw std::invalid_argument("ZSequence::remove: not present");
  mult_[idx] -= count;
  len_ -= count;
}

std::vector<long> ZSequence::elements() const {
  std::vector<long> out;
  out.reserve(len_);
  for (long e = 0; e < p_; ++e)
    for (long i = 0; i < mult_[e]; ++i) out.push_back(e);
  return out;
}

std::set<long> ZSequence::support() const {
  std::set<long> out;
  for (long e = 0; e < p_; ++e)
    if (mult_[e] > 0) out.insert(e);
  return out;
}

long ZSequence::total() const {
  long t = 0;
  for (long e = 0; e < p_; ++e) t = (t + e * mult_[e]) % p_;
  return t;
}

long ZSequence::height() const { return *std::max_element(mult_.begin(), mult_.end()); }

std::string ZSequence::str() const {
  std::string out;
  for (long e : elements()) {
    if (!out.empty()) out += ",";
    out += std::to_string(e);
  }
  return out;
}

std::set<long> sigma(const ZSequence& s) {
  check_guard(s, "sigma");
  std::vector<char> reach(s.modulus(), 0);
  reach[0] = 1;
  for (long e : s.elements()) {
    std::vector<char> nxt = reach;
    for (long sum = 0; sum < s.modulus(); ++sum)
      if (reach[sum]) nxt[(sum + e) % s.modulus()] = 1;
    reach = std::move(nxt);
  }
  std::set<long> out;
  for (long v = 0; v < s.modulus(); ++v)
    if (reach[v]) out.insert(v);
  return out;
}

Classification classify(const ZSequence& s) {
  check_guard(s, "classify");
  auto dp = size_profile(s);
  std::uint64_t zero_sizes = dp[0];
  long n = s.length();
  bool zero_sum = n > 0 && s.total() == 0;
  std::uint64_t proper = zero_sizes & ~(1ull << n) & ~1ull;  // non-empty, not the whole
  Classification c;
  c.zero_sum = zero_sum;
  c.zero_sum_free = (zero_sizes & ~1ull) == 0;
  c.irreducible_zero_sum = zero_sum && proper == 0;
  c.height = n == 0 ? 0 : s.height();
  return c;
}

namespace {
// Lexicographically-smallest size-k zero-sum sub-multiset of the sorted
// expanded vector; returns chosen indices or empty.
bool find_zero_sum_k(const std::vector<long>& elems, long p, long k, size_t start, long sum,
                     std::vector<size_t>& chosen) {
  if ((long)chosen.size() == k) return sum % p == 0;
  for (size_t i = start; i + (k - chosen.size()) <= elems.size(); ++i) {
    if (i > start && elems[i] == elems[i - 1]) continue;  // same multiset, skip
    chosen.push_back(i);
    if (find_zero_sum_k(elems, p, k, i + 1, sum + elems[i], chosen)) return true;
    chosen.pop_back();
  }
  return false;
}
}  // namespace

Factorization factor_irreducible(const ZSequence& s) {
  check_guard(s, "factor_irreducible");
  Factorization f{.factors = {}, .remainder = s};
  for (;;) {
    std::vector<long> elems = f.remainder.elements();
    bool found = false;
    for (long k = 1; k <= (long)elems.size() && !found; ++k) {
      std::vector<size_t> chosen;
      if (find_zero_sum_k(elems, s.modulus(), k, 0, 0, chosen)) {
        ZSequence factor(s.modulus());
        for (size_t i : chosen) factor.add(elems[i]);
        for (size_t i : chosen) f.remainder.remove(elems[i]);
        f.factors.push_back(std::move(factor));
        found = true;
      }
    }
    if (!found) break;
  }
  return f;
}

LemmaEasyResult lemma_easy_check(const ZSequence& s) {
  if (s.multiplicity(0) > 0)
    throw std::invalid_argument("lemma_easy_check: zero element present");
  long p = s.modulus();
  long d = s.length();
  LemmaEasyResult r;
  r.sigma_size = (long)sigma(s).size();
  r.bound = std::min(p, d + 1);
  r.bound_holds = r.sigma_size >= r.bound;
  r.equality_case.reset();
  if (r.sigma_size <= p - 1 && r.sigma_size == d + 1) {
    for (long a = 1; a < p && !r.equality_case; ++a) {
      for (long k = 0; k <= d; ++k) {
        ZSequence cand(p);
        cand.add(p - a, k);
        cand.add(a, d - k);
        if (cand == s) {
          r.equality_case = {a, k};
          break;
        }
      }
    }
  }
  return r;
}

BoundResult balandraud_bound(const ZSequence& s) {
  long p = s.modulus();
  BoundResult r;
  auto supp = s.support();
  bool disjoint = true;
  for (long e : supp)
    if (supp.count((p - e) % p)) disjoint = false;
  r.applicable = s.multiplicity(0) == 0 && disjoint;
  std::vector<long> nus;
  for (long e : supp) nus.push_back(s.multiplicity(e));
  std::sort(nus.rbegin(), nus.rend());
  r.bound = 1;
  for (size_t i = 0; i < nus.size(); ++i) r.bound += (long)(i + 1) * nus[i];
  r.sigma_size = (long)sigma(s).size();
  // Sigma(S) lives in Z_p, so the effective bound is min(p, bound).
  r.holds = !r.applicable || r.sigma_size >= std::min(p, r.bound);
  return r;
}

BoundResult freeze_smith_bound(const ZSequence& s) {
  BoundResult r;
  r.applicable = s.length() > 0 && classify(s).zero_sum_free;
  r.bound = 2 * s.length() - (s.length() ? s.height() : 0) + 1;
  r.sigma_size = (long)sigma(s).size();
  r.holds = !r.applicable || r.sigma_size >= r.bound;
  return r;
}

namespace {
// Is X an arithmetic progression of the given step? Returns its start.
std::optional<long> ap_start(const std::set<long>& X, long step, long p) {
  for (long x : X) {
    bool start = !X.count(((x - step) % p + p) % p);
    if (!start) continue;
    long cur = x;
    size_t cnt = 0;
    while (X.count(cur) && cnt < X.size()) {
      cur = (cur + step) % p;
      ++cnt;
    }
    if (cnt == X.size()) return x;
  }
  return std::nullopt;
}
}  // namespace

CDResult cauchy_davenport_check(const std::set<long>& K, const std::set<long>& L, long p) {
  if (K.empty() || L.empty())
    throw std::invalid_argument("cauchy_davenport_check: empty input set");
  std::set<long> sum;
  for (long k : K)
    for (long l : L) sum.insert((k + l) % p);
  CDResult r;
  r.sum_size = (long)sum.size();
  r.bound = std::min(p, (long)K.size() + (long)L.size() - 1);
  r.equality = r.sum_size == r.bound;
  r.vosper_case.reset();
  if (r.equality && (long)K.size() >= 2 && (long)L.size() >= 2 && r.sum_size <= p - 2) {
    for (long step = 1; step < p; ++step) {
      auto ks = ap_start(K, step, p);
      auto ls = ap_start(L, step, p);
      if (ks && ls) {
        r.vosper_case = VosperCase{step, *ks, *ls};
        break;
      }
    }
  }
  return r;
}

namespace {
// Longest zero-sum-free multiset over Z_p \ {0}, by exhaustive search over
// multisets of each length.
bool exists_zero_sum_free(long p, long len) {
  std::vector<long> stack;
  // enumerate non-decreasing tuples over 1..p-1
  std::function<bool(long)> rec = [&](long lo) -> bool {
    if ((long)stack.size() == len) {
      return classify(ZSequence(p, stack)).zero_sum_free;
    }
    for (long e = lo; e < p; ++e) {
      stack.push_back(e);
      if (rec(e)) return true;
      stack.pop_back();
    }
    return false;
  };
  return rec(1);
}
}  // namespace

long davenport_constant(long p) {
  if (p > 13) throw std::invalid_argument("davenport_constant: exhaustive search guarded to p <= 13");
  long len = 0;
  while (exists_zero_sum_free(p, len + 1)) ++len;
  return len + 1;
}

}  // namespace zp3
