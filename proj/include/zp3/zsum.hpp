#ifndef ZP3_ZSUM_HPP
#define ZP3_ZSUM_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace zp3 {

/// Multiset over Z_p; order of elements is disregarded.
class ZSequence {
 public:
  explicit ZSequence(long p);
  ZSequence(long p, const std::vector<long>& elems);
  static ZSequence parse(const std::string& csv, long p);  // "1,1,3,5"

  long modulus() const { return p_; }
  long length() const { return len_; }
  long multiplicity(long e) const { return mult_.at(((e % p_) + p_) % p_); }
  void add(long e, long count = 1);
  void remove(long e, long count = 1);
  std::vector<long> elements() const;  // expanded, ascending
  std::set<long> support() const;
  long total() const;                  // sum of all elements mod p
  long height() const;                 // max multiplicity
  bool operator==(const ZSequence&) const = default;
  std::string str() const;

 private:
  long p_;
  std::vector<long> mult_;
  long len_;
};

/// Partial sums Sigma(S), over all subsets including the empty one.
std::set<long> sigma(const ZSequence& s);

struct Classification {
  bool zero_sum;
  bool zero_sum_free;
  bool irreducible_zero_sum;
  long height;
};
Classification classify(const ZSequence& s);

struct Factorization {
  std::vector<ZSequence> factors;  // irreducible zero-sum sequences
  ZSequence remainder;             // zero-sum free
};
/// Greedy: repeatedly removes the lexicographically-smallest shortest
/// non-empty zero-sum subsequence. Deterministic.
Factorization factor_irreducible(const ZSequence& s);

struct LemmaEasyResult {
  bool bound_holds;
  long sigma_size;
  long bound;  // min{p, d+1}
  std::optional<std::pair<long, long>> equality_case;  // (a, k): S = (-a^k, a^{d-k})
};
/// |Sigma(S)| >= min{p, d+1} for non-zero-element S; equality structure
/// reported when p-1 >= |Sigma(S)| = d+1.
LemmaEasyResult lemma_easy_check(const ZSequence& s);

struct BoundResult {
  bool applicable;
  long bound;
  long sigma_size;
  bool holds;
};
/// |Sigma(S)| >= 1 + nu_1 + 2 nu_2 + ... + k nu_k when supp(S) and -supp(S)
/// are disjoint and 0 not in S.
BoundResult balandraud_bound(const ZSequence& s);
/// |Sigma(S)| >= 2|S| - h(S) + 1 for non-empty zero-sum-free S.
BoundResult freeze_smith_bound(const ZSequence& s);

struct VosperCase {
  long step;
  long k_start;
  long l_start;
};
struct CDResult {
  long sum_size;
  long bound;
  bool equality;
  std::optional<VosperCase> vosper_case;
};
CDResult cauchy_davenport_check(const std::set<long>& K, const std::set<long>& L, long p);

/// Smallest D such that every length-D sequence over Z_p has a non-empty
/// zero-sum subsequence. Exhaustive over multisets; guarded to p <= 13.
long davenport_constant(long p);

}  // namespace zp3

#endif
