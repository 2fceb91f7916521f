#ifndef ZP3_INVARIANTS_HPP
#define ZP3_INVARIANTS_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "zp3/linalg.hpp"
#include "zp3/poly.hpp"

namespace zp3 {

/// Per-instance degree vector; the canonic factorization of monomials makes
/// every graded component of I and R split along these.
using Block = std::vector<int>;

/// Formal sum of products of graded pieces of I and R.
struct SpanExpr {
  struct Factor {
    char algebra;  // 'I' or 'R'
    enum Sel { Exact, Plus, PlusPow, PlusLe } sel;
    int arg;       // degree for Exact/PlusLe, exponent for PlusPow
  };
  std::vector<std::vector<Factor>> terms;

  /// Grammar: EXPR := TERM ("+" TERM)*, TERM := FACTOR ("*" FACTOR)*,
  /// FACTOR := ("I"|"R") SUB, SUB := "_" INT | "+" | "+^" INT | "+<=" INT.
  static SpanExpr parse(const std::string& text);
  std::string str() const;
};

/// Non-increasing lambda statistic: lambda_i = #distinct weights of
/// multiplicity >= i in the weight sequence.
std::vector<long> lambda_stat(const VariableTable& vt, const Monomial& m);

struct MembershipResult {
  bool member;
  RankMode mode;  // mode that decided it
  // present in certificate mode for positive exact answers: the combination
  // of span rows (given by their printable labels) that reproduces f
  std::optional<std::vector<std::pair<std::string, Cyc>>> witness;
};

struct ContainmentResult {
  bool contained;
  RankMode mode;
  std::optional<Monomial> counterexample_pivot;  // a pivot outside the span
};

/// Graded invariant-ring data for one module; all bases are cached per
/// block behind a mutex, values handed out are immutable.
class InvariantRing {
 public:
  InvariantRing(const GroupSpec& g, const ModuleSpec& m);
  ~InvariantRing();

  const VariableTable& table() const { return vt_; }
  const GroupSpec& group() const { return vt_.group(); }

  std::vector<Block> blocks_of_degree(int d) const;
  static int block_degree(const Block& b);

  /// Monomial basis of I restricted to one block (deterministic order).
  const std::vector<Monomial>& I_monomials(const Block& b) const;
  std::vector<Monomial> I_monomials(int d) const;
  long dim_I(int d) const;

  /// Echelonized tau-image basis of R in one block.
  const std::vector<Poly>& R_basis(const Block& b) const;
  std::vector<Poly> R_basis(int d) const;
  int dim_R(int d) const;      // rank of the tau-image span
  int dim_R_block(const Block& b) const;

  /// Independent dimension oracle: averaged trace of B on I_d.
  long burnside_dim(int d) const;
  long burnside_dim_block(const Block& b) const;

  /// Generate the spanning rows of expr at one block; visitor returns false
  /// to stop early. Rows are labelled for certificate extraction.
  void for_each_span_row(const SpanExpr& expr, const Block& b,
                         const std::function<bool(const Poly&, const std::string&)>& visit) const;

  /// Grlex-least monomial of each span row, without forming the products.
  /// For a monomial order, lead(f*g) = lead(f)*lead(g), so if the leads
  /// cover all of I_b the rows contain a unit-triangular square system and
  /// the span is all of I_b exactly.
  void for_each_span_lead(const SpanExpr& expr, const Block& b,
                          const std::function<bool(const Monomial&)>& visit) const;

  MembershipResult decide_membership(const Poly& f, const SpanExpr& expr, RankMode mode,
                                     bool want_certificate = false) const;

  /// Membership of many polynomials of one block against one span.
  /// Certification policy: a modular rank equal to the ambient target proves
  /// containment of everything; any negative answer is established exactly
  /// (except in raw Modular mode, whose answers carry mode = Modular).
  std::vector<MembershipResult> batch_membership(const std::vector<Poly>& fs, const Block& b,
                                                 const SpanExpr& expr, RankMode mode,
                                                 bool want_certificate = false) const;

  /// Is every element of R_b inside the span of expr at block b?
  ContainmentResult block_containment_in(const Block& b, const SpanExpr& expr,
                                         RankMode mode) const;

  /// Does the span of expr at block b equal the whole component I_b?
  ContainmentResult block_span_is_full(const Block& b, const SpanExpr& expr,
                                       RankMode mode) const;

  /// (R_+)_d subseteq (R_+^{k+1})_d, per degree.
  struct BetaEntry {
    int d;
    bool contained;
    RankMode mode;
  };
  std::vector<BetaEntry> beta_k_window(int k, int d_lo, int d_hi, RankMode mode) const;

  /// Matrix rank helper implementing the certification policy.
  /// rows are polynomials living in I at one block.
  int rank_of_rows(const std::vector<Poly>& rows, const Block& b, RankMode mode,
                   bool* certified = nullptr) const;

  std::uint64_t modular_prime(int resample = 0) const;

 private:
  struct BlockData;
  BlockData& block_data(const Block& b) const;

  SparseRow<CycField> to_row(const BlockData& bd, const Poly& f) const;
  SparseRow<PrimeField> to_row_mod(const BlockData& bd, const Poly& f,
                                   const ModularImage& img) const;

  VariableTable vt_;
  mutable std::mutex mu_;
  mutable std::map<Block, std::unique_ptr<BlockData>> cache_;
};

}  // namespace zp3

#endif
