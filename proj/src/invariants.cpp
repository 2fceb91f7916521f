#include "zp3/invariants.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <sstream>
#include <stdexcept>

namespace zp3 {

// ---------------------------------------------------------------------------
// SpanExpr

SpanExpr SpanExpr::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace((unsigned char)ch)) s += ch;
  SpanExpr e;
  size_t pos = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("SpanExpr: " + msg + " at position " + std::to_string(pos) +
                                " in '" + text + "'");
  };
  auto read_int = [&]() {
    if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail("expected integer");
    size_t end;
    int v = std::stoi(s.substr(pos), &end);
    pos += end;
    return v;
  };
  while (true) {
    std::vector<Factor> term;
    while (true) {
      if (pos >= s.size() || (s[pos] != 'I' && s[pos] != 'R')) fail("expected 'I' or 'R'");
      Factor f;
      f.algebra = s[pos++];
      if (pos < s.size() && s[pos] == '_') {
        ++pos;
        f.sel = Factor::Exact;
        f.arg = read_int();
      } else if (pos < s.size() && s[pos] == '+') {
        ++pos;
        if (pos + 1 < s.size() && s[pos] == '^') {
          ++pos;
          f.sel = Factor::PlusPow;
          f.arg = read_int();
        } else if (pos + 1 < s.size() && s[pos] == '<' && s[pos + 1] == '=') {
          pos += 2;
          f.sel = Factor::PlusLe;
          f.arg = read_int();
        } else {
          f.sel = Factor::Plus;
          f.arg = 0;
        }
      } else {
        fail("expected '_' or '+' after algebra letter");
      }
      term.push_back(f);
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    e.terms.push_back(std::move(term));
    if (pos < s.size() && s[pos] == '+') {
      ++pos;
      continue;
    }
    break;
  }
  if (pos != s.size()) fail("trailing input");
  return e;
}

std::string SpanExpr::str() const {
  std::string out;
  for (size_t t = 0; t < terms.size(); ++t) {
    if (t) out += " + ";
    for (size_t i = 0; i < terms[t].size(); ++i) {
      if (i) out += "*";
      const Factor& f = terms[t][i];
      out += f.algebra;
      switch (f.sel) {
        case Factor::Exact: out += "_" + std::to_string(f.arg); break;
        case Factor::Plus: out += "+"; break;
        case Factor::PlusPow: out += "+^" + std::to_string(f.arg); break;
        case Factor::PlusLe: out += "+<=" + std::to_string(f.arg); break;
      }
    }
  }
  return out;
}

std::vector<long> lambda_stat(const VariableTable& vt, const Monomial& m) {
  ZSequence phi = weight_sequence(vt, m);
  std::vector<long> mults;
  for (long w : phi.support()) mults.push_back(phi.multiplicity(w));
  std::vector<long> lambda;
  long h = mults.empty() ? 0 : *std::max_element(mults.begin(), mults.end());
  for (long i = 1; i <= h; ++i) {
    long cnt = (long)std::count_if(mults.begin(), mults.end(), [&](long v) { return v >= i; });
    lambda.push_back(cnt);
  }
  return lambda;
}

// ---------------------------------------------------------------------------
// InvariantRing

struct InvariantRing::BlockData {
  Block block;
  std::vector<Monomial> monos;
  std::map<Monomial, int> index;
  bool r_built = false;
  std::vector<Poly> r_basis;
  std::vector<SparseRow<CycField>> r_rows;
};

InvariantRing::InvariantRing(const GroupSpec& g, const ModuleSpec& m) : vt_(g, m) {}

InvariantRing::~InvariantRing() = default;

int InvariantRing::block_degree(const Block& b) {
  int d = 0;
  for (int x : b) d += x;
  return d;
}

std::vector<Block> InvariantRing::blocks_of_degree(int d) const {
  std::vector<Block> out;
  Block cur(vt_.instance_count(), 0);
  std::function<void(int, int)> rec = [&](int inst, int rem) {
    if (inst + 1 == vt_.instance_count()) {
      cur[inst] = rem;
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= rem; ++e) {
      cur[inst] = e;
      rec(inst + 1, rem - e);
    }
  };
  if (vt_.instance_count() == 0) return out;
  rec(0, d);
  return out;
}

InvariantRing::BlockData& InvariantRing::block_data(const Block& b) const {
  if ((int)b.size() != vt_.instance_count())
    throw std::invalid_argument("block size mismatch");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(b);
  if (it != cache_.end()) return *it->second;

  auto bd = std::make_unique<BlockData>();
  bd->block = b;
  long p = vt_.group().p;
  // variables grouped per instance
  std::vector<std::vector<int>> inst_vars(vt_.instance_count());
  for (const Variable& v : vt_.vars()) inst_vars[v.instance].push_back(v.index);

  Monomial cur(vt_.size());
  std::function<void(int, long)> rec = [&](int inst, long w) {
    if (inst == vt_.instance_count()) {
      if (w % p == 0) bd->monos.push_back(cur);
      return;
    }
    const auto& vars = inst_vars[inst];
    int e = b[inst];
    if (vars.size() == 1) {
      cur.e[vars[0]] = e;
      rec(inst + 1, w);  // 1-dim variables have weight 0
      cur.e[vars[0]] = 0;
      return;
    }
    for (int e0 = 0; e0 <= e; ++e0)
      for (int e1 = 0; e1 + e0 <= e; ++e1) {
        int e2 = e - e0 - e1;
        cur.e[vars[0]] = e0;
        cur.e[vars[1]] = e1;
        cur.e[vars[2]] = e2;
        rec(inst + 1, w + e0 * vt_.var(vars[0]).weight + e1 * vt_.var(vars[1]).weight +
                          e2 * vt_.var(vars[2]).weight);
      }
    cur.e[vars[0]] = cur.e[vars[1]] = cur.e[vars[2]] = 0;
  };
  rec(0, 0);
  std::sort(bd->monos.begin(), bd->monos.end());
  for (size_t i = 0; i < bd->monos.size(); ++i) bd->index[bd->monos[i]] = (int)i;

  auto [pos, ok] = cache_.emplace(b, std::move(bd));
  return *pos->second;
}

const std::vector<Monomial>& InvariantRing::I_monomials(const Block& b) const {
  return block_data(b).monos;
}

std::vector<Monomial> InvariantRing::I_monomials(int d) const {
  std::vector<Monomial> out;
  for (const Block& b : blocks_of_degree(d)) {
    const auto& ms = I_monomials(b);
    out.insert(out.end(), ms.begin(), ms.end());
  }
  return out;
}

long InvariantRing::dim_I(int d) const {
  long n = 0;
  for (const Block& b : blocks_of_degree(d)) n += (long)I_monomials(b).size();
  return n;
}

SparseRow<CycField> InvariantRing::to_row(const BlockData& bd, const Poly& f) const {
  SparseRow<CycField> row;
  for (auto& [m, c] : f.terms()) {
    auto it = bd.index.find(m);
    if (it == bd.index.end())
      throw std::logic_error("to_row: monomial outside block (not A-invariant?)");
    row.nz.emplace_back(it->second, c);
  }
  std::sort(row.nz.begin(), row.nz.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

SparseRow<PrimeField> InvariantRing::to_row_mod(const BlockData& bd, const Poly& f,
                                                const ModularImage& img) const {
  SparseRow<PrimeField> row;
  for (auto& [m, c] : f.terms()) {
    auto it = bd.index.find(m);
    if (it == bd.index.end()) throw std::logic_error("to_row_mod: monomial outside block");
    std::uint64_t v = img.map(c);
    if (v != 0) row.nz.emplace_back(it->second, v);
  }
  std::sort(row.nz.begin(), row.nz.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

namespace {
Poly row_to_poly(const std::vector<Monomial>& cols, const SparseRow<CycField>& row) {
  Poly f;
  for (auto& [c, v] : row.nz) f.add_term(cols[c], v);
  return f;
}
}  // namespace

const std::vector<Poly>& InvariantRing::R_basis(const Block& b) const {
  BlockData& bd = block_data(b);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (bd.r_built) return bd.r_basis;
  }
  // tau images of the block monomials, echelonized
  SparseEchelon<CycField> ech{CycField{}};
  std::vector<Poly> basis;
  for (const Monomial& m : bd.monos) {
    Poly t = transfer(vt_, Poly::monomial(m));
    if (t.is_zero()) continue;
    if (ech.insert(to_row(bd, t))) basis.push_back(row_to_poly(bd.monos, ech.rows().back()));
  }
  std::lock_guard<std::mutex> lock(mu_);
  if (!bd.r_built) {
    bd.r_basis = std::move(basis);
    bd.r_rows = ech.rows();
    bd.r_built = true;
  }
  return bd.r_basis;
}

std::vector<Poly> InvariantRing::R_basis(int d) const {
  std::vector<Poly> out;
  for (const Block& b : blocks_of_degree(d)) {
    const auto& bs = R_basis(b);
    out.insert(out.end(), bs.begin(), bs.end());
  }
  return out;
}

int InvariantRing::dim_R_block(const Block& b) const { return (int)R_basis(b).size(); }

int InvariantRing::dim_R(int d) const {
  int n = 0;
  for (const Block& b : blocks_of_degree(d)) n += dim_R_block(b);
  return n;
}

long InvariantRing::burnside_dim_block(const Block& b) const {
  const auto& monos = I_monomials(b);
  Cyc total(0);
  for (int be = 0; be < 3; ++be) {
    for (const Monomial& m : monos) {
      auto [img, w] = act_monomial_b(vt_, m, be);
      if (img == m) total = total + Cyc::omega().pow(w);
    }
  }
  Cyc dim = total * Cyc(Rat(1, 3));
  if (!dim.is_rational() || dim.rational_value().get_den() != 1)
    throw std::logic_error("burnside_dim: non-integer trace average");
  return (long)dim.rational_value().get_num().get_si();
}

long InvariantRing::burnside_dim(int d) const {
  long n = 0;
  for (const Block& b : blocks_of_degree(d)) n += burnside_dim_block(b);
  return n;
}

// ---------------------------------------------------------------------------
// Span expansion

namespace {
struct Atom {
  char alg;
  int dmin, dmax;
  bool operator==(const Atom&) const = default;
};

std::vector<Atom> expand_term(const std::vector<SpanExpr::Factor>& term) {
  std::vector<Atom> atoms;
  for (const auto& f : term) {
    switch (f.sel) {
      case SpanExpr::Factor::Exact:
        atoms.push_back({f.algebra, f.arg, f.arg});
        break;
      case SpanExpr::Factor::Plus:
        atoms.push_back({f.algebra, 1, INT_MAX});
        break;
      case SpanExpr::Factor::PlusLe:
        atoms.push_back({f.algebra, 1, f.arg});
        break;
      case SpanExpr::Factor::PlusPow:
        for (int i = 0; i < f.arg; ++i) atoms.push_back({f.algebra, 1, INT_MAX});
        break;
    }
  }
  return atoms;
}

void sub_blocks(const Block& rem, int lo, int hi, std::vector<Block>& out) {
  Block cur(rem.size(), 0);
  std::function<void(size_t, int)> rec = [&](size_t i, int deg) {
    if (deg > hi) return;
    if (i == rem.size()) {
      if (deg >= lo) out.push_back(cur);
      return;
    }
    for (int e = 0; e <= rem[i]; ++e) {
      cur[i] = e;
      rec(i + 1, deg + e);
    }
    cur[i] = 0;
  };
  rec(0, 0);
}

std::string block_str(const Block& b) {
  std::string s = "(";
  for (size_t i = 0; i < b.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(b[i]);
  }
  return s + ")";
}
}  // namespace

void InvariantRing::for_each_span_row(
    const SpanExpr& expr, const Block& target,
    const std::function<bool(const Poly&, const std::string&)>& visit) const {
  for (size_t t = 0; t < expr.terms.size(); ++t) {
    std::vector<Atom> atoms = expand_term(expr.terms[t]);
    int total = block_degree(target);
    // feasibility of the remaining suffix by degree
    std::vector<long> min_suffix(atoms.size() + 1, 0);
    for (int i = (int)atoms.size() - 1; i >= 0; --i)
      min_suffix[i] = min_suffix[i + 1] + atoms[i].dmin;
    if (min_suffix[0] > total) continue;

    bool stop = false;
    // choice made at each level, for commutative dedup of identical atoms
    std::vector<std::pair<Block, int>> choice(atoms.size());
    std::function<void(size_t, Block, const Poly&, const std::string&)> rec =
        [&](size_t i, Block rem, const Poly& partial, const std::string& label) {
          if (stop) return;
          const Atom& a = atoms[i];
          bool last = i + 1 == atoms.size();
          std::vector<Block> subs;
          if (last) {
            if (block_degree(rem) >= a.dmin && block_degree(rem) <= a.dmax) subs.push_back(rem);
          } else {
            int rem_deg = block_degree(rem);
            int hi = std::min<long>(a.dmax, rem_deg - min_suffix[i + 1]);
            sub_blocks(rem, a.dmin, hi, subs);
          }
          bool dedup = i > 0 && atoms[i - 1] == a;
          for (const Block& sb : subs) {
            if (stop) return;
            if (dedup && sb < choice[i - 1].first) continue;
            size_t nbasis = a.alg == 'I' ? I_monomials(sb).size() : R_basis(sb).size();
            for (size_t j = 0; j < nbasis; ++j) {
              if (stop) return;
              if (dedup && sb == choice[i - 1].first && (int)j < choice[i - 1].second) continue;
              choice[i] = {sb, (int)j};
              Poly factor = a.alg == 'I' ? Poly::monomial(I_monomials(sb)[j])
                                         : R_basis(sb)[j];
              Poly prod = partial * factor;
              std::string lab = label + (label.empty() ? "" : "*") + a.alg +
                                block_str(sb) + "#" + std::to_string(j);
              if (last) {
                if (!visit(prod, lab)) {
                  stop = true;
                  return;
                }
              } else {
                Block nrem = rem;
                for (size_t k = 0; k < nrem.size(); ++k) nrem[k] -= sb[k];
                rec(i + 1, nrem, prod, lab);
              }
            }
          }
        };
    Poly one;
    one.add_term(Monomial(vt_.size()), Cyc(1));
    rec(0, target, one, "");
    if (stop) return;
  }
}

void InvariantRing::for_each_span_lead(
    const SpanExpr& expr, const Block& target,
    const std::function<bool(const Monomial&)>& visit) const {
  for (size_t t = 0; t < expr.terms.size(); ++t) {
    std::vector<Atom> atoms = expand_term(expr.terms[t]);
    int total = block_degree(target);
    std::vector<long> min_suffix(atoms.size() + 1, 0);
    for (int i = (int)atoms.size() - 1; i >= 0; --i)
      min_suffix[i] = min_suffix[i + 1] + atoms[i].dmin;
    if (min_suffix[0] > total) continue;

    bool stop = false;
    std::vector<std::pair<Block, int>> choice(atoms.size());
    std::function<void(size_t, Block, const Monomial&)> rec =
        [&](size_t i, Block rem, const Monomial& partial) {
          if (stop) return;
          const Atom& a = atoms[i];
          bool last = i + 1 == atoms.size();
          std::vector<Block> subs;
          if (last) {
            if (block_degree(rem) >= a.dmin && block_degree(rem) <= a.dmax) subs.push_back(rem);
          } else {
            int rem_deg = block_degree(rem);
            int hi = std::min<long>(a.dmax, rem_deg - min_suffix[i + 1]);
            sub_blocks(rem, a.dmin, hi, subs);
          }
          bool dedup = i > 0 && atoms[i - 1] == a;
          for (const Block& sb : subs) {
            if (stop) return;
            if (dedup && sb < choice[i - 1].first) continue;
            size_t nbasis = a.alg == 'I' ? I_monomials(sb).size() : R_basis(sb).size();
            for (size_t j = 0; j < nbasis; ++j) {
              if (stop) return;
              if (dedup && sb == choice[i - 1].first && (int)j < choice[i - 1].second) continue;
              choice[i] = {sb, (int)j};
              // lead of the factor: the I basis is monomial, and the grlex
              // lead of an R row is the first key of its term map
              const Monomial& lm = a.alg == 'I' ? I_monomials(sb)[j]
                                                : R_basis(sb)[j].terms().begin()->first;
              Monomial prod = partial * lm;
              if (last) {
                if (!visit(prod)) {
                  stop = true;
                  return;
                }
              } else {
                Block nrem = rem;
                for (size_t k = 0; k < nrem.size(); ++k) nrem[k] -= sb[k];
                rec(i + 1, nrem, prod);
              }
            }
          }
        };
    rec(0, target, Monomial(vt_.size()));
    if (stop) return;
  }
}

std::uint64_t InvariantRing::modular_prime(int resample) const {
  return default_modular_prime(3, resample);
}

// ---------------------------------------------------------------------------
// Membership / containment

namespace {
// Exact echelon of span rows over one block, with optional tracking of each
// pivot row as a combination of the original labelled rows.
struct ExactSpan {
  SparseEchelon<CycField> ech{CycField{}};
  bool track;
  std::vector<std::string> labels;
  // combos[i]: pivot row i as sum of labels[j] * coeff
  std::vector<std::map<int, Cyc>> combos;

  // Returns current residual row of the inserted row, for tracking purposes.
  void insert(const SparseRow<CycField>& row, const std::string& label) {
    if (!track) {
      ech.insert(row);
      return;
    }
    // re-do the reduction manually to know the combination
    auto res = row;
    std::map<int, Cyc> combo;
    combo[(int)labels.size()] = Cyc(1);
    reduce_tracked(res, combo);
    labels.push_back(label);
    if (res.nz.empty()) return;
    Cyc lead = res.nz.front().second;
    Cyc s = lead.inverse();
    for (auto& [c, v] : res.nz) v = v * s;
    for (auto& [j, v] : combo) v = v * s;
    // mirror SparseEchelon bookkeeping
    ech.insert(res);  // res is already reduced; insert records it as pivot
    combos.push_back(std::move(combo));
  }

  void reduce_tracked(SparseRow<CycField>& row, std::map<int, Cyc>& combo) const {
    CycField f;
    for (;;) {
      if (row.nz.empty()) return;
      int lead = row.nz.front().first;
      int idx = -1;
      const auto& rows = ech.rows();
      for (size_t i = 0; i < rows.size(); ++i)
        if (rows[i].lead() == lead) {
          idx = (int)i;
          break;
        }
      if (idx < 0) return;
      Cyc s = -row.nz.front().second;
      // row += s * pivot
      SparseRow<CycField> out;
      size_t i = 0, j = 0;
      const auto& pr = rows[idx];
      while (i < row.nz.size() || j < pr.nz.size()) {
        if (j == pr.nz.size() || (i < row.nz.size() && row.nz[i].first < pr.nz[j].first)) {
          out.nz.push_back(row.nz[i++]);
        } else if (i == row.nz.size() || pr.nz[j].first < row.nz[i].first) {
          out.nz.emplace_back(pr.nz[j].first, s * pr.nz[j].second);
          ++j;
        } else {
          Cyc v = row.nz[i].second + s * pr.nz[j].second;
          if (!v.is_zero()) out.nz.emplace_back(row.nz[i].first, v);
          ++i, ++j;
        }
      }
      row = std::move(out);
      if (track) {
        for (auto& [l, c] : combos[idx]) {
          auto it = combo.find(l);
          if (it == combo.end())
            combo[l] = s * c;
          else {
            it->second = it->second + s * c;
            if (it->second.is_zero()) combo.erase(it);
          }
        }
      }
    }
  }
};
}  // namespace

namespace {
bool pure_R(const SpanExpr& expr) {
  for (auto& term : expr.terms)
    for (auto& f : term)
      if (f.algebra != 'R') return false;
  return true;
}
}  // namespace

std::vector<MembershipResult> InvariantRing::batch_membership(const std::vector<Poly>& fs,
                                                              const Block& b,
                                                              const SpanExpr& expr, RankMode mode,
                                                              bool want_certificate) const {
  const BlockData& bd = block_data(b);
  long full = (long)bd.monos.size();
  std::vector<MembershipResult> out(fs.size(), MembershipResult{true, mode, std::nullopt});

  // Triangular shortcut: if the grlex leads of the span rows cover every
  // monomial of I_b, picking one row per lead gives a unit-triangular square
  // system, so the span is all of I_b exactly and everything is a member.
  // (No witness comes out of this, so certificates skip it.)
  if (!want_certificate && full > 0) {
    std::vector<char> covered(bd.monos.size(), 0);
    long ncov = 0;
    bool all = false;
    for_each_span_lead(expr, b, [&](const Monomial& lead) {
      auto it = bd.index.find(lead);
      if (it != bd.index.end() && !covered[it->second]) {
        covered[it->second] = 1;
        if (++ncov == full) {
          all = true;
          return false;
        }
      }
      return true;
    });
    if (all) {
      for (auto& r : out) r.mode = RankMode::Exact;
      return out;
    }
  }

  // Certificates require the tracked exact elimination; the modular
  // shortcut only proves membership without exhibiting a combination.
  if (mode != RankMode::Exact && !want_certificate) {
    // One-sided modular pass: a span of full ambient rank over F_ell
    // certifies that the span is all of I_b over Q(omega) as well.
    try {
      ModularImage img(modular_prime(), 3);
      SparseEchelon<PrimeField> ech{PrimeField{img.ell}};
      bool full_rank = false;
      for_each_span_row(expr, b, [&](const Poly& row, const std::string&) {
        ech.insert(to_row_mod(bd, row, img));
        if (ech.rank() == full) {
          full_rank = true;
          return false;
        }
        return true;
      });
      if (full_rank) {
        for (auto& r : out) r.mode = RankMode::Certified;
        return out;
      }
      if (mode == RankMode::Modular) {
        // Lower-confidence answers; a zero residual proves nothing and a
        // non-zero residual may be a reduction artifact. Reported as Modular.
        for (size_t i = 0; i < fs.size(); ++i)
          out[i] = {ech.reduce(to_row_mod(bd, fs[i], img)).empty(), RankMode::Modular,
                    std::nullopt};
        return out;
      }
    } catch (const ModularImage::bad_reduction&) {
      // denominator collision: fall through to the exact pass
    }
    // Certified mode without the rank certificate: everything below is exact.
  }

  ExactSpan span;
  span.track = want_certificate;
  bool full_rank = false;
  for_each_span_row(expr, b, [&](const Poly& row, const std::string& label) {
    span.insert(to_row(bd, row), label);
    if (span.ech.rank() == full) {
      full_rank = true;
      return false;
    }
    return true;
  });
  (void)full_rank;
  for (size_t i = 0; i < fs.size(); ++i) {
    SparseRow<CycField> res = to_row(bd, fs[i]);
    std::map<int, Cyc> combo;
    if (want_certificate) {
      span.reduce_tracked(res, combo);
    } else {
      res = span.ech.reduce(res);
    }
    if (!res.nz.empty()) {
      out[i] = {false, RankMode::Exact, std::nullopt};
    } else {
      out[i].mode = RankMode::Exact;
      if (want_certificate) {
        out[i].witness.emplace();
        for (auto& [l, c] : combo)
          if (l < (int)span.labels.size()) out[i].witness->emplace_back(span.labels[l], -c);
      }
    }
  }
  return out;
}

MembershipResult InvariantRing::decide_membership(const Poly& f, const SpanExpr& expr,
                                                  RankMode mode, bool want_certificate) const {
  if (!f.is_homogeneous())
    throw std::invalid_argument("decide_membership: polynomial must be homogeneous");
  if (f.is_zero()) return {true, RankMode::Exact, std::nullopt};

  // split f along blocks; f is a member iff every block component is
  std::map<Block, Poly> parts;
  for (auto& [m, c] : f.terms()) {
    auto deg = instance_degrees(vt_, m);
    parts[Block(deg.begin(), deg.end())].add_term(m, c);
  }
  MembershipResult result{true, RankMode::Certified, std::nullopt};
  if (want_certificate) result.witness.emplace();
  for (auto& [b, part] : parts) {
    auto r = batch_membership({part}, b, expr, mode, want_certificate)[0];
    if (!r.member) return r;
    if (r.mode != RankMode::Certified) result.mode = r.mode;
    if (want_certificate && r.witness)
      result.witness->insert(result.witness->end(), r.witness->begin(), r.witness->end());
  }
  return result;
}

ContainmentResult InvariantRing::block_containment_in(const Block& b, const SpanExpr& expr,
                                                      RankMode mode) const {
  const BlockData& bd = block_data(b);
  const auto& rbasis = R_basis(b);
  if (rbasis.empty()) return {true, RankMode::Exact, std::nullopt};
  // For an R-pure expression the span sits inside R_b, so rank = dim R_b is
  // a valid containment certificate; otherwise only full ambient rank is.
  long cert_target = pure_R(expr) ? (long)rbasis.size() : (long)bd.monos.size();

  if (mode != RankMode::Exact) {
    try {
      ModularImage img(modular_prime(), 3);
      SparseEchelon<PrimeField> ech{PrimeField{img.ell}};
      bool done = false;
      for_each_span_row(expr, b, [&](const Poly& row, const std::string&) {
        ech.insert(to_row_mod(bd, row, img));
        if (ech.rank() >= cert_target) {
          done = true;
          return false;
        }
        return true;
      });
      if (done) return {true, RankMode::Certified, std::nullopt};
    } catch (const ModularImage::bad_reduction&) {
    }
    // inconclusive modularly; decide exactly
  }

  SparseEchelon<CycField> ech{CycField{}};
  bool done = false;
  for_each_span_row(expr, b, [&](const Poly& row, const std::string&) {
    ech.insert(to_row(bd, row));
    if (ech.rank() >= cert_target) {
      done = true;
      return false;
    }
    return true;
  });
  if (done) return {true, RankMode::Exact, std::nullopt};
  for (const Poly& r : rbasis) {
    auto res = ech.reduce(to_row(bd, r));
    if (!res.nz.empty())
      return {false, RankMode::Exact, bd.monos[res.nz.front().first]};
  }
  return {true, RankMode::Exact, std::nullopt};
}

ContainmentResult InvariantRing::block_span_is_full(const Block& b, const SpanExpr& expr,
                                                    RankMode mode) const {
  const BlockData& bd = block_data(b);
  long full = (long)bd.monos.size();
  if (full == 0) return {true, RankMode::Exact, std::nullopt};

  if (mode != RankMode::Exact) {
    try {
      ModularImage img(modular_prime(), 3);
      SparseEchelon<PrimeField> ech{PrimeField{img.ell}};
      bool done = false;
      for_each_span_row(expr, b, [&](const Poly& row, const std::string&) {
        ech.insert(to_row_mod(bd, row, img));
        if (ech.rank() == full) {
          done = true;
          return false;
        }
        return true;
      });
      if (done) return {true, RankMode::Certified, std::nullopt};
    } catch (const ModularImage::bad_reduction&) {
    }
  }

  SparseEchelon<CycField> ech{CycField{}};
  bool done = false;
  for_each_span_row(expr, b, [&](const Poly& row, const std::string&) {
    ech.insert(to_row(bd, row));
    if (ech.rank() == full) {
      done = true;
      return false;
    }
    return true;
  });
  if (done) return {true, RankMode::Exact, std::nullopt};
  for (const Monomial& m : bd.monos) {
    auto res = ech.reduce(to_row(bd, Poly::monomial(m)));
    if (!res.nz.empty()) return {false, RankMode::Exact, m};
  }
  return {true, RankMode::Exact, std::nullopt};
}

std::vector<InvariantRing::BetaEntry> InvariantRing::beta_k_window(int k, int d_lo, int d_hi,
                                                                   RankMode mode) const {
  SpanExpr expr;
  expr.terms.push_back({SpanExpr::Factor{'R', SpanExpr::Factor::PlusPow, k + 1}});
  std::vector<BetaEntry> out;
  for (int d = d_lo; d <= d_hi; ++d) {
    bool contained = true;
    RankMode used = RankMode::Certified;
    for (const Block& b : blocks_of_degree(d)) {
      auto r = block_containment_in(b, expr, mode);
      if (r.mode == RankMode::Exact) used = RankMode::Exact;
      if (!r.contained) {
        contained = false;
        used = RankMode::Exact;
        break;
      }
    }
    if (mode == RankMode::Exact) used = RankMode::Exact;
    out.push_back({d, contained, used});
  }
  return out;
}

int InvariantRing::rank_of_rows(const std::vector<Poly>& rows, const Block& b, RankMode mode,
                                bool* certified) const {
  const BlockData& bd = block_data(b);
  if (certified) *certified = (mode == RankMode::Exact);
  if (mode == RankMode::Exact) {
    SparseEchelon<CycField> ech{CycField{}};
    for (const Poly& r : rows) ech.insert(to_row(bd, r));
    return ech.rank();
  }
  for (int resample = 0; resample < 8; ++resample) {
    try {
      ModularImage img(modular_prime(resample), 3);
      SparseEchelon<PrimeField> ech{PrimeField{img.ell}};
      for (const Poly& r : rows) ech.insert(to_row_mod(bd, r, img));
      int rank = ech.rank();
      if (mode == RankMode::Certified && certified) {
        long upper = std::min((long)rows.size(), (long)bd.monos.size());
        *certified = (rank == upper);
      }
      return rank;
    } catch (const ModularImage::bad_reduction&) {
      continue;  // denominator hit this prime; deterministic re-sample
    }
  }
  throw std::runtime_error("rank_of_rows: persistent denominator collisions");
}

}  // namespace zp3
