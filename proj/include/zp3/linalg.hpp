#ifndef ZP3_LINALG_HPP
#define ZP3_LINALG_HPP

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "zp3/cyclo.hpp"

namespace zp3 {

/// Field of Cyc values at a fixed conductor.
struct CycField {
  long conductor = 3;
  using Elt = Cyc;
  Elt zero() const { return Cyc(0); }
  Elt one() const { return Cyc(1); }
  bool is_zero(const Elt& a) const { return a.is_zero(); }
  Elt add(const Elt& a, const Elt& b) const { return a + b; }
  Elt neg(const Elt& a) const { return -a; }
  Elt mul(const Elt& a, const Elt& b) const { return a * b; }
  Elt inv(const Elt& a) const { return a.inverse(); }
};

/// F_ell with ell < 2^31.
struct PrimeField {
  std::uint64_t ell;
  using Elt = std::uint64_t;
  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  bool is_zero(Elt a) const { return a == 0; }
  Elt add(Elt a, Elt b) const { return (a + b) % ell; }
  Elt neg(Elt a) const { return a == 0 ? 0 : ell - a; }
  Elt mul(Elt a, Elt b) const { return (__uint128_t)a * b % ell; }
  Elt inv(Elt a) const { return mod_inv(a, ell); }
};

/// Sparse row: (column, coefficient), strictly increasing columns.
template <class Fld>
struct SparseRow {
  std::vector<std::pair<int, typename Fld::Elt>> nz;

  bool empty() const { return nz.empty(); }
  int lead() const { return nz.front().first; }
};

/// Incremental echelon form with unit leading coefficients.
template <class Fld>
class SparseEchelon {
 public:
  explicit SparseEchelon(Fld f) : f_(f) {}

  int rank() const { return (int)rows_.size(); }

  /// Residual of row after reduction by the current pivots (normalized no).
  SparseRow<Fld> reduce(SparseRow<Fld> row) const {
    while (!row.nz.empty()) {
      auto it = pivot_.find(row.nz.front().first);
      if (it == pivot_.end()) break;
      axpy(row, f_.neg(row.nz.front().second), rows_[it->second]);
    }
    return row;
  }

  /// Reduce and, if non-zero, add as a new pivot row. True if rank grew.
  bool insert(SparseRow<Fld> row) {
    row = reduce(std::move(row));
    if (row.nz.empty()) return false;
    normalize(row);
    pivot_[row.lead()] = (int)rows_.size();
    rows_.push_back(std::move(row));
    return true;
  }

  bool contains(SparseRow<Fld> row) const { return reduce(std::move(row)).empty(); }

  bool has_pivot(int col) const { return pivot_.count(col) > 0; }

  std::vector<int> pivot_columns() const {
    std::vector<int> cols;
    cols.reserve(rows_.size());
    for (auto& [c, i] : pivot_) cols.push_back(c);
    std::sort(cols.begin(), cols.end());
    return cols;
  }

  const std::vector<SparseRow<Fld>>& rows() const { return rows_; }

 private:
  void normalize(SparseRow<Fld>& row) const {
    auto s = f_.inv(row.nz.front().second);
    for (auto& [c, v] : row.nz) v = f_.mul(v, s);
  }

  // row += s * other
  void axpy(SparseRow<Fld>& row, const typename Fld::Elt& s, const SparseRow<Fld>& other) const {
    std::vector<std::pair<int, typename Fld::Elt>> out;
    out.reserve(row.nz.size() + other.nz.size());
    size_t i = 0, j = 0;
    while (i < row.nz.size() || j < other.nz.size()) {
      if (j == other.nz.size() || (i < row.nz.size() && row.nz[i].first < other.nz[j].first)) {
        out.push_back(row.nz[i++]);
      } else if (i == row.nz.size() || other.nz[j].first < row.nz[i].first) {
        out.emplace_back(other.nz[j].first, f_.mul(s, other.nz[j].second));
        ++j;
      } else {
        auto v = f_.add(row.nz[i].second, f_.mul(s, other.nz[j].second));
        if (!f_.is_zero(v)) out.emplace_back(row.nz[i].first, v);
        ++i, ++j;
      }
    }
    row.nz = std::move(out);
  }

  Fld f_;
  std::unordered_map<int, int> pivot_;   // lead column -> row index
  std::vector<SparseRow<Fld>> rows_;
};

enum class RankMode { Exact, Modular, Certified };

}  // namespace zp3

#endif
