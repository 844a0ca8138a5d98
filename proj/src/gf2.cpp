#include "floerhf/gf2.hpp"

#include <bit>

#include "floerhf/errors.hpp"

namespace floerhf::gf2 {

std::size_t BitVec::lowest() const {
  for (std::size_t k = 0; k * 64 < n_; ++k) {
    if (w_[k]) {
      std::size_t i = k * 64 + std::countr_zero(w_[k]);
      return i < n_ ? i : n_;
    }
  }
  return n_;
}

bool BitVec::dot(const BitVec& o) const {
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
  return std::popcount(acc) & 1;
}

GF2Matrix GF2Matrix::transpose() const {
  GF2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

BitVec GF2Matrix::apply(const BitVec& v) const {
  BitVec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (row_[r].dot(v)) out.set(r, true);
  return out;
}

GF2Matrix GF2Matrix::operator*(const GF2Matrix& o) const {
  GF2Matrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k)
      if (get(r, k)) out.row(r) ^= o.row(k);
  return out;
}

// Gaussian elimination, leftmost pivot / topmost row, so the echelon form
// (and with it every representative downstream) is reproducible.
namespace {
std::vector<BitVec> echelon_rows(const GF2Matrix& m) {
  std::vector<BitVec> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  std::size_t done = 0;
  for (std::size_t col = 0; col < m.cols() && done < rows.size(); ++col) {
    std::size_t piv = rows.size();
    for (std::size_t r = done; r < rows.size(); ++r)
      if (rows[r].get(col)) {
        piv = r;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[done], rows[piv]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != done && rows[r].get(col)) rows[r] ^= rows[done];
    ++done;
  }
  rows.resize(done);
  return rows;
}
}  // namespace

std::size_t rank(const GF2Matrix& m) { return echelon_rows(m).size(); }

GF2Subspace kernel_basis(const GF2Matrix& m) {
  // Eliminate on the transpose-augmented identity: standard null space extraction.
  std::size_t n = m.cols();
  GF2Subspace ker;
  ker.ambient_dim = n;
  // Column echelon via row echelon of the transpose, tracking combinations.
  std::vector<BitVec> work, comb;
  for (std::size_t c = 0; c < n; ++c) {
    BitVec col(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (m.get(r, c)) col.set(r, true);
    BitVec e(n);
    e.set(c, true);
    // Reduce col against processed columns.
    for (std::size_t k = 0; k < work.size(); ++k) {
      std::size_t p = work[k].lowest();
      if (p < col.size() && col.get(p)) {
        col ^= work[k];
        e ^= comb[k];
      }
    }
    if (col.zero()) {
      ker.basis.push_back(e);
    } else {
      work.push_back(col);
      comb.push_back(e);
      // Keep work rows pivot-sorted for determinism.
      for (std::size_t k = work.size(); k-- > 1;)
        if (work[k].lowest() < work[k - 1].lowest()) {
          std::swap(work[k], work[k - 1]);
          std::swap(comb[k], comb[k - 1]);
        }
    }
  }
  return ker;
}

GF2Subspace row_space(const GF2Matrix& m) {
  GF2Subspace s;
  s.ambient_dim = m.cols();
  s.basis = echelon_rows(m);
  return s;
}

std::size_t quotient_dim(const GF2Subspace& sub, const GF2Subspace& inside) {
  if (sub.ambient_dim != inside.ambient_dim)
    throw error(errc::not_contained, "ambient dimensions differ");
  Echelon ech(inside.ambient_dim);
  for (const auto& v : inside.basis) ech.insert(v);
  for (const auto& v : sub.basis)
    if (!ech.contains(v))
      throw error(errc::not_contained, "sub is not contained in inside");
  Echelon sch(sub.ambient_dim);
  std::size_t sdim = 0;
  for (const auto& v : sub.basis)
    if (sch.insert(v)) ++sdim;
  return ech.dim() - sdim;
}

bool Echelon::insert(BitVec v) {
  v = reduce(v);
  std::size_t p = v.lowest();
  if (p == v.size()) return false;
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
  rows_.insert(rows_.begin() + pos, v);
  pivots_.insert(pivots_.begin() + pos, p);
  // Back-substitute above rows for a reduced echelon set.
  for (std::size_t k = 0; k < pos; ++k)
    if (rows_[k].get(p)) rows_[k] ^= rows_[pos];
  return true;
}

bool Echelon::contains(BitVec v) const { return reduce(std::move(v)).zero(); }

BitVec Echelon::reduce(BitVec v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if (v.get(pivots_[k])) v ^= rows_[k];
  return v;
}

bool solve(const GF2Matrix& a, const BitVec& b, BitVec& x) {
  std::size_t n = a.cols();
  // Augment rows with b-column and eliminate.
  std::vector<BitVec> rows;
  rows.reserve(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    BitVec v(n + 1);
    for (std::size_t c = 0; c < n; ++c)
      if (a.get(r, c)) v.set(c, true);
    if (b.get(r)) v.set(n, true);
    rows.push_back(v);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t done = 0;
  for (std::size_t col = 0; col < n && done < rows.size(); ++col) {
    std::size_t piv = rows.size();
    for (std::size_t r = done; r < rows.size(); ++r)
      if (rows[r].get(col)) {
        piv = r;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[done], rows[piv]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != done && rows[r].get(col)) rows[r] ^= rows[done];
    pivot_col.push_back(col);
    ++done;
  }
  for (std::size_t r = done; r < rows.size(); ++r)
    if (rows[r].get(n)) return false;
  x = BitVec(n);
  for (std::size_t k = 0; k < done; ++k)
    if (rows[k].get(n)) x.set(pivot_col[k], true);
  return true;
}

}  // namespace floerhf::gf2
