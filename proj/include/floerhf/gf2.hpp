#pragma once

#include <cstdint>
#include <vector>

namespace floerhf::gf2 {

// Vector over GF(2), bit-packed into 64-bit words.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    std::uint64_t m = std::uint64_t(1) << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  BitVec& operator^=(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  bool zero() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  // Index of the lowest set bit, or size() if none.
  std::size_t lowest() const;
  bool dot(const BitVec& o) const;

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Dense matrix over GF(2), rows bit-packed.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), row_(rows, BitVec(cols)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return row_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { row_[r].set(c, v); }
  const BitVec& row(std::size_t r) const { return row_[r]; }
  BitVec& row(std::size_t r) { return row_[r]; }

  GF2Matrix transpose() const;
  // Matrix-vector product m * v with v of length cols().
  BitVec apply(const BitVec& v) const;
  GF2Matrix operator*(const GF2Matrix& o) const;
  bool operator==(const GF2Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && row_ == o.row_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BitVec> row_;
};

struct GF2Subspace {
  std::size_t ambient_dim = 0;
  std::vector<BitVec> basis;  // linearly independent, each of length ambient_dim

  std::size_t dim() const { return basis.size(); }
};

std::size_t rank(const GF2Matrix& m);
GF2Subspace kernel_basis(const GF2Matrix& m);
GF2Subspace row_space(const GF2Matrix& m);

// dim(inside) - dim(sub); throws NotContained unless span(sub) <= span(inside).
std::size_t quotient_dim(const GF2Subspace& sub, const GF2Subspace& inside);

// Echelonized basis for deterministic membership tests and coordinates.
class Echelon {
 public:
  explicit Echelon(std::size_t ambient) : ambient_(ambient) {}
  // Returns true if v was independent of the rows inserted so far.
  bool insert(BitVec v);
  // True if v lies in the span.
  bool contains(BitVec v) const;
  // Reduce v modulo the span (deterministic canonical representative).
  BitVec reduce(BitVec v) const;
  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return ambient_; }

 private:
  std::size_t ambient_;
  std::vector<BitVec> rows_;          // echelon rows, pivot columns strictly increasing
  std::vector<std::size_t> pivots_;   // pivot column of each row
};

// Solve a * x = b; returns true and writes a solution into x if consistent.
bool solve(const GF2Matrix& a, const BitVec& b, BitVec& x);

}  // namespace floerhf::gf2
