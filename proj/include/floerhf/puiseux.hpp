#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floerhf/rational.hpp"

namespace floerhf::puiseux {

// Bivariate polynomial sum c_ij x^i y^j with exact rational coefficients.
class BivariatePoly {
 public:
  using Key = std::pair<long, long>;  // (i, j)
  std::map<Key, Rat> terms;

  static BivariatePoly constant(const Rat& c);
  static BivariatePoly monomial(const Rat& c, long i, long j);

  bool zero() const { return terms.empty(); }
  void add_term(long i, long j, const Rat& c);
  BivariatePoly operator+(const BivariatePoly& o) const;
  BivariatePoly operator-(const BivariatePoly& o) const;
  BivariatePoly operator*(const BivariatePoly& o) const;
  BivariatePoly pow(long e) const;
  BivariatePoly dy() const;
  BivariatePoly dx() const;
  Rat at(long i, long j) const;
  long deg_y() const;
  long deg_x() const;
  // Order of f(0, y) in y; -1 if f(0, y) == 0.
  long ord_y_at_x0() const;
  bool divisible_by_x() const;
  bool divisible_by_y() const;
  BivariatePoly divide_x() const;
  BivariatePoly divide_y() const;
};

BivariatePoly parse_poly(const std::string& text);
std::string poly_to_string(const BivariatePoly& p);

// Truncated fractional power series (P, d): y = P(z), x = z^d.
struct FracPowerSeries {
  std::vector<std::pair<Rat, Int>> terms;  // (coefficient != 0, exponent), increasing
  Int d = 1;
  std::optional<Int> truncation_order;  // exponents < this bound are complete
  bool swapped = false;                 // branch along x = 0, roles of x,y swapped

  bool operator==(const FracPowerSeries& o) const {
    return terms == o.terms && d == o.d && swapped == o.swapped;
  }
};

// theta in {+1, -1} equivalence of fractional power series.
bool equivalent(const FracPowerSeries& p, const FracPowerSeries& q);

// d_s and the s-truncation from the canonicalization step.
Int d_sub_s(const FracPowerSeries& p, long s);
FracPowerSeries truncate_at(const FracPowerSeries& p, long s);

std::vector<FracPowerSeries> newton_puiseux(const BivariatePoly& f, long order_bound);

struct TruncationResult {
  std::vector<long> r;
  std::vector<FracPowerSeries> truncated;
};
TruncationResult truncation_index(const std::vector<FracPowerSeries>& series);

// Substitute x = z^d, y = P(z) into f; the result's z-order must reach the
// truncation bound. Returns the order of the residual (>= bound on success).
Int residual_order(const BivariatePoly& f, const FracPowerSeries& p, const Int& bound);

}  // namespace floerhf::puiseux
