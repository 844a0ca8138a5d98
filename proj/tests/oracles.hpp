#pragma once

// Independent oracles used by the test suites. These deliberately avoid the
// library's own elimination and homology code paths.

#include <array>
#include <cstdint>
#include <vector>

#include "floerhf/gf2.hpp"
#include "floerhf/rational.hpp"

namespace oracles {

// Naive row reduction over int vectors.
inline std::size_t naive_rank(std::vector<std::vector<int>> m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (m[i][c] % 2 != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    for (std::size_t i = 0; i < rows; ++i)
      if (i != r && m[i][c] % 2 != 0)
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = (m[i][j] + m[r][j]) % 2;
    ++r;
  }
  return r;
}

// The 7-vertex triangulation of the torus (every pair of vertices spans an
// edge; faces {i, i+1, i+3} and {i, i+2, i+3} mod 7).
struct ExplicitComplex {
  int nv;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> tris;
};

inline ExplicitComplex seven_vertex_torus() {
  ExplicitComplex c;
  c.nv = 7;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) c.edges.push_back({i, j});
  auto norm = [](int a) { return ((a % 7) + 7) % 7; };
  for (int i = 0; i < 7; ++i) {
    std::array<int, 3> t1{i, norm(i + 1), norm(i + 3)};
    std::array<int, 3> t2{i, norm(i + 2), norm(i + 3)};
    std::sort(t1.begin(), t1.end());
    std::sort(t2.begin(), t2.end());
    c.tris.push_back(t1);
    c.tris.push_back(t2);
  }
  return c;
}

// Homology ranks of an explicit complex by naive elimination.
inline std::array<std::size_t, 3> naive_homology(const ExplicitComplex& c) {
  std::vector<std::vector<int>> d1(c.edges.size(), std::vector<int>(c.nv, 0));
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    d1[e][c.edges[e][0]] ^= 1;
    d1[e][c.edges[e][1]] ^= 1;
  }
  auto edge_id = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    for (std::size_t e = 0; e < c.edges.size(); ++e)
      if (c.edges[e] == std::array<int, 2>{a, b}) return e;
    return c.edges.size();
  };
  std::vector<std::vector<int>> d2(c.tris.size(), std::vector<int>(c.edges.size(), 0));
  for (std::size_t t = 0; t < c.tris.size(); ++t) {
    auto [a, b, cc] = c.tris[t];
    d2[t][edge_id(a, b)] ^= 1;
    d2[t][edge_id(b, cc)] ^= 1;
    d2[t][edge_id(a, cc)] ^= 1;
  }
  std::size_t r1 = naive_rank(d1), r2 = naive_rank(d2);
  std::size_t h0 = c.nv - r1;
  std::size_t h1 = c.edges.size() - r1 - r2;
  std::size_t h2 = c.tris.size() - r2;
  return {h0, h1, h2};
}

// Multiplicity-sequence delta invariant of one Puiseux branch (d; n_1 < ...).
// Subtractive Euclid over the characteristic exponents; delta = sum m(m-1)/2.
inline floerhf::Int delta_invariant(const floerhf::Int& d,
                                    const std::vector<floerhf::Int>& exps) {
  using floerhf::Int;
  Int delta = 0;
  Int e = d;
  Int prev = 0;
  bool have_prev = false;
  for (const auto& n : exps) {
    Int g = floerhf::gcd(e, n);
    if (g == e) continue;  // non-characteristic term
    Int gap = have_prev ? Int(n - prev) : n;
    Int x = e, y = gap;
    while (x > 0 && y > 0) {
      if (x <= y) {
        delta += x * (x - 1) / 2;
        y -= x;
      } else {
        delta += y * (y - 1) / 2;
        x -= y;
      }
    }
    e = floerhf::gcd(e, n);
    prev = n;
    have_prev = true;
  }
  return delta;
}

// Univariate polynomials over Q for the resultant-based Milnor number oracle.
using QPoly = std::vector<floerhf::Rat>;  // coefficient of x^i at index i

inline QPoly qp_trim(QPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}
inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, floerhf::Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return qp_trim(r);
}
inline QPoly qp_sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), floerhf::Rat(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return qp_trim(a);
}

// Resultant of two polynomials in y whose coefficients are QPoly in x,
// computed via the Sylvester determinant with fraction-free-ish expansion.
// Sizes here are tiny, so Laplace expansion over Q(x) via evaluation and
// interpolation is the simplest exact route.
inline floerhf::Rat qp_eval(const QPoly& p, const floerhf::Rat& x) {
  floerhf::Rat v(0);
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

inline floerhf::Rat det_rat(std::vector<std::vector<floerhf::Rat>> m) {
  floerhf::Rat det(1);
  std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv == n) return floerhf::Rat(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    floerhf::Rat inv = 1 / m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      floerhf::Rat f = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// f given as coefficients in y: f = sum_j coeff[j](x) y^j.
// Returns ord_x Res_y(df/dx, df/dy); equals the Milnor number for the
// fixtures used in the tests (checked against hand values).
inline long milnor_resultant(const std::vector<QPoly>& f) {
  using floerhf::Rat;
  // Partial derivatives.
  std::vector<QPoly> fx, fy;
  for (const auto& cj : f) {
    QPoly d;
    for (std::size_t i = 1; i < cj.size(); ++i) d.push_back(cj[i] * Rat(long(i)));
    fx.push_back(qp_trim(d));
  }
  for (std::size_t j = 1; j < f.size(); ++j) {
    QPoly c = f[j];
    for (auto& q : c) q *= Rat(long(j));
    fy.push_back(qp_trim(c));
  }
  while (!fx.empty() && fx.back().empty()) fx.pop_back();
  while (!fy.empty() && fy.back().empty()) fy.pop_back();
  std::size_t m = fx.size() ? fx.size() - 1 : 0;  // deg_y fx
  std::size_t n = fy.size() ? fy.size() - 1 : 0;
  // Evaluate the Sylvester determinant at sample points and interpolate.
  std::size_t deg_bound = 0;
  for (const auto& c : fx) deg_bound = std::max(deg_bound, c.size());
  for (const auto& c : fy) deg_bound = std::max(deg_bound, c.size());
  std::size_t res_deg = deg_bound * (m + n) + 1;
  std::vector<Rat> xs, ys;
  for (std::size_t k = 0; k <= res_deg; ++k) {
    Rat x0(long(k + 1));
    std::size_t size = m + n;
    if (size == 0) return 0;
    std::vector<std::vector<Rat>> syl(size, std::vector<Rat>(size, Rat(0)));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t j = 0; j < fx.size(); ++j)
        syl[r][r + (m - j)] = qp_eval(fx[j], x0);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t j = 0; j < fy.size(); ++j)
        syl[n + r][r + (n - j)] = qp_eval(fy[j], x0);
    xs.push_back(x0);
    ys.push_back(det_rat(syl));
  }
  // Lagrange interpolation; then the order at x = 0.
  std::size_t npts = xs.size();
  std::vector<Rat> poly(npts, Rat(0));
  for (std::size_t i = 0; i < npts; ++i) {
    std::vector<Rat> basis{Rat(1)};
    Rat denom(1);
    for (std::size_t j = 0; j < npts; ++j) {
      if (j == i) continue;
      std::vector<Rat> next(basis.size() + 1, Rat(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k] -= basis[k] * xs[j];
        next[k + 1] += basis[k];
      }
      basis = next;
      denom *= (xs[i] - xs[j]);
    }
    for (std::size_t k = 0; k < basis.size(); ++k) poly[k] += ys[i] * basis[k] / denom;
  }
  for (std::size_t k = 0; k < poly.size(); ++k)
    if (poly[k] != 0) return long(k);
  return -1;  // identically zero resultant: oracle not applicable
}

}  // namespace oracles
