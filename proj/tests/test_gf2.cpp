#include "floerhf/gf2.hpp"

#include <random>

#include "doctest.h"
#include "floerhf/errors.hpp"
#include "oracles.hpp"

using namespace floerhf;
using gf2::BitVec;
using gf2::GF2Matrix;

namespace {
GF2Matrix from_rows(const std::vector<std::vector<int>>& rows) {
  std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  GF2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rows[i][j] % 2) m.set(i, j, true);
  return m;
}
}  // namespace

TEST_CASE("rank: identity and all-ones") {
  GF2Matrix id(3, 3);
  for (int i = 0; i < 3; ++i) id.set(i, i, true);
  CHECK(gf2::rank(id) == 3);
  GF2Matrix ones(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ones.set(i, j, true);
  CHECK(gf2::rank(ones) == 1);
}

TEST_CASE("rank agrees with the independent elimination oracle") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::vector<int>> rows(20, std::vector<int>(20));
    for (auto& r : rows)
      for (auto& x : r) x = int(rng() & 1);
    GF2Matrix m = from_rows(rows);
    CHECK(gf2::rank(m) == oracles::naive_rank(rows));
    CHECK(gf2::rank(m) == gf2::rank(m.transpose()));
    CHECK(gf2::rank(m) == gf2::rank(m));  // idempotent
  }
}

TEST_CASE("kernel_basis trivial cases") {
  GF2Matrix zero(2, 3);
  auto k = gf2::kernel_basis(zero);
  CHECK(k.dim() == 3);
  CHECK(k.ambient_dim == 3);
  GF2Matrix id(3, 3);
  for (int i = 0; i < 3; ++i) id.set(i, i, true);
  CHECK(gf2::kernel_basis(id).dim() == 0);
}

TEST_CASE("kernel of [[1,1,0],[0,1,1]] contains (1,1,1), found by brute force") {
  GF2Matrix m = from_rows({{1, 1, 0}, {0, 1, 1}});
  // Brute-force oracle over all 8 vectors.
  std::vector<BitVec> null_vecs;
  for (int mask = 0; mask < 8; ++mask) {
    BitVec v(3);
    for (int i = 0; i < 3; ++i)
      if (mask & (1 << i)) v.set(i, true);
    if (m.apply(v).zero() && mask != 0) null_vecs.push_back(v);
  }
  CHECK(null_vecs.size() == 1);
  CHECK(null_vecs[0].get(0));
  CHECK(null_vecs[0].get(1));
  CHECK(null_vecs[0].get(2));
  auto k = gf2::kernel_basis(m);
  REQUIRE(k.dim() == 1);
  CHECK(k.basis[0] == null_vecs[0]);
}

TEST_CASE("rank-nullity and kernel membership on random matrices") {
  std::mt19937 rng(999);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
    GF2Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() & 1) m.set(i, j, true);
    auto k = gf2::kernel_basis(m);
    CHECK(gf2::rank(m) + k.dim() == c);
    for (const auto& v : k.basis) CHECK(m.apply(v).zero());
  }
}

TEST_CASE("quotient_dim basics and the torus chain complex") {
  gf2::GF2Subspace two;
  two.ambient_dim = 4;
  BitVec a(4), b(4);
  a.set(0, true);
  b.set(1, true);
  two.basis = {a, b};
  CHECK(gf2::quotient_dim(two, two) == 0);
  gf2::GF2Subspace zero;
  zero.ambient_dim = 4;
  CHECK(gf2::quotient_dim(zero, two) == 2);

  gf2::GF2Subspace bad;
  bad.ambient_dim = 4;
  BitVec c(4);
  c.set(2, true);
  bad.basis = {c};
  CHECK_THROWS_AS((void)gf2::quotient_dim(bad, two), error);

  // ker(d1)/im(d2) on the 7-vertex torus has dimension 2.
  auto torus = oracles::seven_vertex_torus();
  GF2Matrix d1(torus.edges.size(), torus.nv);
  for (std::size_t e = 0; e < torus.edges.size(); ++e) {
    d1.set(e, torus.edges[e][0], true);
    d1.set(e, torus.edges[e][1], true);
  }
  auto edge_id = [&](int x, int y) {
    if (x > y) std::swap(x, y);
    for (std::size_t e = 0; e < torus.edges.size(); ++e)
      if (torus.edges[e] == std::array<int, 2>{x, y}) return e;
    return torus.edges.size();
  };
  GF2Matrix d2(torus.tris.size(), torus.edges.size());
  for (std::size_t t = 0; t < torus.tris.size(); ++t) {
    auto [x, y, z] = torus.tris[t];
    d2.set(t, edge_id(x, y), true);
    d2.set(t, edge_id(y, z), true);
    d2.set(t, edge_id(x, z), true);
  }
  // im(d2) <= ker(d1) since d2 * d1 = 0.
  GF2Matrix comp = d2 * d1;
  for (std::size_t r = 0; r < comp.rows(); ++r) CHECK(comp.row(r).zero());
  gf2::GF2Subspace ker = gf2::kernel_basis(d1.transpose());
  gf2::GF2Subspace im = gf2::row_space(d2);
  CHECK(gf2::quotient_dim(im, ker) == 2);
}

TEST_CASE("solve finds solutions exactly when consistent") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    GF2Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() & 1) m.set(i, j, true);
    BitVec want(c);
    for (std::size_t j = 0; j < c; ++j)
      if (rng() & 1) want.set(j, true);
    BitVec b = m.apply(want);
    BitVec x;
    REQUIRE(gf2::solve(m, b, x));
    CHECK(m.apply(x) == b);
  }
}
