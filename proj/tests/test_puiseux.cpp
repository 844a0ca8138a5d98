#include "floerhf/puiseux.hpp"

#include "doctest.h"
#include "floerhf/errors.hpp"
#include "oracles.hpp"

using namespace floerhf;
using namespace floerhf::puiseux;

namespace {
FracPowerSeries fps(std::vector<std::pair<long, long>> coeff_exp, long d) {
  FracPowerSeries f;
  for (auto [c, n] : coeff_exp) f.terms.push_back({Rat(c), Int(n)});
  f.d = d;
  return f;
}
}  // namespace

TEST_CASE("parser: examples and round trip") {
  auto p1 = parse_poly("x^2 + y^3");
  CHECK(p1.at(2, 0) == 1);
  CHECK(p1.at(0, 3) == 1);
  CHECK(p1.terms.size() == 2);

  auto p2 = parse_poly("(x-y)*(x+y)");
  CHECK(p2.at(2, 0) == 1);
  CHECK(p2.at(0, 2) == -1);
  CHECK(p2.terms.size() == 2);

  auto p3 = parse_poly("x^2*y - 3/2*y^4");
  CHECK(p3.at(2, 1) == 1);
  CHECK(p3.at(0, 4) == Rat(-3, 2));

  for (const char* s : {"x^2 + y^3", "(x-y)*(x+y)", "x^2*y - 3/2*y^4",
                        "y^3 - x^3*y", "(y^2-x^3)*(y^2-4*x^3)"}) {
    auto q = parse_poly(s);
    CHECK(parse_poly(poly_to_string(q)).terms == q.terms);
  }

  CHECK_THROWS_AS((void)parse_poly("x +"), error);
  CHECK_THROWS_AS((void)parse_poly("x z"), error);
  CHECK_THROWS_AS((void)parse_poly("(x"), error);
}

TEST_CASE("newton_puiseux: cusp, node, and irrational rejection") {
  auto cusp = newton_puiseux(parse_poly("x^2+y^3"), 64);
  REQUIRE(cusp.size() == 1);
  CHECK(cusp[0].d == 3);
  REQUIRE(cusp[0].terms.size() == 1);
  CHECK(cusp[0].terms[0].first == Rat(-1));
  CHECK(cusp[0].terms[0].second == 2);
  // f(z^3, -z^2) = z^6 + (-z^2)^3 = 0 exactly.
  CHECK(residual_order(parse_poly("x^2+y^3"), cusp[0], Int(64)) >= 64);

  auto node = newton_puiseux(parse_poly("x^2-y^2"), 64);
  REQUIRE(node.size() == 2);
  for (const auto& b : node) {
    CHECK(b.d == 1);
    REQUIRE(b.terms.size() == 1);
    CHECK(b.terms[0].second == 1);
  }
  CHECK(node[0].terms[0].first * node[1].terms[0].first == Rat(-1));

  CHECK_THROWS_AS((void)newton_puiseux(parse_poly("x^2+y^2"), 64), error);
  try {
    (void)newton_puiseux(parse_poly("x^2+y^2"), 64);
  } catch (const error& e) {
    CHECK(e.code() == errc::irrational_branch);
  }
}

TEST_CASE("newton_puiseux: squarefree and singular-input validation") {
  CHECK_THROWS_AS((void)newton_puiseux(parse_poly("(y-x)^2"), 64), error);
  try {
    (void)newton_puiseux(parse_poly("(x^2+y^3)^2"), 16);
  } catch (const error& e) {
    CHECK(e.code() == errc::not_squarefree);
  }
  CHECK_THROWS_AS((void)newton_puiseux(parse_poly("x+y+1"), 64), error);
  // x*y is squarefree; both axis branches appear, one swapped.
  auto axes = newton_puiseux(parse_poly("x*y"), 64);
  REQUIRE(axes.size() == 2);
  CHECK(!axes[0].swapped);
  CHECK(axes[1].swapped);
  CHECK(axes[0].terms.empty());
}

TEST_CASE("newton_puiseux: residual vanishes to the order bound on the corpus") {
  const char* corpus[] = {
      "x^2+y^3",  "x^2+y^5",  "x^2+y^7",  "x^2+y^9",   "y^3-x^3*y",
      "y^2-x^4",  "(y^2-x^3)*(y^2-4*x^3)", "(y^2-x^3)*(y^2-x^5)",
      "y^2-2*x*y+x^2-x^3", "(y-x)*(y-2*x)*(y-3*x)",
  };
  for (const char* s : corpus) {
    auto f = parse_poly(s);
    auto branches = newton_puiseux(f, 64);
    long dsum = 0;
    for (const auto& b : branches) {
      CHECK(!b.swapped);
      CHECK(residual_order(f, b, Int(64)) >= 64);
      dsum += b.d.get_si();
    }
    // Sum of the d_j equals the y-order of f(0, y).
    CAPTURE(s);
    CHECK(dsum == f.ord_y_at_x0());
  }
}

TEST_CASE("newton_puiseux: terminating expansion y = x + x^(3/2)") {
  auto f = parse_poly("y^2-2*x*y+x^2-x^3");
  auto b = newton_puiseux(f, 64);
  REQUIRE(b.size() == 1);
  CHECK(b[0].d == 2);
  REQUIRE(b[0].terms.size() == 2);
  CHECK(b[0].terms[0] == std::pair<Rat, Int>(Rat(1), Int(2)));
  CHECK(b[0].terms[1] == std::pair<Rat, Int>(Rat(1), Int(3)));
}

TEST_CASE("equivalent: theta in {+1,-1}") {
  auto a = fps({{1, 1}}, 1);
  CHECK(equivalent(a, a));
  auto b = fps({{-1, 1}}, 1);
  CHECK(!equivalent(a, b));  // theta = -1 needs even d
  auto c = fps({{-1, 1}}, 2);
  auto d = fps({{1, 1}}, 2);
  CHECK(equivalent(c, d));
  // Mixed parity exponents.
  auto e1 = fps({{1, 2}, {1, 3}}, 4);
  auto e2 = fps({{1, 2}, {-1, 3}}, 4);
  CHECK(equivalent(e1, e2));
  auto e3 = fps({{-1, 2}, {1, 3}}, 4);
  CHECK(!equivalent(e1, e3));
}

TEST_CASE("truncation_index: examples") {
  // Single branch (-z^2, 3): r = 1, unchanged.
  {
    auto res = truncation_index({fps({{-1, 2}}, 3)});
    CHECK(res.r == std::vector<long>{1});
    CHECK(res.truncated[0].d == 3);
    CHECK(res.truncated[0].terms.size() == 1);
  }
  // Node branches: first coefficients distinguish, r = 1 each.
  {
    auto res = truncation_index({fps({{1, 1}}, 1), fps({{-1, 1}}, 1)});
    CHECK(res.r == std::vector<long>{1, 1});
  }
  // (z^6 + z^7, 4): d_1 = 2, d_2 = 4, r = 2.
  {
    auto s = fps({{1, 6}, {1, 7}}, 4);
    CHECK(d_sub_s(s, 1) == 2);
    CHECK(d_sub_s(s, 2) == 4);
    auto res = truncation_index({s});
    CHECK(res.r == std::vector<long>{2});
  }
  // The zero branch saturates immediately; a companion forces r past it.
  {
    auto res = truncation_index({fps({}, 1), fps({{1, 1}}, 1)});
    CHECK(res.r[0] <= 1);
    CHECK(res.r[1] == 1);
  }
  // Equivalent inputs are rejected.
  CHECK_THROWS_AS((void)truncation_index({fps({{1, 1}}, 2), fps({{-1, 1}}, 2)}), error);
}

TEST_CASE("truncation respects theta-equivalence") {
  auto p = fps({{1, 2}, {1, 3}}, 4);
  auto q = fps({{1, 2}, {-1, 3}}, 4);  // equivalent via theta = -1
  REQUIRE(equivalent(p, q));
  for (long s = 0; s <= 2; ++s) CHECK(equivalent(truncate_at(p, s), truncate_at(q, s)));
}

TEST_CASE("delta-invariant oracle agrees with hand computations") {
  // (2,3) cusp: delta = 1.
  CHECK(oracles::delta_invariant(3, {Int(2)}) == 1);
  // Cable (z^6+z^7, 4): delta = 8 (gap count of <4,6,13>).
  CHECK(oracles::delta_invariant(4, {Int(6), Int(7)}) == 8);
  // (z^9+z^10, 6): multiplicity sequence [6,3,3,1,1,1], delta = 21.
  CHECK(oracles::delta_invariant(6, {Int(9), Int(10)}) == 21);
}
