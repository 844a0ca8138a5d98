#include "floerhf/puiseux.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "floerhf/errors.hpp"

namespace floerhf::puiseux {

BivariatePoly BivariatePoly::constant(const Rat& c) {
  BivariatePoly p;
  p.add_term(0, 0, c);
  return p;
}
BivariatePoly BivariatePoly::monomial(const Rat& c, long i, long j) {
  BivariatePoly p;
  p.add_term(i, j, c);
  return p;
}
void BivariatePoly::add_term(long i, long j, const Rat& c) {
  if (c == 0) return;
  auto it = terms.find({i, j});
  if (it == terms.end()) {
    terms[{i, j}] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}
BivariatePoly BivariatePoly::operator+(const BivariatePoly& o) const {
  BivariatePoly r = *this;
  for (const auto& [k, c] : o.terms) r.add_term(k.first, k.second, c);
  return r;
}
BivariatePoly BivariatePoly::operator-(const BivariatePoly& o) const {
  BivariatePoly r = *this;
  for (const auto& [k, c] : o.terms) r.add_term(k.first, k.second, -c);
  return r;
}
BivariatePoly BivariatePoly::operator*(const BivariatePoly& o) const {
  BivariatePoly r;
  for (const auto& [k1, c1] : terms)
    for (const auto& [k2, c2] : o.terms)
      r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
  return r;
}
BivariatePoly BivariatePoly::pow(long e) const {
  BivariatePoly r = constant(1);
  BivariatePoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}
BivariatePoly BivariatePoly::dy() const {
  BivariatePoly r;
  for (const auto& [k, c] : terms)
    if (k.second > 0) r.add_term(k.first, k.second - 1, c * Rat(k.second));
  return r;
}
BivariatePoly BivariatePoly::dx() const {
  BivariatePoly r;
  for (const auto& [k, c] : terms)
    if (k.first > 0) r.add_term(k.first - 1, k.second, c * Rat(k.first));
  return r;
}
Rat BivariatePoly::at(long i, long j) const {
  auto it = terms.find({i, j});
  return it == terms.end() ? Rat(0) : it->second;
}
long BivariatePoly::deg_y() const {
  long d = -1;
  for (const auto& [k, c] : terms) d = std::max(d, k.second);
  return d;
}
long BivariatePoly::deg_x() const {
  long d = -1;
  for (const auto& [k, c] : terms) d = std::max(d, k.first);
  return d;
}
long BivariatePoly::ord_y_at_x0() const {
  long o = -1;
  for (const auto& [k, c] : terms)
    if (k.first == 0 && (o < 0 || k.second < o)) o = k.second;
  return o;
}
bool BivariatePoly::divisible_by_x() const {
  for (const auto& [k, c] : terms)
    if (k.first == 0) return false;
  return !terms.empty();
}
bool BivariatePoly::divisible_by_y() const {
  for (const auto& [k, c] : terms)
    if (k.second == 0) return false;
  return !terms.empty();
}
BivariatePoly BivariatePoly::divide_x() const {
  BivariatePoly r;
  for (const auto& [k, c] : terms) r.add_term(k.first - 1, k.second, c);
  return r;
}
BivariatePoly BivariatePoly::divide_y() const {
  BivariatePoly r;
  for (const auto& [k, c] : terms) r.add_term(k.first, k.second - 1, c);
  return r;
}

// ---------------------------------------------------------------------------
// Parser: coefficients are integers or integer/integer, variables x and y,
// operators + - * ^ and parentheses. '^' takes a nonnegative integer.

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << msg << " at position " << pos;
    throw error(errc::syntax_error, os.str());
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }
  Int integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return Int(s.substr(start, pos - start));
  }

  BivariatePoly expr() {
    BivariatePoly acc;
    bool neg = eat('-');
    acc = term();
    if (neg) acc = BivariatePoly() - acc;
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        break;
    }
    return acc;
  }
  BivariatePoly term() {
    BivariatePoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }
  BivariatePoly factor() {
    BivariatePoly base = atom();
    while (eat('^')) {
      Int e = integer();
      if (e < 0 || !e.fits_slong_p()) fail("exponent out of range");
      base = base.pow(e.get_si());
    }
    return base;
  }
  BivariatePoly atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      BivariatePoly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos;
      return BivariatePoly() - atom();
    }
    if (c == 'x') {
      ++pos;
      return BivariatePoly::monomial(Rat(1), 1, 0);
    }
    if (c == 'y') {
      ++pos;
      return BivariatePoly::monomial(Rat(1), 0, 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = integer();
      if (peek('/')) {
        ++pos;
        Int den = integer();
        if (den == 0) fail("zero denominator");
        return BivariatePoly::constant(make_rat(num, den));
      }
      return BivariatePoly::constant(Rat(num));
    }
    fail("unexpected character");
  }
};

}  // namespace

BivariatePoly parse_poly(const std::string& text) {
  Parser p(text);
  BivariatePoly result = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return result;
}

std::string poly_to_string(const BivariatePoly& p) {
  if (p.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : p.terms) {
    Rat a = c;
    if (!first) {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    } else if (a < 0) {
      os << "-";
      a = -a;
    }
    first = false;
    bool has_var = k.first > 0 || k.second > 0;
    if (a != 1 || !has_var) {
      os << a.get_str();
      if (has_var) os << "*";
    }
    if (k.first > 0) {
      os << "x";
      if (k.first > 1) os << "^" << k.first;
      if (k.second > 0) os << "*";
    }
    if (k.second > 0) {
      os << "y";
      if (k.second > 1) os << "^" << k.second;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Fractional power series helpers.

bool equivalent(const FracPowerSeries& p, const FracPowerSeries& q) {
  if (p.d != q.d || p.swapped != q.swapped || p.terms.size() != q.terms.size())
    return false;
  for (std::size_t i = 0; i < p.terms.size(); ++i)
    if (p.terms[i].second != q.terms[i].second) return false;
  // theta = +1
  bool same = true;
  for (std::size_t i = 0; i < p.terms.size(); ++i)
    if (p.terms[i].first != q.terms[i].first) {
      same = false;
      break;
    }
  if (same) return true;
  // theta = -1 requires even d.
  if (p.d % 2 != 0) return false;
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    Rat want = (p.terms[i].second % 2 != 0) ? Rat(-p.terms[i].first) : p.terms[i].first;
    if (q.terms[i].first != want) return false;
  }
  return true;
}

Int d_sub_s(const FracPowerSeries& p, long s) {
  Int g = p.d;
  long upto = std::min<long>(s, long(p.terms.size()));
  for (long i = 0; i < upto; ++i) g = gcd(g, p.terms[i].second);
  return p.d / g;
}

FracPowerSeries truncate_at(const FracPowerSeries& p, long s) {
  FracPowerSeries t;
  t.swapped = p.swapped;
  Int ds = d_sub_s(p, s);
  t.d = ds;
  long upto = std::min<long>(s, long(p.terms.size()));
  for (long i = 0; i < upto; ++i)
    t.terms.push_back({p.terms[i].first, p.terms[i].second * ds / p.d});
  t.truncation_order = std::nullopt;
  return t;
}

// ---------------------------------------------------------------------------
// Squarefreeness via a bivariate gcd (Euclid on primitive parts in (Q[x])[y]).

namespace {

using XPoly = std::vector<Rat>;  // univariate in x

XPoly xp_trim(XPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}
XPoly xp_mul(const XPoly& a, const XPoly& b) {
  if (a.empty() || b.empty()) return {};
  XPoly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return xp_trim(r);
}
// Remainder of a by b (b nonzero).
XPoly xp_rem(XPoly a, const XPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a = xp_trim(a);
  }
  return a;
}
XPoly xp_gcd(XPoly a, XPoly b) {
  a = xp_trim(a);
  b = xp_trim(b);
  while (!b.empty()) {
    XPoly r = xp_rem(a, b);
    a = b;
    b = r;
  }
  if (!a.empty()) {
    Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

std::vector<XPoly> to_ypoly(const BivariatePoly& f) {
  std::vector<XPoly> out(std::max<long>(f.deg_y() + 1, 0));
  for (const auto& [k, c] : f.terms) {
    auto& p = out[k.second];
    if (long(p.size()) <= k.first) p.resize(k.first + 1, Rat(0));
    p[k.first] = c;
  }
  for (auto& p : out) p = xp_trim(p);
  return out;
}

std::vector<XPoly> yp_trim(std::vector<XPoly> p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
  return p;
}

XPoly yp_content(const std::vector<XPoly>& p) {
  XPoly g;
  for (const auto& c : p) g = xp_gcd(g, c);
  return g;
}

std::vector<XPoly> yp_scale(const std::vector<XPoly>& p, const XPoly& s) {
  std::vector<XPoly> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = xp_mul(p[i], s);
  return r;
}

std::vector<XPoly> yp_sub(std::vector<XPoly> a, const std::vector<XPoly>& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    XPoly& x = a[i];
    const XPoly& y = b[i];
    if (x.size() < y.size()) x.resize(y.size(), Rat(0));
    for (std::size_t k = 0; k < y.size(); ++k) x[k] -= y[k];
    x = xp_trim(x);
  }
  return yp_trim(a);
}

// Divide out the content (exact division of each coefficient by g).
XPoly xp_div_exact(const XPoly& a, const XPoly& g) {
  if (a.empty()) return {};
  XPoly q(a.size() - g.size() + 1, Rat(0));
  XPoly rem = a;
  while (rem.size() >= g.size() && !rem.empty()) {
    Rat f = rem.back() / g.back();
    std::size_t off = rem.size() - g.size();
    q[off] = f;
    for (std::size_t i = 0; i < g.size(); ++i) rem[off + i] -= f * g[i];
    rem = xp_trim(rem);
  }
  if (!rem.empty()) throw error(errc::invalid_input, "inexact polynomial division");
  return xp_trim(q);
}

std::vector<XPoly> yp_primitive(const std::vector<XPoly>& p) {
  XPoly c = yp_content(p);
  if (c.empty()) return {};
  std::vector<XPoly> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[i] = p[i].empty() ? XPoly{} : xp_div_exact(p[i], c);
  return r;
}

// Pseudo-remainder in (Q[x])[y].
std::vector<XPoly> yp_prem(std::vector<XPoly> a, const std::vector<XPoly>& b) {
  a = yp_trim(a);
  if (a.size() < b.size()) return a;
  const XPoly& lb = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t off = a.size() - b.size();
    XPoly la = a.back();
    // a = lb * a - la * y^off * b
    a = yp_scale(a, lb);
    std::vector<XPoly> shifted(off + b.size());
    for (std::size_t i = 0; i < b.size(); ++i) shifted[off + i] = xp_mul(b[i], la);
    a = yp_sub(a, shifted);
    a = yp_trim(a);
  }
  return a;
}

// gcd in (Q[x])[y] up to units; returns total degree 0 iff inputs are coprime.
std::vector<XPoly> yp_gcd(std::vector<XPoly> a, std::vector<XPoly> b) {
  a = yp_trim(a);
  b = yp_trim(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  XPoly ca = yp_content(a), cb = yp_content(b);
  XPoly cg = xp_gcd(ca, cb);
  a = yp_primitive(a);
  b = yp_primitive(b);
  while (true) {
    if (b.empty()) break;
    if (b.size() == 1) {
      // Nonzero constant in y: primitive => unit content, gcd is cg.
      b.clear();
      a = {XPoly{Rat(1)}};
      break;
    }
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<XPoly> r = yp_prem(a, b);
    a = b;
    b = r.empty() ? r : yp_primitive(r);
  }
  return yp_scale(a, cg);
}

// gcd(f, df/dy) alone keeps every x-only factor of f, so a squarefree input
// with a branch along x = 0 would be rejected; intersect with df/dx as well.
bool is_squarefree(const BivariatePoly& f) {
  auto g = yp_gcd(to_ypoly(f), to_ypoly(f.dy()));
  g = yp_trim(g);
  if (g.empty()) return false;
  if (!(g.size() == 1 && g[0].size() == 1)) {
    BivariatePoly fx = f.dx();
    if (fx.zero()) return false;
    auto gb = to_ypoly(fx);
    g = yp_trim(yp_gcd(g, gb));
    if (g.empty()) return false;
    return g.size() == 1 && g[0].size() == 1;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rational root extraction for the edge polynomials.

std::vector<Int> divisors_of(Int n) {
  if (n < 0) n = -n;
  if (n == 0) return {};
  std::vector<std::pair<Int, int>> factors;
  Int m = n;
  for (Int p = 2; p * p <= m && p < 1000000; ++p) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      factors.push_back({p, e});
    }
  }
  if (m > 1) {
    if (mpz_probab_prime_p(m.get_mpz_t(), 30) == 0)
      throw error(errc::invalid_input, "coefficient too large to factor");
    factors.push_back({m, 1});
  }
  std::vector<Int> divs{1};
  for (const auto& [p, e] : factors) {
    std::size_t base = divs.size();
    Int pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// All rational roots with multiplicity of a polynomial with Rat coefficients.
std::vector<std::pair<Rat, int>> rational_roots(std::vector<Rat> poly) {
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  if (poly.empty()) throw error(errc::invalid_input, "zero polynomial");
  // Clear denominators.
  Int den = 1;
  for (const auto& c : poly) den = lcm(den, c.get_den());
  std::vector<Int> ip(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Rat v = poly[i] * Rat(den);
    ip[i] = v.get_num();
  }
  // Strip powers of u (u = 0 is never needed by the caller).
  std::size_t shift = 0;
  while (shift < ip.size() && ip[shift] == 0) ++shift;
  ip.erase(ip.begin(), ip.begin() + shift);
  std::vector<std::pair<Rat, int>> roots;
  if (ip.size() <= 1) return roots;
  auto eval = [&](const std::vector<Int>& p, const Rat& x) {
    Rat v(0);
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + Rat(p[i]);
    return v;
  };
  std::vector<Int> nums = divisors_of(ip.front());
  std::vector<Int> dens = divisors_of(ip.back());
  std::vector<Rat> candidates;
  for (const auto& nu : nums)
    for (const auto& de : dens) {
      Rat c = make_rat(nu, de);
      candidates.push_back(c);
      candidates.push_back(-c);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<Rat> cur(ip.size());
  for (std::size_t i = 0; i < ip.size(); ++i) cur[i] = Rat(ip[i]);
  for (const auto& c : candidates) {
    int mult = 0;
    for (;;) {
      // Evaluate and deflate while c is a root.
      Rat v(0);
      for (std::size_t i = cur.size(); i-- > 0;) v = v * c + cur[i];
      if (v != 0 || cur.size() <= 1) break;
      // Synthetic division by (u - c).
      std::vector<Rat> next(cur.size() - 1);
      Rat carry = cur.back();
      for (std::size_t i = cur.size() - 1; i-- > 0;) {
        next[i] = carry;
        carry = cur[i] + carry * c;
      }
      cur = next;
      ++mult;
    }
    if (mult > 0) roots.push_back({c, mult});
    (void)eval;
  }
  // Remaining degree > 0 means irrational (or complex) roots exist.
  if (cur.size() > 1) throw error(errc::irrational_branch, "edge polynomial has no rational splitting");
  return roots;
}

// Rational p-th root of u, if any.
std::optional<Rat> rational_root_p(const Rat& u, long p) {
  if (p == 1) return u;
  if (u == 0) return Rat(0);
  bool neg = u < 0;
  if (neg && p % 2 == 0) return std::nullopt;
  Int num = abs(u.get_num()), den = u.get_den();
  Int rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), p)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), p)) return std::nullopt;
  Rat r = make_rat(rn, rd);
  if (neg) r = -r;
  return r;
}

// ---------------------------------------------------------------------------
// Newton polygon recursion.

struct QTerm {
  Rat coeff;
  Rat expo;
};
using QSeries = std::vector<QTerm>;  // increasing exponents

struct NPState {
  long order_bound;
};

// Truncated power series solve for y-regular order-1 polynomials:
// F(0,0) = 0, dF/dy(0,0) != 0. Returns y(x) mod x^N as dense coefficients.
std::vector<Rat> hensel_tail(const BivariatePoly& F, long N) {
  auto yp = to_ypoly(F);
  auto ser_mul = [&](const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r(N, Rat(0));
    for (long i = 0; i < long(a.size()) && i < N; ++i) {
      if (a[i] == 0) continue;
      for (long j = 0; j < long(b.size()) && i + j < N; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
  };
  auto ser_inv = [&](const std::vector<Rat>& u) {
    std::vector<Rat> v(N, Rat(0));
    v[0] = 1 / u[0];
    for (long n = 1; n < N; ++n) {
      Rat acc(0);
      for (long k = 1; k <= n; ++k)
        if (k < long(u.size())) acc += u[k] * v[n - k];
      v[n] = -acc * v[0];
    }
    return v;
  };
  auto eval_F = [&](const std::vector<XPoly>& yc, const std::vector<Rat>& s) {
    std::vector<Rat> acc(N, Rat(0));
    for (std::size_t j = yc.size(); j-- > 0;) {
      acc = ser_mul(acc, s);
      for (long i = 0; i < long(yc[j].size()) && i < N; ++i) acc[i] += yc[j][i];
    }
    return acc;
  };
  auto ypd = to_ypoly(F.dy());
  std::vector<Rat> s(N, Rat(0));
  for (int iter = 0; iter < 64; ++iter) {
    auto Fs = eval_F(yp, s);
    bool zero = true;
    for (const auto& c : Fs)
      if (c != 0) {
        zero = false;
        break;
      }
    if (zero) return s;
    auto Fys = eval_F(ypd, s);
    auto inv = ser_inv(Fys);
    auto corr = ser_mul(Fs, inv);
    for (long i = 0; i < N; ++i) s[i] -= corr[i];
  }
  throw error(errc::invalid_input, "series iteration failed to converge");
}

std::vector<QSeries> np_rec(const BivariatePoly& F0, const NPState& st, int depth) {
  if (depth > 200) throw error(errc::invalid_input, "expansion recursion too deep");
  BivariatePoly F = F0;
  std::vector<QSeries> out;
  if (F.zero()) throw error(errc::invalid_input, "zero polynomial in expansion");
  if (F.divisible_by_y()) {
    out.push_back(QSeries{});  // the branch terminates exactly here
    F = F.divide_y();
    if (F.divisible_by_y())
      throw error(errc::not_squarefree, "repeated exact branch");
  }
  if (F.at(0, 0) != 0) return out;

  // Regular case: unique tail with integer exponents.
  if (F.at(0, 1) != 0) {
    auto tail = hensel_tail(F, st.order_bound);
    QSeries s;
    for (long i = 1; i < long(tail.size()); ++i)
      if (tail[i] != 0) s.push_back({tail[i], Rat(i)});
    out.push_back(std::move(s));
    return out;
  }

  // Newton polygon: minimal i per j, lower hull, negative-slope edges.
  std::map<long, long> min_i;  // j -> min i
  for (const auto& [k, c] : F.terms) {
    auto it = min_i.find(k.second);
    if (it == min_i.end() || k.first < it->second) min_i[k.second] = k.first;
  }
  std::vector<std::pair<long, long>> pts(min_i.begin(), min_i.end());  // (j, i), j asc
  std::vector<std::pair<long, long>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      // Keep the hull convex from below: cross((b-a),(p-a)) <= 0 removes b.
      long cross = (b.first - a.first) * (p.second - a.second) -
                   (b.second - a.second) * (p.first - a.first);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    auto [j1, i1] = hull[k];
    auto [j2, i2] = hull[k + 1];
    if (i2 >= i1) continue;  // only negative slopes give branches at the origin
    long dj = j2 - j1, di = i1 - i2;
    long g = std::gcd(dj, di);
    long p = dj / g, q = di / g;
    // Edge polynomial in u = c^p.
    std::vector<Rat> phi;
    for (const auto& [key, c] : F.terms) {
      long i = key.first, j = key.second;
      if ((i - i1) * dj != -(j - j1) * di) continue;  // not on the edge line
      if (j < j1 || j > j2) continue;
      long step = (j - j1) / p;
      if (long(phi.size()) <= step) phi.resize(step + 1, Rat(0));
      phi[step] += c;
    }
    for (const auto& [u0, mult] : rational_roots(phi)) {
      auto croot = rational_root_p(u0, p);
      if (!croot) throw error(errc::irrational_branch, "branch coefficient is irrational");
      Rat c = *croot;
      if (p % 2 == 0 && c < 0) c = -c;  // conjugate representative
      // F1(x, y) = F(x^p, x^q (c + y)) / x^m.
      BivariatePoly F1;
      for (const auto& [key, co] : F.terms) {
        long i = key.first, j = key.second;
        // expand (c + y)^j
        Rat binom(1);
        Rat cpow(1);
        // iterate k = j down to 0 with binomial coefficients
        std::vector<Rat> cpows(j + 1);
        cpows[0] = Rat(1);
        for (long k = 1; k <= j; ++k) cpows[k] = cpows[k - 1] * c;
        Rat ch(1);
        for (long k = 0; k <= j; ++k) {
          if (k > 0) ch = ch * Rat(j - k + 1) / Rat(k);
          F1.add_term(p * i + q * j, k, co * ch * cpows[j - k]);
        }
        (void)binom;
        (void)cpow;
      }
      long m = -1;
      for (const auto& [key, co] : F1.terms) {
        long tot = key.first;
        if (m < 0 || tot < m) m = tot;
      }
      // Divide by the largest x power dividing F1.
      long shift = 1 << 30;
      for (const auto& [key, co] : F1.terms) shift = std::min(shift, key.first);
      BivariatePoly F1s;
      for (const auto& [key, co] : F1.terms) F1s.add_term(key.first - shift, key.second, co);
      (void)m;
      auto subs = np_rec(F1s, st, depth + 1);
      for (auto& sub : subs) {
        QSeries s;
        s.push_back({c, Rat(q, p)});
        for (const auto& t : sub) {
          Rat e = Rat(q, p) + t.expo / Rat(p);
          e.canonicalize();
          s.push_back({t.coeff, e});
        }
        // Drop a zero-coefficient head (cannot happen: c != 0).
        out.push_back(std::move(s));
      }
      (void)mult;
    }
  }
  return out;
}

FracPowerSeries series_from_q(const QSeries& s, long order_bound, bool swapped) {
  FracPowerSeries f;
  f.swapped = swapped;
  Int d = 1;
  for (const auto& t : s) d = lcm(d, t.expo.get_den());
  // Exponents retained below the bound must already determine d, otherwise
  // the characteristic data is incomplete.
  Int d_kept = 1;
  for (const auto& t : s) {
    Rat n = t.expo * Rat(d);
    if (n.get_den() != 1) throw error(errc::invalid_input, "exponent scaling failed");
    if (n.get_num() < order_bound) d_kept = lcm(d_kept, t.expo.get_den());
  }
  if (d_kept != d)
    throw error(errc::order_bound_too_small,
                "characteristic exponents are not separated below the order bound");
  f.d = d;
  for (const auto& t : s) {
    Rat n = t.expo * Rat(d);
    Int ni = n.get_num();
    if (ni < order_bound) f.terms.push_back({t.coeff, ni});
  }
  f.truncation_order = Int(order_bound);
  return f;
}

}  // namespace

std::vector<FracPowerSeries> newton_puiseux(const BivariatePoly& f, long order_bound) {
  if (order_bound < 2) throw error(errc::order_bound_too_small, "order bound must be at least 2");
  if (f.zero()) throw error(errc::invalid_input, "zero polynomial");
  if (f.at(0, 0) != 0) throw error(errc::invalid_input, "f(0,0) != 0");
  if (!is_squarefree(f)) throw error(errc::not_squarefree, "gcd(f, df/dy) is not constant");

  BivariatePoly g = f;
  std::vector<FracPowerSeries> out;
  if (g.divisible_by_y()) {
    FracPowerSeries axis;
    axis.d = 1;
    axis.truncation_order = Int(order_bound);
    out.push_back(axis);
    g = g.divide_y();
  }
  if (g.divisible_by_x()) {
    FracPowerSeries axis;
    axis.d = 1;
    axis.swapped = true;
    axis.truncation_order = Int(order_bound);
    out.push_back(axis);
    g = g.divide_x();
  }
  if (g.divisible_by_x() || g.divisible_by_y())
    throw error(errc::not_squarefree, "axis factor is repeated");

  if (g.at(0, 0) == 0) {
    NPState st{order_bound};
    for (const auto& s : np_rec(g, st, 0)) out.push_back(series_from_q(s, order_bound, false));
  }

  // Deterministic order: by d, then exponent vector, then coefficients.
  std::sort(out.begin(), out.end(), [](const FracPowerSeries& a, const FracPowerSeries& b) {
    if (a.swapped != b.swapped) return !a.swapped;
    if (a.d != b.d) return a.d < b.d;
    if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size();
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
      if (a.terms[i].second != b.terms[i].second) return a.terms[i].second < b.terms[i].second;
      if (a.terms[i].first != b.terms[i].first) return a.terms[i].first < b.terms[i].first;
    }
    return false;
  });
  return out;
}

TruncationResult truncation_index(const std::vector<FracPowerSeries>& series) {
  for (const auto& p : series) {
    if (p.d < 1) throw error(errc::malformed_data, "series with d < 1");
    Int g = p.d;
    Int prev = 0;
    for (const auto& [c, n] : p.terms) {
      if (c == 0) throw error(errc::malformed_data, "zero coefficient in series");
      if (n <= prev) throw error(errc::malformed_data, "exponents must increase");
      prev = n;
      g = gcd(g, n);
    }
    if (g != 1) throw error(errc::malformed_data, "gcd(d, exponents) must be 1");
  }
  for (std::size_t i = 0; i < series.size(); ++i)
    for (std::size_t j = i + 1; j < series.size(); ++j)
      if (equivalent(series[i], series[j]))
        throw error(errc::not_separated, "two branches are equivalent");
  long max_terms = 0;
  for (const auto& p : series) max_terms = std::max(max_terms, long(p.terms.size()));
  TruncationResult res;
  for (std::size_t j = 0; j < series.size(); ++j) {
    const auto& pj = series[j];
    long found = -1;
    for (long s = 0; s <= max_terms; ++s) {
      if (d_sub_s(pj, s) != pj.d) continue;
      bool distinct = true;
      FracPowerSeries tj = truncate_at(pj, s);
      for (std::size_t k = 0; k < series.size(); ++k) {
        if (k == j) continue;
        if (equivalent(tj, truncate_at(series[k], s))) {
          distinct = false;
          break;
        }
      }
      if (distinct) {
        found = s;
        break;
      }
    }
    if (found < 0)
      throw error(errc::not_separated,
                  "available terms do not distinguish the branches");
    res.r.push_back(found);
    res.truncated.push_back(truncate_at(pj, found));
  }
  return res;
}

Int residual_order(const BivariatePoly& f, const FracPowerSeries& p, const Int& bound) {
  if (!bound.fits_slong_p()) throw error(errc::invalid_input, "bound too large");
  long N = bound.get_si();
  // Dense series in z modulo z^N.
  auto mul = [&](const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r(N, Rat(0));
    for (long i = 0; i < N; ++i) {
      if (a[i] == 0) continue;
      for (long j = 0; i + j < N; ++j)
        if (b[j] != 0) r[i + j] += a[i] * b[j];
    }
    return r;
  };
  std::vector<Rat> x(N, Rat(0)), y(N, Rat(0)), one(N, Rat(0));
  one[0] = 1;
  if (!p.d.fits_slong_p()) throw error(errc::invalid_input, "d too large");
  long d = p.d.get_si();
  if (d < N) x[d] = 1;
  for (const auto& [c, n] : p.terms)
    if (n < N) y[n.get_si()] += c;
  // Horner over j with x-polynomials evaluated as series.
  long dy = f.deg_y();
  std::vector<Rat> acc(N, Rat(0));
  for (long j = dy; j >= 0; --j) {
    acc = mul(acc, y);
    for (const auto& [k, c] : f.terms)
      if (k.second == j && k.first * d < N) acc[k.first * d] += c;
  }
  for (long i = 0; i < N; ++i)
    if (acc[i] != 0) return Int(i);
  return bound;
}

}  // namespace floerhf::puiseux
