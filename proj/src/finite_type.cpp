#include "floerhf/finite_type.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "floerhf/errors.hpp"
#include "floerhf/rational.hpp"

namespace floerhf::finite_type {

using gf2::BitVec;
using gf2::GF2Matrix;
using surface::RankVector;

namespace {

struct Index {
  std::map<std::string, int> piece_of;
  // (piece index, slot) -> twist index and side, or -1.
  std::map<std::pair<int, int>, std::pair<int, int>> slot_use;
};

Index build_index(const FiniteTypeMap& map, ValidationReport* rep) {
  Index idx;
  auto add = [&](const std::string& clause, const std::string& msg) {
    if (rep) rep->violations.push_back({clause, msg});
  };
  for (std::size_t i = 0; i < map.pieces.size(); ++i) {
    if (idx.piece_of.count(map.pieces[i].id)) add("gluing", "duplicate piece id " + map.pieces[i].id);
    idx.piece_of[map.pieces[i].id] = int(i);
  }
  std::set<std::string> twist_ids;
  for (std::size_t t = 0; t < map.twists.size(); ++t) {
    if (!twist_ids.insert(map.twists[t].id).second)
      add("gluing", "duplicate twist id " + map.twists[t].id);
    for (int side = 0; side < 2; ++side) {
      const Attachment& at = map.twists[t].attach[side];
      auto it = idx.piece_of.find(at.piece);
      if (it == idx.piece_of.end()) {
        add("gluing", "twist " + map.twists[t].id + " attaches to unknown piece " + at.piece);
        continue;
      }
      const PeriodicPiece& p = map.pieces[it->second];
      if (at.slot < 0 || at.slot >= p.boundary) {
        add("gluing", "twist " + map.twists[t].id + " attaches to slot out of range");
        continue;
      }
      auto key = std::make_pair(it->second, at.slot);
      auto prev = idx.slot_use.find(key);
      if (prev == idx.slot_use.end()) {
        idx.slot_use[key] = {int(t), side};
      } else if (!(prev->second.first == int(t) && side == 1 &&
                   map.twists[t].kind == TwistKind::flip_twist)) {
        // Both sides of one flip-twist may consume a single slot orbit;
        // anything else is a double matching.
        add("gluing", "boundary slot of piece " + at.piece + " matched more than once");
      }
    }
  }
  return idx;
}

}  // namespace

ValidationReport validate(const FiniteTypeMap& map) {
  ValidationReport rep;
  auto add = [&](const std::string& clause, const std::string& msg) {
    rep.violations.push_back({clause, msg});
  };
  Index idx = build_index(map, &rep);
  if (map.pieces.empty()) add("gluing", "no pieces");

  for (const auto& p : map.pieces) {
    if (p.genus < 0 || p.boundary < 0) add("piece", p.id + ": negative genus or boundary");
    if (p.period < 1) add("piece", p.id + ": period must be positive");
    if (p.copies < 1) add("piece", p.id + ": copies must be positive");
    if (p.fixed_points < 0) add("piece", p.id + ": negative fixed point count");
    if (p.copies > 1 && p.fixed_points != 0)
      add("piece", p.id + ": permuted family cannot declare fixed points");
    for (int m : p.orbit_multiplicities) {
      if (m < 2) add("piece", p.id + ": exceptional multiplicity must be >= 2");
      else if (p.period % m != 0)
        add("riemann-hurwitz", p.id + ": multiplicity does not divide the period");
    }
    if (p.period > 1 && p.copies == 1) {
      long full = 0;
      for (int m : p.orbit_multiplicities)
        if (m == p.period) ++full;
      if (p.fixed_points > full)
        add("piece", p.id + ": more fixed points than full-period exceptional orbits");
    }
    if (p.period > 1 && p.orbit) {
      // chi(piece) = period * (chi(orbit) - sum(1 - 1/m_i)).
      Rat rhs = Rat(2 - 2 * long(p.orbit->first) - long(p.orbit->second));
      for (int m : p.orbit_multiplicities) rhs -= Rat(1) - Rat(1, m);
      rhs *= Rat(p.period);
      if (rhs != Rat(p.chi_one_copy()))
        add("riemann-hurwitz", p.id + ": chi(piece) != period*(chi(orbit) - sum(1 - 1/m_i))");
    }
  }

  for (const auto& t : map.twists) {
    if (t.annuli < 1) add("twist", t.id + ": annuli must be positive");
    if (t.kind == TwistKind::twist && t.annuli == 1 && !t.interior_fixed_free)
      add("(3)", t.id + ": a non-permuted twist must be fixed point free in the interior");
    auto piece_at = [&](int side) -> const PeriodicPiece* {
      auto it = idx.piece_of.find(t.attach[side].piece);
      return it == idx.piece_of.end() ? nullptr : &map.pieces[it->second];
    };
    const PeriodicPiece* p0 = piece_at(0);
    const PeriodicPiece* p1 = piece_at(1);
    for (const PeriodicPiece* p : {p0, p1}) {
      if (!p) continue;
      if (p->genus == 0 && p->boundary == 1)
        add("contractible", t.id + ": twist region capped by a disk piece");
    }
    if (t.kind == TwistKind::twist) {
      if (p0 && p0->copies != t.annuli)
        add("gluing", t.id + ": annuli count must equal the attached piece's copies");
      if (p1 && p1->copies != t.annuli)
        add("gluing", t.id + ": annuli count must equal the attached piece's copies");
      if (p0 && p1 && t.attach[0] == t.attach[1])
        add("gluing", t.id + ": a twist region cannot attach both sides to one slot");
    } else {
      // A flip-twist exchanges its two sides, so both must land on the same
      // piece family, which cannot be pointwise fixed.
      if (p0 && p1 && t.attach[0].piece != t.attach[1].piece)
        add("flip", t.id + ": flip-twist sides must attach to the same piece");
      if (p0 && p0->is_identity())
        add("flip", t.id + ": flip-twist cannot border a pointwise-fixed piece");
      if (p0 && p1 && t.attach[0].piece == t.attach[1].piece) {
        if (t.attach[0].slot != t.attach[1].slot) {
          if (p0->copies != t.annuli)
            add("gluing", t.id + ": flip-twist across two slots needs annuli == copies");
        } else {
          if (p0->copies != 2 * t.annuli)
            add("gluing", t.id + ": flip-twist on one slot needs copies == 2*annuli");
        }
      }
    }
  }

  // Closedness: every slot matched.
  long unmatched = 0;
  for (std::size_t i = 0; i < map.pieces.size(); ++i)
    for (int s = 0; s < map.pieces[i].boundary; ++s)
      if (!idx.slot_use.count({int(i), s})) ++unmatched;
  if (map.closed && unmatched > 0)
    add("gluing", "closed surface flag set but " + std::to_string(unmatched) +
                      " boundary slots are unmatched");

  // Connectivity of the instantiated surface (copies paired index-to-index).
  if (!map.pieces.empty()) {
    std::vector<int> offset(map.pieces.size() + 1, 0);
    for (std::size_t i = 0; i < map.pieces.size(); ++i)
      offset[i + 1] = offset[i] + map.pieces[i].copies;
    int n = offset.back();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (const auto& t : map.twists) {
      auto i0 = idx.piece_of.find(t.attach[0].piece);
      auto i1 = idx.piece_of.find(t.attach[1].piece);
      if (i0 == idx.piece_of.end() || i1 == idx.piece_of.end()) continue;
      bool one_slot_flip = t.kind == TwistKind::flip_twist && t.attach[0] == t.attach[1];
      for (int a = 0; a < t.annuli; ++a) {
        int c0 = offset[i0->second] + a % std::max(map.pieces[i0->second].copies, 1);
        int c1;
        if (one_slot_flip)
          c1 = offset[i1->second] +
               (a + t.annuli) % std::max(map.pieces[i1->second].copies, 1);
        else
          c1 = offset[i1->second] + a % std::max(map.pieces[i1->second].copies, 1);
        parent[find(c0)] = find(c1);
      }
    }
    std::set<int> roots;
    for (int v = 0; v < n; ++v) roots.insert(find(v));
    if (roots.size() > 1) add("connectivity", "the glued surface is disconnected");
  }

  // Genus of the closed surface.
  if (map.closed) {
    long chi = 0;
    for (const auto& p : map.pieces) chi += long(p.copies) * p.chi_one_copy();
    if (chi % 2 != 0)
      add("gluing", "total Euler characteristic is odd");
    else if ((2 - chi) / 2 < 2)
      add("genus", "closed surface must have genus >= 2");
  }

  // Condition (4): twist regions joined through genus-0 two-boundary pieces
  // are parallel and must be twists of one common sign.
  {
    int nt = int(map.twists.size());
    std::vector<int> parent(nt);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (std::size_t i = 0; i < map.pieces.size(); ++i) {
      const auto& p = map.pieces[i];
      if (!(p.genus == 0 && p.boundary == 2)) continue;
      auto u0 = idx.slot_use.find({int(i), 0});
      auto u1 = idx.slot_use.find({int(i), 1});
      if (u0 == idx.slot_use.end() || u1 == idx.slot_use.end()) continue;
      parent[find(u0->second.first)] = find(u1->second.first);
    }
    std::map<int, std::vector<int>> classes;
    for (int t = 0; t < nt; ++t) classes[find(t)].push_back(t);
    for (const auto& [root, members] : classes) {
      if (members.size() < 2) continue;
      bool all_twist = true;
      std::set<int> signs;
      for (int t : members) {
        if (map.twists[t].kind != TwistKind::twist)
          all_twist = false;
        else
          signs.insert(map.twists[t].sign == TwistSign::positive ? 1 : -1);
      }
      if (!all_twist || signs.size() > 1)
        add("(4)", "parallel twist regions must be twists of a single sign");
    }
  }
  return rep;
}

namespace {

void require_valid(const FiniteTypeMap& map) {
  auto rep = validate(map);
  if (!rep.valid())
    throw error(errc::invalid_input,
                "invalid finite type map: " + rep.violations.front().clause + " " +
                    rep.violations.front().message);
}

// Sign of the twist adjoining a (piece, slot), if any.
std::optional<TwistSign> adjoining_sign(const FiniteTypeMap& map, const Index& idx,
                                        int piece, int slot) {
  auto it = idx.slot_use.find({piece, slot});
  if (it == idx.slot_use.end()) return std::nullopt;
  const TwistRegion& t = map.twists[it->second.first];
  if (t.kind != TwistKind::twist) return std::nullopt;
  return t.sign;
}

}  // namespace

surface::SurfacePair sigma0(const FiniteTypeMap& map) {
  require_valid(map);
  Index idx = build_index(map, nullptr);
  surface::SurfacePair pair;
  for (std::size_t i = 0; i < map.pieces.size(); ++i) {
    const auto& p = map.pieces[i];
    if (!p.is_identity()) continue;
    surface::SurfaceComponent c;
    c.genus = p.genus;
    c.boundary = p.boundary;
    for (int s = 0; s < p.boundary; ++s) {
      auto sign = adjoining_sign(map, idx, int(i), s);
      if (sign && *sign == TwistSign::positive) c.marked.insert(s);
    }
    pair.components.push_back(c);
  }
  return pair;
}

long lefschetz_outside(const FiniteTypeMap& map) {
  require_valid(map);
  long total = 0;
  for (const auto& p : map.pieces) {
    if (p.is_identity()) continue;
    if (p.copies == 1) total += p.fixed_points;
  }
  for (const auto& t : map.twists)
    if (t.kind == TwistKind::flip_twist && t.annuli == 1) total += 2;
  return total;
}

long nielsen_number(const FiniteTypeMap& map) {
  require_valid(map);
  long essential = 0;
  for (const auto& p : map.pieces)
    if (p.is_identity() && p.chi_one_copy() != 0) ++essential;
  return essential + lefschetz_outside(map);
}

namespace {

struct CellRange {
  std::size_t v0, v1, e0, e1, t0, t1;
};

struct Assembled {
  surface::SurfaceComplex K;
  surface::PairMasks masks;  // Sigma_0 cells rel the marked boundary part
};

Assembled assemble_surface(const FiniteTypeMap& map) {
  Index idx = build_index(map, nullptr);
  surface::ComplexBuilder b;
  // circles[piece][copy][slot]
  std::vector<std::vector<std::vector<surface::Circle>>> circles(map.pieces.size());
  std::vector<std::vector<CellRange>> ranges(map.pieces.size());
  for (std::size_t i = 0; i < map.pieces.size(); ++i) {
    const auto& p = map.pieces[i];
    circles[i].resize(p.copies);
    ranges[i].resize(p.copies);
    for (int c = 0; c < p.copies; ++c) {
      CellRange& r = ranges[i][c];
      r.v0 = b.num_vertices();
      r.e0 = b.num_edges();
      r.t0 = b.num_tris();
      circles[i][c] = b.add_surface_piece(p.genus, p.boundary);
      r.v1 = b.num_vertices();
      r.e1 = b.num_edges();
      r.t1 = b.num_tris();
    }
  }
  auto circle_at = [&](const Attachment& at, int copy) -> const surface::Circle& {
    int pi = idx.piece_of.at(at.piece);
    return circles[pi][copy][at.slot];
  };
  for (const auto& t : map.twists) {
    bool one_slot_flip = t.kind == TwistKind::flip_twist && t.attach[0] == t.attach[1];
    int copies0 = map.pieces[idx.piece_of.at(t.attach[0].piece)].copies;
    int copies1 = map.pieces[idx.piece_of.at(t.attach[1].piece)].copies;
    for (int a = 0; a < t.annuli; ++a) {
      auto rims = b.add_tube();
      int c0 = a % copies0;
      int c1 = one_slot_flip ? (a + t.annuli) % copies1 : a % copies1;
      b.glue_circles(rims[0], circle_at(t.attach[0], c0));
      b.glue_circles(rims[1], circle_at(t.attach[1], c1));
    }
  }
  std::vector<int> vmap, emap;
  Assembled out;
  out.K = b.finalize({}, &vmap, &emap);
  const std::size_t nv = out.K.nv, ne = out.K.edges.size(), nt = out.K.tris.size();
  out.masks.s_v = BitVec(nv);
  out.masks.s_e = BitVec(ne);
  out.masks.s_t = BitVec(nt);
  out.masks.a_v = BitVec(nv);
  out.masks.a_e = BitVec(ne);
  for (std::size_t i = 0; i < map.pieces.size(); ++i) {
    const auto& p = map.pieces[i];
    if (!p.is_identity()) continue;
    const CellRange& r = ranges[i][0];
    for (std::size_t v = r.v0; v < r.v1; ++v) out.masks.s_v.set(vmap[v], true);
    for (std::size_t e = r.e0; e < r.e1; ++e) out.masks.s_e.set(emap[e], true);
    for (std::size_t t = r.t0; t < r.t1; ++t) out.masks.s_t.set(t, true);
    for (int s = 0; s < p.boundary; ++s) {
      auto sign = adjoining_sign(map, idx, int(i), s);
      if (!(sign && *sign == TwistSign::positive)) continue;
      for (int v : circles[i][0][s].verts) out.masks.a_v.set(vmap[v], true);
      for (int e : circles[i][0][s].edges) out.masks.a_e.set(emap[e], true);
    }
  }
  return out;
}

// Coordinates of a relative cycle with respect to homology representatives,
// modulo boundaries and chains in the marked subcomplex.
std::vector<bool> pair_coords(const surface::SurfaceComplex& K,
                              const surface::PairMasks& masks,
                              const surface::HomologyResult& H, int degree,
                              const BitVec& chain) {
  const std::size_t nv = K.nv, ne = K.edges.size(), nt = K.tris.size();
  std::size_t dim = degree == 0 ? nv : degree == 1 ? ne : nt;
  const auto& reps = H.reps[degree];
  std::vector<BitVec> cols;
  for (const auto& r : reps) cols.push_back(r);
  if (degree == 0) {
    for (std::size_t e = 0; e < ne; ++e) {
      if (!(masks.s_e.size() == 0 || masks.s_e.get(e))) continue;
      BitVec bd(nv);
      bd.flip(K.edges[e][0]);
      bd.flip(K.edges[e][1]);
      cols.push_back(bd);
    }
    for (std::size_t v = 0; v < nv; ++v)
      if (masks.a_v.size() && masks.a_v.get(v)) {
        BitVec unit(nv);
        unit.set(v, true);
        cols.push_back(unit);
      }
  } else if (degree == 1) {
    for (std::size_t t = 0; t < nt; ++t) {
      if (!(masks.s_t.size() == 0 || masks.s_t.get(t))) continue;
      BitVec bd(ne);
      for (int k = 0; k < 3; ++k) bd.flip(K.tris[t].e[k]);
      cols.push_back(bd);
    }
    for (std::size_t e = 0; e < ne; ++e)
      if (masks.a_e.size() && masks.a_e.get(e)) {
        BitVec unit(ne);
        unit.set(e, true);
        cols.push_back(unit);
      }
  }
  GF2Matrix m(dim, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r)
      if (cols[c].get(r)) m.set(r, c, true);
  BitVec x;
  if (!gf2::solve(m, chain, x))
    throw error(errc::invalid_input, "chain does not represent a class of the pair");
  std::vector<bool> out(reps.size());
  for (std::size_t r = 0; r < reps.size(); ++r) out[r] = x.get(r);
  return out;
}

}  // namespace

std::vector<Action> pair_module_actions(const surface::SurfaceComplex& K,
                                        const surface::PairMasks& masks,
                                        const surface::HomologyResult& H,
                                        long lambda) {
  // Total space: [H0 reps | Lambda generators] + [H1 reps] + [H2 reps].
  std::size_t n0 = H.ranks.h0 + std::size_t(lambda), n1 = H.ranks.h1, n2 = H.ranks.h2;
  std::size_t total = n0 + n1 + n2;
  auto offset = [&](int degree) -> std::size_t {
    return degree == 0 ? 0 : degree == 1 ? n0 : n0 + n1;
  };
  std::vector<Action> actions;
  for (int p = 0; p <= 2; ++p) {
    auto cocycles = surface::cohomology_basis(K, p);
    for (std::size_t gidx = 0; gidx < cocycles.size(); ++gidx) {
      Action act;
      act.degree = p;
      act.label = "h" + std::to_string(p) +
                  (cocycles.size() > 1 ? "[" + std::to_string(gidx) + "]" : "");
      act.matrix = GF2Matrix(total, total);
      if (p == 0) {
        // The unit acts as the identity everywhere, including the
        // fixed-point summand.
        for (std::size_t i = 0; i < total; ++i) act.matrix.set(i, i, true);
        actions.push_back(std::move(act));
        continue;
      }
      for (int nd = p; nd <= 2; ++nd) {
        const auto& reps = H.reps[nd];
        for (std::size_t k = 0; k < reps.size(); ++k) {
          BitVec img = surface::cap(K, p, cocycles[gidx], nd, reps[k]);
          auto coords = pair_coords(K, masks, H, nd - p, img);
          std::size_t col = offset(nd) + k;
          for (std::size_t r = 0; r < coords.size(); ++r)
            if (coords[r]) act.matrix.set(offset(nd - p) + r, col, true);
        }
      }
      // Degree >= 1 generators act by zero on the Lambda summand.
      actions.push_back(std::move(act));
    }
  }
  return actions;
}

std::vector<Action> module_structure(const FiniteTypeMap& map) {
  require_valid(map);
  if (!map.closed) throw error(errc::not_closed, "module structure needs a closed surface");
  Assembled A = assemble_surface(map);
  auto H = surface::homology_of_pair(A.K, A.masks);
  RankVector base = surface::homology_closed_form(sigma0(map));
  if (!(H.ranks == base))
    throw error(errc::invalid_input, "assembled complex disagrees with the closed form");
  return pair_module_actions(A.K, A.masks, H, lefschetz_outside(map));
}

GradedZ2Module floer_homology(const FiniteTypeMap& map) {
  require_valid(map);
  if (!map.closed) throw error(errc::not_closed, "floer homology needs a closed surface");
  long chi = 0;
  for (const auto& p : map.pieces) chi += long(p.copies) * p.chi_one_copy();
  if ((2 - chi) / 2 < 2) throw error(errc::genus_too_small, "genus must be >= 2");
  GradedZ2Module out;
  out.ranks = surface::homology_closed_form(sigma0(map));
  out.ranks.h0 += lefschetz_outside(map);
  out.actions = module_structure(map);
  return out;
}

}  // namespace floerhf::finite_type
