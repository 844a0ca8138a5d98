#include "floerhf/monodromy.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "floerhf/errors.hpp"

namespace floerhf::monodromy {

using finite_type::Action;
using finite_type::GradedZ2Module;
using gf2::BitVec;
using splice::CharEntry;
using splice::SpliceDiagram;
using splice::VertexKind;
using surface::RankVector;

MilnorDecomposition assemble(const SpliceDiagram& g) {
  MilnorDecomposition d;
  auto set = splice::characteristic_set(g);
  if (g.is_gamma_star) {
    DecompAnnulus a;
    a.entry = set.at(0);
    a.model = splice::gamma_star_twist_model();
    a.ends = {"boundary:0", "boundary:1"};
    d.annuli.push_back(a);
    d.fiber = {0, 2, 0};
    return d;
  }
  // Boundary circles are the arrowheads, ordered by their branch index.
  auto arrows = g.arrowheads();
  std::stable_sort(arrows.begin(), arrows.end(), [&](int a, int b) {
    return g.arrow_branch[a] < g.arrow_branch[b];
  });
  std::map<int, int> arrow_index;
  for (std::size_t k = 0; k < arrows.size(); ++k) arrow_index[arrows[k]] = int(k);
  Int chi_total(0);
  for (const auto& e : set) {
    if (e.origin.rfind("box:", 0) == 0) {
      DecompPiece p;
      p.entry = e;
      if (!e.d.fits_slong_p() || !e.h.fits_slong_p() || !e.chi.fits_slong_p())
        throw error(errc::invalid_input, "characteristic entry out of range");
      p.components = e.d.get_si();
      long chi_c = e.chi.get_si() / p.components;
      p.boundary = e.h.get_si() / p.components;
      p.genus = (2 - chi_c - p.boundary) / 2;
      chi_total += e.chi;
      d.pieces.push_back(p);
    } else {
      DecompAnnulus a;
      a.entry = e;
      int ei = std::stoi(e.origin.substr(5));
      a.model = splice::twist_model(g, ei);
      for (int end = 0; end < 2; ++end) {
        int v = g.edges[ei].v[end];
        if (g.kinds[v] == VertexKind::box)
          a.ends[end] = "box:" + std::to_string(v);
        else
          a.ends[end] = "boundary:" + std::to_string(arrow_index.at(v));
      }
      d.annuli.push_back(a);
    }
  }
  if (!chi_total.fits_slong_p()) throw error(errc::invalid_input, "chi out of range");
  d.fiber.chi = chi_total.get_si();
  d.fiber.kappa = long(arrows.size());
  long twog = 2 - d.fiber.chi - d.fiber.kappa;
  if (twog < 0 || twog % 2 != 0)
    throw error(errc::property_violation, "fiber genus is not a nonnegative integer");
  d.fiber.genus = twog / 2;
  return d;
}

MonodromyReport verify_monodromy(const MilnorDecomposition& d) {
  MonodromyReport rep;
  {
    CheckItem c{"claim1", true, "twist maps are fixed point free in the interior"};
    for (const auto& a : d.annuli) {
      auto fixed = splice::twist_fixed_points(a.model);
      if (!fixed.empty()) {
        c.pass = false;
        c.detail = "interior fixed circles on annulus " + a.entry.origin;
      }
    }
    rep.checks.push_back(c);
  }
  {
    CheckItem c{"claim2", true, "every periodic piece has period > 1"};
    for (const auto& p : d.pieces)
      if (!(p.entry.ell > 1)) {
        c.pass = false;
        c.detail = "piece " + p.entry.origin + " has period <= 1";
      }
    rep.checks.push_back(c);
  }
  {
    CheckItem c{"claim3", true, "all twists are positive"};
    for (const auto& a : d.annuli)
      if (!(a.entry.ell > 0)) {
        c.pass = false;
        c.detail = "twist number <= 0 on " + a.entry.origin;
      }
    rep.checks.push_back(c);
  }
  {
    CheckItem c{"lambda", rep.checks[0].pass && rep.checks[1].pass,
                "Lefschetz number vanishes, so fix = boundary"};
    if (!c.pass) c.detail = "interior fixed points obstruct Lambda = 0";
    rep.checks.push_back(c);
  }
  return rep;
}

namespace {

void validate_embedding(const MilnorDecomposition& d, const EmbeddingSpec& e) {
  if (e.disks < 0) throw error(errc::bad_embedding, "negative disk count");
  std::set<int> used;
  long attached = 0;
  for (const auto& c : e.complement) {
    if (c.genus < 0) throw error(errc::bad_embedding, "negative genus");
    if (c.attach.empty())
      throw error(errc::bad_embedding, "complement piece attached to no circle");
    for (int k : c.attach) {
      if (k < 0 || k >= d.fiber.kappa)
        throw error(errc::bad_embedding, "circle index out of range");
      if (!used.insert(k).second)
        throw error(errc::bad_embedding, "circle attached more than once");
      ++attached;
    }
  }
  if (attached + e.disks != d.fiber.kappa)
    throw error(errc::bad_embedding,
                "every boundary circle needs exactly one complement piece or disk");
  long chi = d.fiber.chi + e.disks;
  for (const auto& c : e.complement) chi += 2 - 2 * long(c.genus) - long(c.attach.size());
  if (chi % 2 != 0) throw error(errc::bad_embedding, "odd Euler characteristic");
  if ((2 - chi) / 2 < 2)
    throw error(errc::bad_embedding, "ambient closed surface must have genus >= 2");
}

}  // namespace

GradedZ2Module hf_of_monodromy(const MilnorDecomposition& d, const EmbeddingSpec& e) {
  validate_embedding(d, e);
  // Ranks by excision: relative homology of the complement rel its whole
  // boundary, plus one degree-0 generator per collapsed disk.
  surface::SurfacePair pair;
  for (const auto& c : e.complement) {
    surface::SurfaceComponent sc;
    sc.genus = c.genus;
    sc.boundary = int(c.attach.size());
    for (int s = 0; s < sc.boundary; ++s) sc.marked.insert(s);
    pair.components.push_back(sc);
  }
  GradedZ2Module out;
  out.ranks = surface::homology_closed_form(pair);
  out.ranks.h0 += e.disks;

  // Assemble the closed surface: fiber + complement pieces + disks, with the
  // complement as the fixed part rel all of dM.
  surface::ComplexBuilder b;
  auto fiber_circles = b.add_surface_piece(int(d.fiber.genus), int(d.fiber.kappa));
  struct Range {
    std::size_t v0, v1, e0, e1, t0, t1;
  };
  std::vector<Range> comp_range(e.complement.size());
  std::vector<std::vector<surface::Circle>> comp_circles(e.complement.size());
  for (std::size_t i = 0; i < e.complement.size(); ++i) {
    comp_range[i].v0 = b.num_vertices();
    comp_range[i].e0 = b.num_edges();
    comp_range[i].t0 = b.num_tris();
    comp_circles[i] = b.add_surface_piece(e.complement[i].genus,
                                          int(e.complement[i].attach.size()));
    comp_range[i].v1 = b.num_vertices();
    comp_range[i].e1 = b.num_edges();
    comp_range[i].t1 = b.num_tris();
    for (std::size_t s = 0; s < e.complement[i].attach.size(); ++s)
      b.glue_circles(comp_circles[i][s], fiber_circles[e.complement[i].attach[s]]);
  }
  std::vector<char> capped(d.fiber.kappa, 0);
  for (const auto& c : e.complement)
    for (int k : c.attach) capped[k] = 1;
  for (long k = 0; k < d.fiber.kappa; ++k) {
    if (capped[k]) continue;
    auto disk_circles = b.add_surface_piece(0, 1);
    b.glue_circles(disk_circles[0], fiber_circles[k]);
  }
  std::vector<int> vmap, emap;
  surface::SurfaceComplex K = b.finalize({}, &vmap, &emap);
  surface::PairMasks masks;
  masks.s_v = BitVec(K.nv);
  masks.s_e = BitVec(K.edges.size());
  masks.s_t = BitVec(K.tris.size());
  masks.a_v = BitVec(K.nv);
  masks.a_e = BitVec(K.edges.size());
  for (std::size_t i = 0; i < e.complement.size(); ++i) {
    for (std::size_t v = comp_range[i].v0; v < comp_range[i].v1; ++v)
      masks.s_v.set(vmap[v], true);
    for (std::size_t ed = comp_range[i].e0; ed < comp_range[i].e1; ++ed)
      masks.s_e.set(emap[ed], true);
    for (std::size_t t = comp_range[i].t0; t < comp_range[i].t1; ++t)
      masks.s_t.set(t, true);
    for (const auto& circ : comp_circles[i]) {
      for (int v : circ.verts) masks.a_v.set(vmap[v], true);
      for (int ed : circ.edges) masks.a_e.set(emap[ed], true);
    }
  }
  auto H = surface::homology_of_pair(K, masks);
  RankVector expect = surface::homology_closed_form(pair);
  if (!(H.ranks == expect))
    throw error(errc::invalid_input, "assembled embedding disagrees with the closed form");
  out.actions = finite_type::pair_module_actions(K, masks, H, e.disks);
  return out;
}

std::vector<puiseux::FracPowerSeries> ak_puiseux_data(long k) {
  if (k < 1) throw error(errc::invalid_input, "k must be positive");
  std::vector<puiseux::FracPowerSeries> data;
  if (k % 2 == 0) {
    puiseux::FracPowerSeries f;
    f.terms.push_back({Rat(-1), Int(2)});
    f.d = k + 1;
    data.push_back(f);
  } else {
    for (long c : {1L, 2L}) {
      puiseux::FracPowerSeries f;
      f.terms.push_back({Rat(c), Int(1)});
      f.d = (k + 1) / 2;
      data.push_back(f);
    }
  }
  return data;
}

GradedZ2Module hf_ak(long k, const EmbeddingSpec& e) {
  auto data = ak_puiseux_data(k);
  auto trunc = puiseux::truncation_index(data);
  auto dia = splice::collapse(splice::build_diagram(trunc.truncated));
  auto d = assemble(dia);
  // The fiber topology is pinned by the germ.
  long expect_kappa = (k % 2 == 0) ? 1 : 2;
  long expect_genus = (k % 2 == 0) ? k / 2 : (k - 1) / 2;
  if (d.fiber.kappa != expect_kappa || d.fiber.genus != expect_genus)
    throw error(errc::invalid_input, "A_k fiber mismatch");
  auto rep = verify_monodromy(d);
  if (!rep.all_pass()) throw error(errc::verification_failed, "monodromy checks failed");
  return hf_of_monodromy(d, e);
}

HFPlusResult hf_plus(const MilnorDecomposition& d) {
  HFPlusResult res;
  res.report = verify_monodromy(d);
  if (!res.report.all_pass())
    throw error(errc::verification_failed,
                "positive twists and interior fixed point freeness not established");
  res.module.ranks = RankVector(0, 0, 0);
  return res;
}

}  // namespace floerhf::monodromy
