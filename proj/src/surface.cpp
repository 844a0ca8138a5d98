#include "floerhf/surface.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "floerhf/errors.hpp"

namespace floerhf::surface {

using gf2::BitVec;
using gf2::GF2Matrix;

RankVector homology_closed_form(const SurfacePair& pair) {
  RankVector total;
  for (const auto& c : pair.components) {
    if (c.genus < 0 || c.boundary < 0)
      throw error(errc::invalid_input, "negative genus or boundary count");
    for (int m : c.marked)
      if (m < 0 || m >= c.boundary)
        throw error(errc::invalid_input, "marked index out of range");
    std::size_t g = c.genus, b = c.boundary, bp = c.marked.size();
    if (b == 0)
      total += RankVector(1, 2 * g, 1);
    else if (bp == 0)
      total += RankVector(1, 2 * g + b - 1, 0);
    else if (bp < b)
      total += RankVector(0, 2 * g + b - 2, 0);
    else
      total += RankVector(0, 2 * g + b - 1, 1);
  }
  return total;
}

bool lefschetz_duality_check(const SurfacePair& pair) {
  SurfacePair complement;
  for (const auto& c : pair.components) {
    if (c.boundary == 0)
      throw error(errc::invalid_input, "duality check needs boundary on every component");
    SurfaceComponent cc = c;
    cc.marked.clear();
    for (int i = 0; i < c.boundary; ++i)
      if (!c.marked.count(i)) cc.marked.insert(i);
    complement.components.push_back(cc);
  }
  RankVector lhs = homology_closed_form(pair);
  RankVector rhs = homology_closed_form(complement);
  return lhs.h0 == rhs.h2 && lhs.h1 == rhs.h1 && lhs.h2 == rhs.h0;
}

GF2Matrix SurfaceComplex::boundary2() const {
  GF2Matrix m(tris.size(), edges.size());
  for (std::size_t t = 0; t < tris.size(); ++t)
    for (int k = 0; k < 3; ++k) m.row(t).flip(tris[t].e[k]);
  return m;
}

GF2Matrix SurfaceComplex::boundary1() const {
  GF2Matrix m(edges.size(), nv);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    // A loop edge would have zero boundary; the builder forbids loops.
    m.row(e).flip(edges[e][0]);
    m.row(e).flip(edges[e][1]);
  }
  return m;
}

int SurfaceComplex::component_count() const {
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& e : edges) parent[find(e[0])] = find(e[1]);
  int n = 0;
  for (int v = 0; v < nv; ++v)
    if (find(v) == v) ++n;
  return n;
}

int ComplexBuilder::add_vertex() {
  vparent_.push_back(int(vparent_.size()));
  return int(vparent_.size()) - 1;
}

int ComplexBuilder::add_edge(int u, int v) {
  if (u == v) throw error(errc::malformed_complex, "loop edge");
  eparent_.push_back(int(eparent_.size()));
  edge_ends_.push_back({u, v});
  return int(eparent_.size()) - 1;
}

int ComplexBuilder::add_tri(int a, int b, int c, int eab, int ebc, int eca) {
  tris_.push_back({{a, b, c}, {eab, ebc, eca}});
  return int(tris_.size()) - 1;
}

int ComplexBuilder::find_v(int a) const {
  while (vparent_[a] != a) a = vparent_[a] = vparent_[vparent_[a]];
  return a;
}
int ComplexBuilder::find_e(int a) const {
  while (eparent_[a] != a) a = eparent_[a] = eparent_[eparent_[a]];
  return a;
}
int ComplexBuilder::map_vertex(int v) const { return find_v(v); }
int ComplexBuilder::map_edge(int e) const { return find_e(e); }

void ComplexBuilder::identify_vertices(int a, int b) {
  a = find_v(a);
  b = find_v(b);
  if (a != b) vparent_[std::max(a, b)] = std::min(a, b);
}

void ComplexBuilder::identify_edges(int e1, int e2) {
  e1 = find_e(e1);
  e2 = find_e(e2);
  if (e1 != e2) eparent_[std::max(e1, e2)] = std::min(e1, e2);
}

void ComplexBuilder::glue_circles(const Circle& a, const Circle& b) {
  for (int k = 0; k < 3; ++k) identify_vertices(a.verts[k], b.verts[(3 - k) % 3]);
  for (int k = 0; k < 3; ++k) identify_edges(a.edges[k], b.edges[(2 - k) % 3]);
}

SurfaceComplex ComplexBuilder::finalize(const std::vector<Circle>& free_circles,
                                        std::vector<int>* vertex_map,
                                        std::vector<int>* edge_map) {
  SurfaceComplex K;
  // Compress vertex classes in order of first appearance of the representative.
  std::vector<int> vmap(vparent_.size(), -1);
  for (std::size_t v = 0; v < vparent_.size(); ++v) {
    int r = find_v(int(v));
    if (vmap[r] < 0) vmap[r] = K.nv++;
    vmap[v] = vmap[r];
  }
  std::vector<int> emap(eparent_.size(), -1);
  for (std::size_t e = 0; e < eparent_.size(); ++e) {
    int r = find_e(int(e));
    if (emap[r] < 0) {
      int u = vmap[edge_ends_[r][0]], v = vmap[edge_ends_[r][1]];
      if (u == v) throw error(errc::malformed_complex, "identification produced a loop edge");
      if (u > v) std::swap(u, v);
      emap[r] = int(K.edges.size());
      K.edges.push_back({u, v});
    }
    emap[e] = emap[r];
    // Identified edges must join the same vertex classes.
    int u = vmap[edge_ends_[e][0]], v = vmap[edge_ends_[e][1]];
    if (u > v) std::swap(u, v);
    if (K.edges[emap[e]] != std::array<int, 2>{u, v})
      throw error(errc::malformed_complex, "edge identification mismatch");
  }
  for (const auto& rt : tris_) {
    std::array<int, 3> v{vmap[rt.v[0]], vmap[rt.v[1]], vmap[rt.v[2]]};
    std::array<int, 3> e{emap[rt.e[0]], emap[rt.e[1]], emap[rt.e[2]]};
    if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2])
      throw error(errc::malformed_complex, "degenerate triangle after identification");
    // Reorder so v is ascending and e matches the face convention.
    std::array<int, 3> sv = v;
    std::sort(sv.begin(), sv.end());
    auto face_of = [&](int x, int y) {
      std::array<int, 2> want{std::min(x, y), std::max(x, y)};
      // Raw faces per input order: e[0]=(v0,v1), e[1]=(v1,v2), e[2]=(v0,v2).
      const std::array<std::array<int, 2>, 3> raw = {
          std::array<int, 2>{v[0], v[1]}, {v[1], v[2]}, {v[0], v[2]}};
      for (int k = 0; k < 3; ++k) {
        std::array<int, 2> r{std::min(raw[k][0], raw[k][1]), std::max(raw[k][0], raw[k][1])};
        if (r == want) return e[k];
      }
      throw error(errc::malformed_complex, "triangle face lookup failed");
    };
    SurfaceComplex::Tri t;
    t.v = sv;
    t.e = {face_of(sv[0], sv[1]), face_of(sv[1], sv[2]), face_of(sv[0], sv[2])};
    K.tris.push_back(t);
  }
  for (const auto& c : free_circles) {
    Circle mc;
    for (int k = 0; k < 3; ++k) {
      mc.verts[k] = vmap[c.verts[k]];
      mc.edges[k] = emap[c.edges[k]];
    }
    K.circles.push_back(mc);
  }
  // Every edge must lie in one or two triangles; boundary edges in exactly one.
  std::vector<int> inc(K.edges.size(), 0);
  for (const auto& t : K.tris)
    for (int k = 0; k < 3; ++k) ++inc[t.e[k]];
  std::vector<char> on_boundary(K.edges.size(), 0);
  for (const auto& c : K.circles)
    for (int e : c.edges) on_boundary[e] = 1;
  for (std::size_t e = 0; e < K.edges.size(); ++e) {
    if (inc[e] < 1 || inc[e] > 2 || (on_boundary[e] ? inc[e] != 1 : inc[e] != 2))
      throw error(errc::malformed_complex, "edge incidence is not that of a surface");
  }
  // The gluing conventions keep everything orientable; verify by 2-coloring
  // triangle orientations across shared edges.
  {
    std::vector<std::array<int, 2>> tri_of(K.edges.size(), {-1, -1});
    std::vector<std::array<int, 2>> slot_of(K.edges.size(), {-1, -1});
    for (std::size_t t = 0; t < K.tris.size(); ++t)
      for (int k = 0; k < 3; ++k) {
        auto& te = tri_of[K.tris[t].e[k]];
        auto& se = slot_of[K.tris[t].e[k]];
        int pos = te[0] < 0 ? 0 : 1;
        te[pos] = int(t);
        se[pos] = k;
      }
    std::vector<int>color(K.tris.size(), -1);
    for (std::size_t seed = 0; seed < K.tris.size(); ++seed) {
      if (color[seed] >= 0) continue;
      color[seed] = 0;
      std::vector<int> stack{int(seed)};
      while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int k = 0; k < 3; ++k) {
          int e = K.tris[t].e[k];
          if (tri_of[e][1] < 0) continue;
          int other = tri_of[e][0] == t ? tri_of[e][1] : tri_of[e][0];
          int slot_here = tri_of[e][0] == t ? slot_of[e][0] : slot_of[e][1];
          int slot_there = tri_of[e][0] == t ? slot_of[e][1] : slot_of[e][0];
          // Slots 0 and 1 traverse the edge upward, slot 2 downward; adjacent
          // triangles must traverse a shared edge in opposite directions.
          int want = color[t] ^ (slot_here == 2 ? 1 : 0) ^ (slot_there == 2 ? 1 : 0) ^ 1;
          if (color[other] < 0) {
            color[other] = want;
            stack.push_back(other);
          } else if (color[other] != want) {
            throw error(errc::malformed_complex, "gluing produced a non-orientable surface");
          }
        }
      }
    }
  }
  if (vertex_map) *vertex_map = vmap;
  if (edge_map) *edge_map = emap;
  return K;
}

std::vector<Circle> ComplexBuilder::add_surface_piece(int genus, int boundary) {
  if (genus < 0 || boundary < 0)
    throw error(errc::invalid_input, "negative genus or boundary");
  std::vector<Circle> circles;
  if (genus == 0 && boundary == 0) {
    // Tetrahedron.
    int v[4];
    for (int i = 0; i < 4; ++i) v[i] = add_vertex();
    std::map<std::pair<int, int>, int> eid;
    auto E = [&](int a, int b) {
      auto key = std::minmax(v[a], v[b]);
      auto it = eid.find({key.first, key.second});
      if (it != eid.end()) return it->second;
      int e = add_edge(key.first, key.second);
      eid[{key.first, key.second}] = e;
      return e;
    };
    int faces[4][3] = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    for (auto& f : faces)
      add_tri(v[f[0]], v[f[1]], v[f[2]], E(f[0], f[1]), E(f[1], f[2]), E(f[0], f[2]));
    return circles;
  }

  // Identification polygon: a1 b1 a1' b1' ... ag bg ag' bg' c1 t1 c1' ... cb tb cb'.
  // Every side is subdivided (t sides into 3, the rest into 2) so that after
  // identification all simplices keep three distinct vertices.
  struct Side {
    int pair;     // index of partner side, or -1 for boundary sides
    bool primary; // first occurrence of the pair
    int tindex;   // boundary circle index for t sides, else -1
    int start;    // ring position of first vertex
    int len;      // number of segments
  };
  std::vector<Side> sides;
  for (int i = 0; i < genus; ++i) {
    int base = int(sides.size());
    sides.push_back({base + 2, true, -1, 0, 2});   // a_i
    sides.push_back({base + 3, true, -1, 0, 2});   // b_i
    sides.push_back({base, false, -1, 0, 2});      // a_i'
    sides.push_back({base + 1, false, -1, 0, 2});  // b_i'
  }
  for (int j = 0; j < boundary; ++j) {
    int base = int(sides.size());
    sides.push_back({base + 2, true, -1, 0, 2});  // c_j
    sides.push_back({-1, true, j, 0, 3});         // t_j
    sides.push_back({base, false, -1, 0, 2});     // c_j'
  }
  int N = 0;
  for (auto& s : sides) {
    s.start = N;
    N += s.len;
  }
  std::vector<int> ring(N);
  for (int p = 0; p < N; ++p) ring[p] = add_vertex();
  int O = add_vertex();
  std::vector<int> outer(N), spoke(N);
  for (int p = 0; p < N; ++p) outer[p] = add_edge(ring[p], ring[(p + 1) % N]);
  for (int p = 0; p < N; ++p) spoke[p] = add_edge(O, ring[p]);
  for (int p = 0; p < N; ++p)
    add_tri(O, ring[p], ring[(p + 1) % N], spoke[p], outer[p], spoke[(p + 1) % N]);
  // Side identifications (partner traversed in reverse).
  for (std::size_t s = 0; s < sides.size(); ++s) {
    const Side& sd = sides[s];
    if (sd.pair < 0 || !sd.primary) continue;
    const Side& pd = sides[sd.pair];
    int len = sd.len;
    for (int k = 0; k <= len; ++k)
      identify_vertices(ring[(sd.start + k) % N], ring[(pd.start + len - k) % N]);
    for (int k = 0; k < len; ++k)
      identify_edges(outer[(sd.start + k) % N], outer[(pd.start + len - 1 - k) % N]);
  }
  circles.resize(boundary);
  for (const auto& sd : sides) {
    if (sd.tindex < 0) continue;
    Circle c;
    for (int k = 0; k < 3; ++k) {
      c.verts[k] = ring[(sd.start + k) % N];
      c.edges[k] = outer[(sd.start + k) % N];
    }
    circles[sd.tindex] = c;
  }
  return circles;
}

std::array<Circle, 2> ComplexBuilder::add_tube() {
  int u[3], w[3];
  for (int k = 0; k < 3; ++k) u[k] = add_vertex();
  for (int k = 0; k < 3; ++k) w[k] = add_vertex();
  int ru[3], rw[3], m[3], d[3];
  for (int k = 0; k < 3; ++k) ru[k] = add_edge(u[k], u[(k + 1) % 3]);
  for (int k = 0; k < 3; ++k) rw[k] = add_edge(w[k], w[(k + 1) % 3]);
  for (int k = 0; k < 3; ++k) m[k] = add_edge(u[k], w[k]);
  for (int k = 0; k < 3; ++k) d[k] = add_edge(u[k], w[(k + 1) % 3]);
  for (int k = 0; k < 3; ++k) {
    add_tri(u[k], u[(k + 1) % 3], w[(k + 1) % 3], ru[k], m[(k + 1) % 3], d[k]);
    add_tri(u[k], w[(k + 1) % 3], w[k], d[k], rw[k], m[k]);
  }
  Circle cu{{u[0], u[1], u[2]}, {ru[0], ru[1], ru[2]}};
  Circle cw{{w[2], w[1], w[0]}, {rw[1], rw[0], rw[2]}};
  return {cu, cw};
}

ChainComplexZ2 triangulate(const SurfacePair& pair) {
  ComplexBuilder b;
  std::vector<Circle> free_circles;
  std::vector<std::pair<std::size_t, std::size_t>> marked_circle_range;  // per component
  std::vector<std::set<int>> marked;
  for (const auto& comp : pair.components) {
    for (int m : comp.marked)
      if (m < 0 || m >= comp.boundary)
        throw error(errc::invalid_input, "marked index out of range");
    auto circles = b.add_surface_piece(comp.genus, comp.boundary);
    std::size_t base = free_circles.size();
    for (const auto& c : circles) free_circles.push_back(c);
    marked_circle_range.push_back({base, free_circles.size()});
    marked.push_back(comp.marked);
  }
  ChainComplexZ2 cc;
  cc.K = b.finalize(free_circles);
  cc.boundary_2 = cc.K.boundary2();
  cc.boundary_1 = cc.K.boundary1();
  cc.sub_v = BitVec(cc.K.nv);
  cc.sub_e = BitVec(cc.K.edges.size());
  cc.sub_t = BitVec(cc.K.tris.size());
  for (std::size_t ci = 0; ci < pair.components.size(); ++ci) {
    auto [lo, hi] = marked_circle_range[ci];
    int local = 0;
    for (std::size_t k = lo; k < hi; ++k, ++local) {
      if (!marked[ci].count(local)) continue;
      for (int v : cc.K.circles[k].verts) cc.sub_v.set(v, true);
      for (int e : cc.K.circles[k].edges) cc.sub_e.set(e, true);
    }
  }
  return cc;
}

namespace {

struct RelIndex {
  std::vector<int> fwd;  // full -> rel or -1
  std::vector<int> back; // rel -> full
};

RelIndex make_index(const BitVec& in_s, const BitVec& in_a, std::size_t n) {
  RelIndex idx;
  idx.fwd.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    bool s = in_s.size() ? in_s.get(i) : true;
    bool a = in_a.size() ? in_a.get(i) : false;
    if (s && !a) {
      idx.fwd[i] = int(idx.back.size());
      idx.back.push_back(int(i));
    }
  }
  return idx;
}

}  // namespace

HomologyResult homology_of_pair(const SurfaceComplex& K, const PairMasks& m) {
  const std::size_t nv = K.nv, ne = K.edges.size(), nt = K.tris.size();
  RelIndex iv = make_index(m.s_v, m.a_v, nv);
  RelIndex ie = make_index(m.s_e, m.a_e, ne);
  BitVec no_a_t;  // no relative 2-subcomplex in this artifact
  RelIndex it = make_index(m.s_t, no_a_t, nt);

  // Relative boundary matrices.
  GF2Matrix d2(it.back.size(), ie.back.size());
  for (std::size_t t = 0; t < it.back.size(); ++t)
    for (int k = 0; k < 3; ++k) {
      int e = K.tris[it.back[t]].e[k];
      if (ie.fwd[e] >= 0) d2.row(t).flip(ie.fwd[e]);
    }
  GF2Matrix d1(ie.back.size(), iv.back.size());
  for (std::size_t e = 0; e < ie.back.size(); ++e)
    for (int end = 0; end < 2; ++end) {
      int v = K.edges[ie.back[e]][end];
      if (iv.fwd[v] >= 0) d1.row(e).flip(iv.fwd[v]);
    }

  // d1 o d2 = 0 must hold for the relative complex as well.
  GF2Matrix comp = d2 * d1;
  for (std::size_t r = 0; r < comp.rows(); ++r)
    if (!comp.row(r).zero())
      throw error(errc::malformed_complex, "boundary of boundary is nonzero");

  auto quotient = [](const std::vector<BitVec>& cycles, const std::vector<BitVec>& bdries,
                     std::size_t ambient) {
    gf2::Echelon im(ambient);
    for (const auto& b : bdries) im.insert(b);
    gf2::Echelon quot(ambient);
    for (const auto& b : bdries) quot.insert(b);
    std::vector<BitVec> reps;
    for (const auto& z : cycles) {
      BitVec red = im.reduce(z);
      if (quot.insert(red)) reps.push_back(red);
    }
    return reps;
  };

  // Degree 0: cycles = all vertices; boundaries = images of rel edges.
  std::vector<BitVec> z0;
  for (std::size_t v = 0; v < iv.back.size(); ++v) {
    BitVec e(iv.back.size());
    e.set(v, true);
    z0.push_back(e);
  }
  std::vector<BitVec> b0;
  for (std::size_t e = 0; e < ie.back.size(); ++e) b0.push_back(d1.row(e));

  // Degree 1: cycles = ker d1; boundaries = rows of d2. A chain x maps to
  // d^T x, so kernels are taken of the transposed matrices.
  std::vector<BitVec> z1 = gf2::kernel_basis(d1.transpose()).basis;
  std::vector<BitVec> b1;
  for (std::size_t t = 0; t < it.back.size(); ++t) b1.push_back(d2.row(t));

  // Degree 2: cycles = ker d2; no degree-3 cells.
  std::vector<BitVec> z2 = gf2::kernel_basis(d2.transpose()).basis;

  auto reps0 = quotient(z0, b0, iv.back.size());
  auto reps1 = quotient(z1, b1, ie.back.size());
  auto reps2 = quotient(z2, {}, it.back.size());

  HomologyResult out;
  out.ranks = RankVector(reps0.size(), reps1.size(), reps2.size());
  auto embed = [](const std::vector<BitVec>& reps, const RelIndex& idx, std::size_t full) {
    std::vector<BitVec> e;
    for (const auto& r : reps) {
      BitVec v(full);
      for (std::size_t i = 0; i < idx.back.size(); ++i)
        if (r.get(i)) v.set(idx.back[i], true);
      e.push_back(v);
    }
    return e;
  };
  out.reps[0] = embed(reps0, iv, nv);
  out.reps[1] = embed(reps1, ie, ne);
  out.reps[2] = embed(reps2, it, nt);
  return out;
}

HomologyResult homology_from_complex(const ChainComplexZ2& c) {
  // Validate the stored matrices against each other first.
  GF2Matrix comp = c.boundary_2 * c.boundary_1;
  for (std::size_t r = 0; r < comp.rows(); ++r)
    if (!comp.row(r).zero())
      throw error(errc::malformed_complex, "boundary_1 o boundary_2 != 0");
  // Subcomplex must be closed under the boundary maps.
  for (std::size_t e = 0; e < c.K.edges.size(); ++e)
    if (c.sub_e.size() && c.sub_e.get(e))
      for (int end = 0; end < 2; ++end)
        if (!c.sub_v.get(c.K.edges[e][end]))
          throw error(errc::malformed_complex, "subcomplex not closed under boundary");
  PairMasks m;
  m.s_v = BitVec();  // everything
  m.s_e = BitVec();
  m.s_t = BitVec();
  m.a_v = c.sub_v;
  m.a_e = c.sub_e;
  return homology_of_pair(c.K, m);
}

BitVec cap(const SurfaceComplex& K, int p, const BitVec& cochain, int n, const BitVec& cycle) {
  const std::size_t nv = K.nv, ne = K.edges.size(), nt = K.tris.size();
  auto size_of = [&](int d) { return d == 0 ? nv : d == 1 ? ne : nt; };
  if (p < 0 || p > 2 || n < 0 || n > 2 || p > n)
    throw error(errc::degree_mismatch, "cap degrees out of range");
  if (cochain.size() != size_of(p) || cycle.size() != size_of(n))
    throw error(errc::degree_mismatch, "cochain or cycle has wrong length");
  BitVec out(size_of(n - p));
  if (p == 0) {
    // front vertex evaluation; the constant cocycle acts as the identity.
    if (n == 0) {
      for (std::size_t v = 0; v < nv; ++v)
        if (cycle.get(v) && cochain.get(v)) out.flip(v);
    } else if (n == 1) {
      for (std::size_t e = 0; e < ne; ++e)
        if (cycle.get(e) && cochain.get(K.edges[e][0])) out.flip(e);
    } else {
      for (std::size_t t = 0; t < nt; ++t)
        if (cycle.get(t) && cochain.get(K.tris[t].v[0])) out.flip(t);
    }
  } else if (p == 1 && n == 1) {
    for (std::size_t e = 0; e < ne; ++e)
      if (cycle.get(e) && cochain.get(e)) out.flip(K.edges[e][1]);
  } else if (p == 1 && n == 2) {
    for (std::size_t t = 0; t < nt; ++t)
      if (cycle.get(t) && cochain.get(K.tris[t].e[0])) out.flip(K.tris[t].e[1]);
  } else {  // p == 2, n == 2
    for (std::size_t t = 0; t < nt; ++t)
      if (cycle.get(t) && cochain.get(t)) out.flip(K.tris[t].v[2]);
  }
  return out;
}

BitVec cup11(const SurfaceComplex& K, const BitVec& a, const BitVec& b) {
  BitVec out(K.tris.size());
  for (std::size_t t = 0; t < K.tris.size(); ++t)
    if (a.get(K.tris[t].e[0]) && b.get(K.tris[t].e[1])) out.set(t, true);
  return out;
}

GF2Matrix delta0(const SurfaceComplex& K) { return K.boundary1(); }
GF2Matrix delta1(const SurfaceComplex& K) { return K.boundary2(); }

std::vector<BitVec> cohomology_basis(const SurfaceComplex& K, int p) {
  // Cochains in degree p; delta^p = transpose of boundary_{p+1}.
  const std::size_t nv = K.nv, ne = K.edges.size(), nt = K.tris.size();
  GF2Matrix b1 = K.boundary1();  // edges x verts
  GF2Matrix b2 = K.boundary2();  // tris x edges
  std::vector<BitVec> cocycles, cobdries;
  std::size_t ambient = 0;
  if (p == 0) {
    ambient = nv;
    cocycles = gf2::kernel_basis(b1).basis;  // delta0 alpha = 0  <=>  b1 * alpha = 0
  } else if (p == 1) {
    ambient = ne;
    cocycles = gf2::kernel_basis(b2).basis;
    for (std::size_t v = 0; v < nv; ++v) {
      BitVec ev(nv);
      ev.set(v, true);
      cobdries.push_back(b1.apply(ev));
    }
  } else if (p == 2) {
    ambient = nt;
    for (std::size_t t = 0; t < nt; ++t) {
      BitVec e(nt);
      e.set(t, true);
      cocycles.push_back(e);
    }
    for (std::size_t e = 0; e < ne; ++e) {
      BitVec ee(ne);
      ee.set(e, true);
      cobdries.push_back(b2.apply(ee));
    }
  } else {
    throw error(errc::degree_mismatch, "cohomology degree out of range");
  }
  gf2::Echelon im(ambient), quot(ambient);
  for (const auto& b : cobdries) {
    im.insert(b);
    quot.insert(b);
  }
  std::vector<BitVec> reps;
  for (const auto& z : cocycles) {
    BitVec red = im.reduce(z);
    if (quot.insert(red)) reps.push_back(red);
  }
  return reps;
}

BitVec cap_product(const BitVec& cochain, const BitVec& cycle, const ChainComplexZ2& c) {
  const std::size_t nv = c.K.nv, ne = c.K.edges.size(), nt = c.K.tris.size();
  auto deg_of = [&](std::size_t len) -> int {
    if (len == nv) return 0;
    if (len == ne) return 1;
    if (len == nt) return 2;
    return -1;
  };
  int p = deg_of(cochain.size()), n = deg_of(cycle.size());
  if (p < 0 || n < 0 || p > n)
    throw error(errc::degree_mismatch, "cap_product degree mismatch");
  // Cocycle condition on the full complex.
  if (p == 0) {
    if (!c.boundary_1.apply(cochain).zero())
      throw error(errc::invalid_input, "cochain is not a cocycle");
  } else if (p == 1) {
    if (!c.boundary_2.apply(cochain).zero())
      throw error(errc::invalid_input, "cochain is not a cocycle");
  }
  // Relative cycle condition: boundary supported in the subcomplex.
  if (n == 1) {
    BitVec b(nv);
    for (std::size_t e = 0; e < ne; ++e)
      if (cycle.get(e)) {
        b.flip(c.K.edges[e][0]);
        b.flip(c.K.edges[e][1]);
      }
    for (std::size_t v = 0; v < nv; ++v)
      if (b.get(v) && !(c.sub_v.size() && c.sub_v.get(v)))
        throw error(errc::invalid_input, "cycle is not a relative cycle");
  } else if (n == 2) {
    BitVec b(ne);
    for (std::size_t t = 0; t < nt; ++t)
      if (cycle.get(t)) b ^= c.boundary_2.row(t);
    for (std::size_t e = 0; e < ne; ++e)
      if (b.get(e) && !(c.sub_e.size() && c.sub_e.get(e)))
        throw error(errc::invalid_input, "cycle is not a relative cycle");
  }
  return cap(c.K, p, cochain, n, cycle);
}

}  // namespace floerhf::surface
