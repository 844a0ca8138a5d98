#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "floerhf/gf2.hpp"

namespace floerhf::surface {

struct RankVector {
  std::size_t h0 = 0, h1 = 0, h2 = 0;
  RankVector() = default;
  RankVector(std::size_t a, std::size_t b, std::size_t c) : h0(a), h1(b), h2(c) {}
  RankVector& operator+=(const RankVector& o) {
    h0 += o.h0;
    h1 += o.h1;
    h2 += o.h2;
    return *this;
  }
  bool operator==(const RankVector& o) const = default;
  std::size_t total() const { return h0 + h1 + h2; }
};

struct SurfaceComponent {
  int genus = 0;
  int boundary = 0;
  std::set<int> marked;  // indices < boundary
};

struct SurfacePair {
  std::vector<SurfaceComponent> components;
};

// Relative Z2 homology of (S, marked part of dS), closed form.
RankVector homology_closed_form(const SurfacePair& pair);

// H_k(S, A) vs H_{2-k}(S, dS \ A); requires boundary on every component.
bool lefschetz_duality_check(const SurfacePair& pair);

// A boundary circle of a triangulated piece, 3 vertices / 3 edges,
// listed in the direction induced by the piece orientation.
struct Circle {
  std::array<int, 3> verts;
  std::array<int, 3> edges;  // edges[i] spans verts[i] -> verts[i+1 mod 3]
};

// Delta-complex model of a disjoint union of compact surfaces.
// Each triangle stores its vertices sorted ascending and the edge id of each
// face; parallel edges are allowed, loops and degenerate triangles are not.
struct SurfaceComplex {
  int nv = 0;
  std::vector<std::array<int, 2>> edges;  // endpoints sorted
  struct Tri {
    std::array<int, 3> v;  // sorted ascending
    std::array<int, 3> e;  // e[0]=(v0,v1), e[1]=(v1,v2), e[2]=(v0,v2)
  };
  std::vector<Tri> tris;
  std::vector<Circle> circles;  // free boundary circles after assembly

  long chi() const {
    return long(nv) - long(edges.size()) + long(tris.size());
  }
  gf2::GF2Matrix boundary2() const;  // tris x edges
  gf2::GF2Matrix boundary1() const;  // edges x verts
  int component_count() const;
};

// Mutable builder with vertex/edge identification.
class ComplexBuilder {
 public:
  int add_vertex();
  int add_edge(int u, int v);
  int add_tri(int a, int b, int c, int eab, int ebc, int eca);
  void identify_vertices(int a, int b);
  void identify_edges(int e1, int e2);

  // Standard pieces. Returned circles index into the builder's cells.
  std::vector<Circle> add_surface_piece(int genus, int boundary);
  std::array<Circle, 2> add_tube();

  // Orientation-reversing identification of two 3-circles.
  void glue_circles(const Circle& a, const Circle& b);

  // Remaining free circles must be passed in (those never glued). The
  // optional out-parameters receive the builder-id -> final-id maps
  // (triangles keep their creation order).
  SurfaceComplex finalize(const std::vector<Circle>& free_circles,
                          std::vector<int>* vertex_map = nullptr,
                          std::vector<int>* edge_map = nullptr);

  int map_vertex(int v) const;  // current class representative
  int map_edge(int e) const;

  std::size_t num_vertices() const { return vparent_.size(); }
  std::size_t num_edges() const { return eparent_.size(); }
  std::size_t num_tris() const { return tris_.size(); }

 private:
  int find_v(int a) const;
  int find_e(int a) const;
  mutable std::vector<int> vparent_, eparent_;
  std::vector<std::array<int, 2>> edge_ends_;
  struct RawTri {
    std::array<int, 3> v;
    std::array<int, 3> e;  // e[0]=(v0,v1), e[1]=(v1,v2), e[2]=(v0,v2) in given order
  };
  std::vector<RawTri> tris_;
};

// Chain complex of a surface pair over Z2. Carries the Delta-structure so
// the simplicial cap product stays available downstream.
struct ChainComplexZ2 {
  SurfaceComplex K;
  gf2::GF2Matrix boundary_2;  // tris x edges
  gf2::GF2Matrix boundary_1;  // edges x verts
  gf2::BitVec sub_v, sub_e, sub_t;  // subcomplex masks
};

ChainComplexZ2 triangulate(const SurfacePair& pair);

struct HomologyResult {
  RankVector ranks;
  // Representatives in full cell coordinates; reps[k] has ranks.hk entries.
  std::array<std::vector<gf2::BitVec>, 3> reps;
};

HomologyResult homology_from_complex(const ChainComplexZ2& c);

// Relative homology of (cells in maskS, cells in maskA) inside K.
// maskA must be contained in maskS and both closed under the boundary.
struct PairMasks {
  gf2::BitVec s_v, s_e, s_t;
  gf2::BitVec a_v, a_e;
};
HomologyResult homology_of_pair(const SurfaceComplex& K, const PairMasks& m);

// Simplicial cap/cup products (front-face / back-face formulas over Z2).
gf2::BitVec cap(const SurfaceComplex& K, int p, const gf2::BitVec& cochain, int n,
                const gf2::BitVec& cycle);
gf2::BitVec cup11(const SurfaceComplex& K, const gf2::BitVec& a, const gf2::BitVec& b);

// Coboundary matrices (transposes of the boundary maps).
gf2::GF2Matrix delta0(const SurfaceComplex& K);  // verts -> edges functional matrix: edges x verts? see impl
gf2::GF2Matrix delta1(const SurfaceComplex& K);

// Cohomology H^p(K; Z2) representatives, deterministic.
std::vector<gf2::BitVec> cohomology_basis(const SurfaceComplex& K, int p);

// Spec-facing cap product on a pair complex: checks degrees and cocycle/cycle
// preconditions, returns a relative (n-p)-cycle.
gf2::BitVec cap_product(const gf2::BitVec& cochain, const gf2::BitVec& cycle,
                        const ChainComplexZ2& c);

}  // namespace floerhf::surface
