#pragma once

#include <string>
#include <utility>
#include <vector>

#include "floerhf/puiseux.hpp"
#include "floerhf/rational.hpp"

namespace floerhf::splice {

enum class VertexKind { arrowhead, knob, box };

struct DiagramEdge {
  int v[2];
  Int w[2];  // weight at each end; meaningful only at box ends (0 elsewhere)
};

// Weighted tree with arrowhead/knob/box vertices. Edge weights sit at box
// ends only. The exceptional diagram has two arrowheads and no boxes.
struct SpliceDiagram {
  std::vector<VertexKind> kinds;
  std::vector<DiagramEdge> edges;
  bool is_gamma_star = false;
  // Arrowhead k corresponds to input branch arrow_branch[k] (by index).
  std::vector<int> arrow_branch;

  std::vector<std::vector<int>> adjacency() const;  // vertex -> incident edge ids
  int other_end(int edge, int v) const {
    return edges[edge].v[0] == v ? edges[edge].v[1] : edges[edge].v[0];
  }
  const Int& weight_at(int edge, int v) const {
    return edges[edge].v[0] == v ? edges[edge].w[0] : edges[edge].w[1];
  }
  std::vector<int> arrowheads() const;
  std::vector<int> boxes() const;
};

inline SpliceDiagram gamma_star() {
  SpliceDiagram g;
  g.kinds = {VertexKind::arrowhead, VertexKind::arrowhead};
  g.edges.push_back({{0, 1}, {Int(0), Int(0)}});
  g.is_gamma_star = true;
  g.arrow_branch = {0, 1};
  return g;
}

// Property checks; ids "A1".."A6", "B1".."B4". Empty result means all pass.
std::vector<std::string> check_properties(const SpliceDiagram& g, bool collapsed);

// m(v, v'): arrowhead-weighted count on the v' side of the edge (v, v').
Int m_value(const SpliceDiagram& g, int v, int v_prime);

SpliceDiagram build_diagram(const std::vector<puiseux::FracPowerSeries>& data);
SpliceDiagram collapse(const SpliceDiagram& g);

struct CharEntry {
  Int chi;
  Int d;
  Int h;
  Rat ell;
  std::string origin;  // "box:<v>", "edge:<e>", or "gamma_star"

  bool same_value(const CharEntry& o) const {
    return chi == o.chi && d == o.d && h == o.h && ell == o.ell;
  }
};

std::vector<CharEntry> characteristic_set(const SpliceDiagram& g);

struct TwistModel {
  Int d_e = 1;
  Int a = 1;       // weight of the edge at the oriented box b
  Int ell_b = 1;   // period of the piece at b
  Int m = 1, m_prime = 0;
  Int n = 0, n_prime = 1;
  Rat ell_e = Rat(1);
};

TwistModel twist_model(const SpliceDiagram& g, int edge);
TwistModel gamma_star_twist_model();

// q in (0,1) with a - q*m*ell_b*ell_e in ell_b*Z (d_e = 1 only).
std::vector<Rat> twist_fixed_points(const TwistModel& t);

// p-translation of phi_e^{d_e} at q = 0 and q = 1, mod 1.
std::pair<Rat, Rat> boundary_rotations(const TwistModel& t);

std::string to_dot(const SpliceDiagram& g);

}  // namespace floerhf::splice
