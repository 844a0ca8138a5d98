#include "floerhf/splice.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "floerhf/errors.hpp"

namespace floerhf::splice {

using puiseux::FracPowerSeries;

std::vector<std::vector<int>> SpliceDiagram::adjacency() const {
  std::vector<std::vector<int>> adj(kinds.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].v[0]].push_back(int(e));
    adj[edges[e].v[1]].push_back(int(e));
  }
  return adj;
}

std::vector<int> SpliceDiagram::arrowheads() const {
  std::vector<int> out;
  for (std::size_t v = 0; v < kinds.size(); ++v)
    if (kinds[v] == VertexKind::arrowhead) out.push_back(int(v));
  return out;
}

std::vector<int> SpliceDiagram::boxes() const {
  std::vector<int> out;
  for (std::size_t v = 0; v < kinds.size(); ++v)
    if (kinds[v] == VertexKind::box) out.push_back(int(v));
  return out;
}

Int m_value(const SpliceDiagram& g, int v, int v_prime) {
  auto adj = g.adjacency();
  int cut = -1;
  for (int e : adj[v])
    if (g.other_end(e, v) == v_prime) cut = e;
  if (cut < 0) throw error(errc::invalid_input, "m_value needs adjacent vertices");
  // The diagram is a tree: walk from v_prime avoiding the cut edge; each
  // arrowhead a contributes the product of edge weights hanging off its path.
  Int total = 0;
  // Iterative DFS carrying the running sigma product along the path.
  struct Frame {
    int vertex;
    int via_edge;
    Rat sigma;  // product of off-path weights at path vertices so far
  };
  std::vector<Frame> stack{{v_prime, cut, Rat(1)}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (g.kinds[f.vertex] == VertexKind::arrowhead && f.vertex != v) {
      Rat s = f.sigma;
      if (!is_integer(s)) throw error(errc::invalid_input, "non-integer sigma");
      total += s.get_num();
      continue;
    }
    for (int e : adj[f.vertex]) {
      if (e == f.via_edge || e == cut) continue;
      // Extending the path through f.vertex: the off-path edges at f.vertex
      // are all incident edges except the one we came in on and the one we
      // leave by; their weights at f.vertex multiply into sigma.
      Rat sigma = f.sigma;
      for (int e2 : adj[f.vertex]) {
        if (e2 == e || e2 == f.via_edge || e2 == cut) continue;
        if (g.kinds[f.vertex] == VertexKind::box) sigma *= Rat(g.weight_at(e2, f.vertex));
      }
      stack.push_back({g.other_end(e, f.vertex), e, sigma});
    }
  }
  return total;
}

namespace {

// Sorted incident-edge lists and valences.
int valence(const std::vector<std::vector<int>>& adj, int v) { return int(adj[v].size()); }

bool connected_tree(const SpliceDiagram& g) {
  if (g.kinds.empty()) return false;
  std::vector<char> seen(g.kinds.size(), 0);
  auto adj = g.adjacency();
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : adj[v]) {
      int u = g.other_end(e, v);
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == g.kinds.size() && g.edges.size() + 1 == g.kinds.size();
}

}  // namespace

std::vector<std::string> check_properties(const SpliceDiagram& g, bool collapsed) {
  std::vector<std::string> bad;
  if (g.is_gamma_star) return bad;  // the exceptional diagram is exempt
  auto adj = g.adjacency();
  if (!connected_tree(g)) bad.push_back("A1: not a tree");
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    for (int end = 0; end < 2; ++end) {
      int v = g.edges[e].v[end];
      if (g.kinds[v] == VertexKind::box && g.edges[e].w[end] < 1)
        bad.push_back("A1: non-positive weight at edge " + std::to_string(e));
    }
  for (std::size_t v = 0; v < g.kinds.size(); ++v) {
    int val = valence(adj, int(v));
    if (g.kinds[v] == VertexKind::box) {
      if (val < 3) bad.push_back("A2: box " + std::to_string(v) + " has valence < 3");
      int knobs = 0;
      for (int e : adj[v])
        if (g.kinds[g.other_end(e, int(v))] == VertexKind::knob) ++knobs;
      if (knobs > 2) bad.push_back("A2: box " + std::to_string(v) + " has > 2 knobs");
    } else if (val != 1) {
      bad.push_back("A2: leaf vertex " + std::to_string(v) + " has valence != 1");
    }
  }
  for (int b : g.boxes()) {
    std::vector<Int> ws;
    for (int e : adj[b]) ws.push_back(g.weight_at(e, b));
    for (std::size_t i = 0; i < ws.size(); ++i)
      for (std::size_t j = i + 1; j < ws.size(); ++j)
        if (gcd(ws[i], ws[j]) != 1)
          bad.push_back("A3: weights at box " + std::to_string(b) + " not coprime");
  }
  // A4: among the components cut off from a box by its box-edges, at most one
  // carries no arrowhead, and its connecting edge has weight 1 at the far box.
  for (int b : g.boxes()) {
    int blank = 0;
    for (int e : adj[b]) {
      int u = g.other_end(e, b);
      if (g.kinds[u] != VertexKind::box) continue;
      if (m_value(g, b, u) == 0) {
        ++blank;
        if (g.weight_at(int(e), u) != 1)
          bad.push_back("A4: arrowless component via edge " + std::to_string(e) +
                        " lacks weight 1 at the far box");
      }
    }
    if (blank > 1) bad.push_back("A4: box " + std::to_string(b) + " has two arrowless sides");
  }
  // A5: positive edge determinants.
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    int u = g.edges[e].v[0], v = g.edges[e].v[1];
    if (g.kinds[u] != VertexKind::box || g.kinds[v] != VertexKind::box) continue;
    Int prod(1);
    for (int e2 : adj[u])
      if (e2 != int(e)) prod *= g.weight_at(e2, u);
    for (int e2 : adj[v])
      if (e2 != int(e)) prod *= g.weight_at(e2, v);
    Int delta = g.edges[e].w[0] * g.edges[e].w[1] - prod;
    if (delta <= 0) bad.push_back("A5: edge " + std::to_string(e) + " has determinant <= 0");
  }
  if (collapsed) {
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      int u = g.edges[e].v[0], v = g.edges[e].v[1];
      int box = -1, knob = -1;
      if (g.kinds[u] == VertexKind::box && g.kinds[v] == VertexKind::knob) box = u, knob = v;
      if (g.kinds[v] == VertexKind::box && g.kinds[u] == VertexKind::knob) box = v, knob = u;
      if (box >= 0 && g.weight_at(int(e), box) <= 1)
        bad.push_back("A6: box-knob edge " + std::to_string(e) + " has weight <= 1");
      (void)knob;
    }
  }
  // B-properties follow from the m-function.
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    int u = g.edges[e].v[0], v = g.edges[e].v[1];
    Int muv = m_value(g, u, v), mvu = m_value(g, v, u);
    if (muv == 0 && mvu == 0) bad.push_back("B1: edge " + std::to_string(e));
    if (g.kinds[u] == VertexKind::box && g.kinds[v] == VertexKind::box) {
      if (muv == 0 && g.edges[e].w[1] != 1) bad.push_back("B2: edge " + std::to_string(e));
      if (mvu == 0 && g.edges[e].w[0] != 1) bad.push_back("B2: edge " + std::to_string(e));
    }
    if (g.kinds[u] == VertexKind::box && g.kinds[v] == VertexKind::arrowhead && muv != 1)
      bad.push_back("B4: edge " + std::to_string(e));
    if (g.kinds[v] == VertexKind::box && g.kinds[u] == VertexKind::arrowhead && mvu != 1)
      bad.push_back("B4: edge " + std::to_string(e));
  }
  for (int b : g.boxes()) {
    int zero_neighbors = 0;
    for (int e : adj[b]) {
      int u = g.other_end(e, b);
      if (g.kinds[u] == VertexKind::box && m_value(g, b, u) == 0) ++zero_neighbors;
    }
    if (zero_neighbors > 1) bad.push_back("B3: box " + std::to_string(b));
  }
  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  return bad;
}

// ---------------------------------------------------------------------------
// Diagram construction from Puiseux data.

namespace {

struct NestedBranch {
  std::vector<Int> q, p, alpha;  // 1-based data stored 0-based
  FracPowerSeries fps;
  long levels() const { return long(q.size()); }
};

NestedBranch extract_nested(const FracPowerSeries& f) {
  NestedBranch nb;
  nb.fps = f;
  Rat prev(0);
  Int D(1);
  for (const auto& [c, n] : f.terms) {
    Rat e = make_rat(n, f.d);
    Rat delta = e - prev;
    prev = e;
    if (delta <= 0) throw error(errc::malformed_data, "exponents must increase");
    Int u = delta.get_num(), v = delta.get_den();
    Int g = gcd(v, D);
    Int pi = v / g;
    Int qi = u * (D / g);
    if (gcd(qi, pi) != 1) throw error(errc::malformed_data, "nested form extraction failed");
    nb.q.push_back(qi);
    nb.p.push_back(pi);
    D *= pi;
  }
  if (D != f.d) throw error(errc::malformed_data, "gcd(d, exponents) != 1 in branch data");
  for (long i = 0; i < nb.levels(); ++i) {
    if (i == 0)
      nb.alpha.push_back(nb.q[0]);
    else
      nb.alpha.push_back(nb.q[i] + nb.p[i - 1] * nb.p[i] * nb.alpha[i - 1]);
  }
  return nb;
}

struct Builder {
  SpliceDiagram g;
  int add(VertexKind k) {
    g.kinds.push_back(k);
    if (k == VertexKind::arrowhead) g.arrow_branch.push_back(-1);
    while (g.arrow_branch.size() < g.kinds.size()) g.arrow_branch.push_back(-1);
    return int(g.kinds.size()) - 1;
  }
  void edge(int a, int b, Int wa, Int wb) { g.edges.push_back({{a, b}, {wa, wb}}); }
};

struct DiagramBuild {
  const std::vector<NestedBranch>& branches;
  Builder b;

  long sep(int i, int j) const {
    long mx = std::max(branches[i].fps.terms.size(), branches[j].fps.terms.size());
    for (long s = 0; s <= mx + 1; ++s) {
      if (!puiseux::equivalent(puiseux::truncate_at(branches[i].fps, s + 1),
                               puiseux::truncate_at(branches[j].fps, s + 1)))
        return s;
    }
    throw error(errc::malformed_data, "branches are equivalent");
  }

  int add_arrow(int branch) {
    int a = b.add(VertexKind::arrowhead);
    b.g.arrow_branch[a] = branch;
    return a;
  }

  // Attach a new box to the structure; parent < 0 creates the trunk knob.
  int attach_box(int parent, const Int& w_parent, const Int& w_box) {
    int bx = b.add(VertexKind::box);
    if (parent < 0) {
      int k = b.add(VertexKind::knob);
      b.edge(k, bx, Int(0), w_box);
    } else {
      b.edge(parent, bx, w_parent, w_box);
    }
    return bx;
  }

  // Emit the subtree for branch set S; all pairs of S agree at level `built`
  // and every branch has at least `built` levels.
  void emit(std::vector<int> S, long built, int parent, Int w_parent) {
    if (S.size() == 1) {
      const NestedBranch& nb = branches[S[0]];
      int prev = parent;
      Int w_prev = w_parent;
      for (long s = built; s < nb.levels(); ++s) {
        int bx = attach_box(prev, w_prev, nb.alpha[s]);
        int knob = b.add(VertexKind::knob);
        b.edge(bx, knob, nb.p[s], Int(0));
        prev = bx;
        w_prev = 1;
      }
      if (prev < 0)
        throw error(errc::malformed_data, "input describes a smooth germ, not a singularity");
      int arrow = add_arrow(S[0]);
      b.edge(prev, arrow, w_prev, Int(0));
      return;
    }
    long t = -1;
    for (std::size_t i = 0; i < S.size(); ++i)
      for (std::size_t j = i + 1; j < S.size(); ++j) {
        long s = sep(S[i], S[j]);
        if (t < 0 || s < t) t = s;
      }
    // Common chain for levels built+1 .. t.
    int prev = parent;
    Int w_prev = w_parent;
    const NestedBranch& head = branches[S[0]];
    for (long s = built; s < t; ++s) {
      int bx = attach_box(prev, w_prev, head.alpha[s]);
      int knob = b.add(VertexKind::knob);
      b.edge(bx, knob, head.p[s], Int(0));
      prev = bx;
      w_prev = 1;
    }
    // Split at level t+1.
    std::vector<int> exhausted, continuing;
    for (int j : S)
      (branches[j].levels() == t ? exhausted : continuing).push_back(j);
    if (exhausted.size() > 1)
      throw error(errc::malformed_data, "two branches exhausted at the same truncation");
    if (continuing.empty())
      throw error(errc::malformed_data, "no continuing branch at a split");
    // Slope groups ordered by q/p ascending.
    std::map<Rat, std::vector<int>> groups;
    for (int j : continuing) {
      Rat slope = make_rat(branches[j].q[t], branches[j].p[t]);
      groups[slope].push_back(j);
    }
    int prev2 = prev;
    Int w_prev2 = w_prev;

    for (const auto& [slope, members] : groups) {
      const NestedBranch& rep = branches[members[0]];
      int bx = attach_box(prev2, w_prev2, rep.alpha[t]);
      // Coefficient classes at level t+1.
      std::vector<std::vector<int>> classes;
      for (int j : members) {
        bool placed = false;
        for (auto& cl : classes)
          if (puiseux::equivalent(puiseux::truncate_at(branches[j].fps, t + 1),
                                  puiseux::truncate_at(branches[cl[0]].fps, t + 1))) {
            cl.push_back(j);
            placed = true;
            break;
          }
        if (!placed) classes.push_back({j});
      }
      for (auto& cl : classes) emit(cl, t + 1, bx, Int(1));
      prev2 = bx;
      w_prev2 = rep.p[t];

    }
    if (!exhausted.empty()) {
      int arrow = add_arrow(exhausted[0]);
      b.edge(prev2, arrow, w_prev2, Int(0));
    } else {
      int knob = b.add(VertexKind::knob);
      b.edge(prev2, knob, w_prev2, Int(0));
    }

  }
};

}  // namespace

SpliceDiagram build_diagram(const std::vector<FracPowerSeries>& data) {
  if (data.empty()) throw error(errc::malformed_data, "no branches");
  for (const auto& f : data)
    if (f.swapped)
      throw error(errc::malformed_data,
                  "branch along x = 0 present; rotate coordinates and retry");
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = i + 1; j < data.size(); ++j)
      if (puiseux::equivalent(data[i], data[j]))
        throw error(errc::malformed_data, "branches must be pairwise non-equivalent");
  // The germ multiplicity (sum over branches of min(d, n_1)) must be >= 2;
  // a smooth germ has no meaningful diagram.
  Int mult(0);
  for (const auto& f : data)
    mult += f.terms.empty() ? f.d : std::min(f.d, f.terms.front().second);
  if (mult < 2) throw error(errc::malformed_data, "data describes a smooth germ");
  std::vector<NestedBranch> nested;
  for (const auto& f : data) nested.push_back(extract_nested(f));
  DiagramBuild db{nested, {}};
  std::vector<int> all(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) all[i] = int(i);
  db.emit(all, 0, -1, Int(0));
  auto bad = check_properties(db.b.g, false);
  if (!bad.empty()) throw error(errc::property_violation, bad.front());
  return db.b.g;
}

namespace {

SpliceDiagram compact(const SpliceDiagram& g, const std::vector<char>& keep_v,
                      const std::vector<char>& keep_e,
                      const std::vector<DiagramEdge>& extra_edges) {
  SpliceDiagram out;
  std::vector<int> vmap(g.kinds.size(), -1);
  for (std::size_t v = 0; v < g.kinds.size(); ++v)
    if (keep_v[v]) {
      vmap[v] = int(out.kinds.size());
      out.kinds.push_back(g.kinds[v]);
      out.arrow_branch.push_back(v < g.arrow_branch.size() ? g.arrow_branch[v] : -1);
    }
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (keep_e[e])
      out.edges.push_back(
          {{vmap[g.edges[e].v[0]], vmap[g.edges[e].v[1]]}, {g.edges[e].w[0], g.edges[e].w[1]}});
  for (const auto& e : extra_edges)
    out.edges.push_back({{vmap[e.v[0]], vmap[e.v[1]]}, {e.w[0], e.w[1]}});
  return out;
}

}  // namespace

SpliceDiagram collapse(const SpliceDiagram& start) {
  SpliceDiagram g = start;
  if (g.is_gamma_star) return g;
  long guard = long(g.edges.size()) + 4;
  for (long iter = 0;; ++iter) {
    if (iter > guard) throw error(errc::non_terminating, "collapse did not terminate");
    auto adj = g.adjacency();
    int e_found = -1, box = -1, knob = -1;
    for (std::size_t e = 0; e < g.edges.size() && e_found < 0; ++e) {
      int u = g.edges[e].v[0], v = g.edges[e].v[1];
      for (int flip = 0; flip < 2; ++flip) {
        int bb = flip ? v : u, kk = flip ? u : v;
        if (g.kinds[bb] == VertexKind::box && g.kinds[kk] == VertexKind::knob &&
            g.weight_at(int(e), bb) == 1) {
          e_found = int(e);
          box = bb;
          knob = kk;
          break;
        }
      }
    }
    if (e_found < 0) return g;
    int k = int(adj[box].size());
    int n = 0;
    for (int e : adj[box])
      if (g.kinds[g.other_end(e, box)] == VertexKind::box) ++n;
    if (k < 3) throw error(errc::property_violation, "box of valence < 3 during collapse");
    if (k == 3 && n == 0) return gamma_star();
    std::vector<char> keep_v(g.kinds.size(), 1), keep_e(g.edges.size(), 1);
    std::vector<DiagramEdge> extra;
    if (k > 3) {
      keep_v[knob] = 0;
      keep_e[e_found] = 0;
    } else {
      // k == 3, n >= 1: erase the box and its weight-1 knob, merge the other
      // two edges keeping their far-end weights.
      std::vector<int> rest;
      for (int e : adj[box])
        if (e != e_found) rest.push_back(e);
      int x2 = g.other_end(rest[0], box), x3 = g.other_end(rest[1], box);
      DiagramEdge merged{{x2, x3}, {g.weight_at(rest[0], x2), g.weight_at(rest[1], x3)}};
      keep_v[box] = 0;
      keep_v[knob] = 0;
      keep_e[e_found] = 0;
      keep_e[rest[0]] = 0;
      keep_e[rest[1]] = 0;
      extra.push_back(merged);
    }
    g = compact(g, keep_v, keep_e, extra);
  }
}

namespace {

struct BoxData {
  std::vector<int> nonknob;  // adjacent vertices in A u B (sorted)
  std::vector<int> nonknob_edges;
  std::vector<int> knob_edges;
  std::vector<Int> weights;        // all weights at the box (parallel to adj order)
  std::vector<int> all_edges;
};

BoxData box_data(const SpliceDiagram& g, const std::vector<std::vector<int>>& adj, int b) {
  BoxData d;
  for (int e : adj[b]) {
    d.all_edges.push_back(e);
    int u = g.other_end(e, b);
    if (g.kinds[u] == VertexKind::knob)
      d.knob_edges.push_back(e);
    else {
      d.nonknob.push_back(u);
      d.nonknob_edges.push_back(e);
    }
  }
  return d;
}

Int weight_product_except(const SpliceDiagram& g,
                          const std::vector<std::vector<int>>& adj, int b, int skip_edge) {
  Int prod(1);
  for (int e : adj[b])
    if (e != skip_edge) prod *= g.weight_at(e, b);
  return prod;
}

Int ell_of_box(const SpliceDiagram& g, const std::vector<std::vector<int>>& adj, int b) {
  Int ell(0);
  for (int e : adj[b]) {
    int u = g.other_end(e, b);
    if (g.kinds[u] == VertexKind::knob) continue;
    ell += m_value(g, b, u) * weight_product_except(g, adj, b, e);
  }
  return ell;
}

}  // namespace

std::vector<CharEntry> characteristic_set(const SpliceDiagram& g) {
  std::vector<CharEntry> out;
  if (g.is_gamma_star) {
    out.push_back({Int(0), Int(1), Int(2), Rat(1), "gamma_star"});
    return out;
  }
  auto bad = check_properties(g, true);
  if (!bad.empty()) throw error(errc::property_violation, bad.front());
  auto adj = g.adjacency();
  std::map<int, Int> ell;
  for (int b : g.boxes()) ell[b] = ell_of_box(g, adj, b);
  for (int b : g.boxes()) {
    BoxData bd = box_data(g, adj, b);
    Int d_b(0), h_b(0);
    for (std::size_t i = 0; i < bd.nonknob.size(); ++i) {
      Int mb = m_value(g, b, bd.nonknob[i]);
      Int mv = m_value(g, bd.nonknob[i], b);
      d_b = gcd(d_b, mb);
      h_b += gcd(mb, mv);
    }
    Int ell_b = ell[b];
    if (ell_b <= 0) throw error(errc::property_violation, "ell_b <= 0 at box " + std::to_string(b));
    // chi_b = ell_b * (2 - k + sum over knob edges of 1/a).
    Rat chi = Rat(2 - long(bd.all_edges.size()));
    for (int e : bd.knob_edges) chi += Rat(1) / Rat(g.weight_at(e, b));
    chi *= Rat(ell_b);
    if (!is_integer(chi) || chi >= 0)
      throw error(errc::property_violation, "chi_b must be a negative integer at box " + std::to_string(b));
    Int chi_b = chi.get_num();
    if (d_b <= 0) throw error(errc::property_violation, "d_b <= 0 at box " + std::to_string(b));
    if (h_b % d_b != 0 || chi_b % d_b != 0)
      throw error(errc::property_violation,
                  "divisibility d_b | h_b, d_b | chi_b fails at box " + std::to_string(b));
    // Per-component genus must be a nonnegative integer.
    Int chi_c = chi_b / d_b, h_c = h_b / d_b;
    Int twog = 2 - chi_c - h_c;
    if (twog < 0 || twog % 2 != 0)
      throw error(errc::property_violation,
                  "component genus is not a nonnegative integer at box " + std::to_string(b));
    out.push_back({chi_b, d_b, h_b, Rat(ell_b), "box:" + std::to_string(b)});
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    int u = g.edges[e].v[0], v = g.edges[e].v[1];
    bool ub = g.kinds[u] == VertexKind::box, vb = g.kinds[v] == VertexKind::box;
    if (ub && vb) {
      Int muv = m_value(g, u, v), mvu = m_value(g, v, u);
      Int d_e = gcd(muv, mvu);
      Int delta = g.edges[e].w[0] * g.edges[e].w[1] -
                  weight_product_except(g, adj, u, int(e)) *
                      weight_product_except(g, adj, v, int(e));
      if (delta <= 0) throw error(errc::property_violation, "Delta_e <= 0");
      Rat ell_e = Rat(d_e * delta) / Rat(ell[u] * ell[v]);
      ell_e.canonicalize();
      out.push_back({Int(0), d_e, 2 * d_e, ell_e, "edge:" + std::to_string(e)});
    } else if (ub || vb) {
      int b = ub ? u : v;
      int a = ub ? v : u;
      if (g.kinds[a] != VertexKind::arrowhead) continue;  // box-knob edge
      Rat ell_e = Rat(1) / Rat(ell[b]);
      out.push_back({Int(0), Int(1), Int(2), ell_e, "edge:" + std::to_string(e)});
    }
  }
  return out;
}

TwistModel gamma_star_twist_model() { return TwistModel{}; }

TwistModel twist_model(const SpliceDiagram& g, int edge) {
  if (g.is_gamma_star) return gamma_star_twist_model();
  int u = g.edges[edge].v[0], v = g.edges[edge].v[1];
  bool ub = g.kinds[u] == VertexKind::box, vb = g.kinds[v] == VertexKind::box;
  if (!ub && !vb) throw error(errc::invalid_input, "twist model needs an edge in E");
  int b, bp;
  if (ub && vb) {
    b = (m_value(g, u, v) != 0) ? u : v;
    bp = (b == u) ? v : u;
  } else {
    b = ub ? u : v;
    bp = (b == u) ? v : u;
    if (g.kinds[bp] != VertexKind::arrowhead)
      throw error(errc::invalid_input, "twist model needs an edge in E");
  }
  TwistModel t;
  t.m = m_value(g, b, bp);
  t.m_prime = m_value(g, bp, b);
  if (t.m == 0) throw error(errc::property_violation, "oriented m vanishes on both ends");
  t.d_e = gcd(t.m, t.m_prime);
  t.a = g.weight_at(edge, b);
  auto adj = g.adjacency();
  t.ell_b = ell_of_box(g, adj, b);
  if (g.kinds[bp] == VertexKind::arrowhead) {
    t.ell_e = Rat(1) / Rat(t.ell_b);
  } else {
    Int delta = g.edges[edge].w[0] * g.edges[edge].w[1] -
                weight_product_except(g, adj, b, edge) *
                    weight_product_except(g, adj, bp, edge);
    t.ell_e = Rat(t.d_e * delta) / Rat(t.ell_b * ell_of_box(g, adj, bp));
  }
  t.ell_e.canonicalize();
  // Bezout pair m*n' + m'*n = d_e with the least nonnegative n'.
  if (t.m_prime == 0) {
    t.n_prime = t.d_e / t.m;  // d_e = gcd(m, 0) = m
    t.n = 0;
  } else {
    Int s, tt;
    Int dd = gcd_ext(t.m, t.m_prime, s, tt);
    if (dd != t.d_e) throw error(errc::invalid_input, "gcd mismatch");
    Int period = t.m_prime / t.d_e;
    Int np = s % period;
    if (np < 0) np += period;
    t.n_prime = np;
    t.n = (t.d_e - t.m * np) / t.m_prime;
  }
  return t;
}

std::vector<Rat> twist_fixed_points(const TwistModel& t) {
  std::vector<Rat> out;
  if (t.d_e != 1) return out;
  Rat denom = Rat(t.m) * Rat(t.ell_b) * t.ell_e;
  if (denom == 0) return out;
  // a - q*denom in ell_b * Z, q in (0,1):  q = (a - ell_b*j)/denom.
  Rat lo = (Rat(t.a) - denom) / Rat(t.ell_b);
  Rat hi = Rat(t.a) / Rat(t.ell_b);
  if (denom < 0) std::swap(lo, hi);
  for (Int j = rat_floor(lo) - 1; j <= rat_ceil(hi) + 1; ++j) {
    Rat q = (Rat(t.a) - Rat(t.ell_b) * Rat(j)) / denom;
    q.canonicalize();
    if (q > 0 && q < 1) out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<Rat, Rat> boundary_rotations(const TwistModel& t) {
  // phi_e^{d_e}(q,p) = (q, p - q*d_e*ell_e - (d_e/m)(n - d_e*a/ell_b)).
  Rat shift = -(Rat(t.d_e) / Rat(t.m)) * (Rat(t.n) - Rat(t.d_e * t.a) / Rat(t.ell_b));
  Rat at0 = mod_one(shift);
  Rat at1 = mod_one(shift - Rat(t.d_e) * t.ell_e);
  return {at0, at1};
}

std::string to_dot(const SpliceDiagram& g) {
  std::ostringstream os;
  os << "digraph splice {\n";
  os << "  rankdir=LR;\n";
  for (std::size_t v = 0; v < g.kinds.size(); ++v) {
    os << "  v" << v << " [";
    switch (g.kinds[v]) {
      case VertexKind::box:
        os << "shape=circle, label=\"v" << v << "\"";
        break;
      case VertexKind::knob:
        os << "shape=point";
        break;
      case VertexKind::arrowhead:
        os << "shape=none, label=\"\"";
        break;
    }
    os << "];\n";
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    std::string label;
    for (int end = 0; end < 2; ++end)
      if (g.kinds[ed.v[end]] == VertexKind::box) {
        if (!label.empty()) label += "|";
        label += ed.w[end].get_str();
      }
    bool into_arrow = g.kinds[ed.v[1]] == VertexKind::arrowhead;
    bool from_arrow = g.kinds[ed.v[0]] == VertexKind::arrowhead;
    int tail = from_arrow ? ed.v[1] : ed.v[0];
    int head = from_arrow ? ed.v[0] : ed.v[1];
    os << "  v" << tail << " -> v" << head << " [label=\"" << label << "\"";
    if (!(into_arrow || from_arrow)) os << ", dir=none";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace floerhf::splice
