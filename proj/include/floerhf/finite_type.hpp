#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "floerhf/gf2.hpp"
#include "floerhf/surface.hpp"

namespace floerhf::finite_type {

// One orbit of periodic pieces: `copies` homeomorphic pieces permuted
// cyclically; the return map on a single copy has order `period`.
struct PeriodicPiece {
  std::string id;
  int genus = 0;
  int boundary = 0;
  int period = 1;
  int copies = 1;
  std::optional<std::pair<int, int>> orbit;  // (genus, boundary) of the quotient
  std::vector<int> orbit_multiplicities;     // exceptional-orbit orders >= 2
  int fixed_points = 0;                      // declared, validated not computed

  bool is_identity() const { return period == 1 && copies == 1; }
  long chi_one_copy() const { return 2 - 2 * long(genus) - long(boundary); }
};

enum class TwistKind { twist, flip_twist };
enum class TwistSign { positive, negative };

struct Attachment {
  std::string piece;
  int slot = 0;
  bool operator==(const Attachment&) const = default;
};

struct TwistRegion {
  std::string id;
  int annuli = 1;
  TwistKind kind = TwistKind::twist;
  TwistSign sign = TwistSign::positive;  // twists only
  bool interior_fixed_free = true;       // condition (3) flag
  std::array<Attachment, 2> attach;
};

struct FiniteTypeMap {
  std::vector<PeriodicPiece> pieces;
  std::vector<TwistRegion> twists;
  bool closed = true;
};

struct Violation {
  std::string clause;  // e.g. "(3)", "(4)", "riemann-hurwitz", "gluing"
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

ValidationReport validate(const FiniteTypeMap& map);

// Union of the pointwise-fixed pieces; a boundary circle is marked iff the
// adjoining twist region is positive.
surface::SurfacePair sigma0(const FiniteTypeMap& map);

long lefschetz_outside(const FiniteTypeMap& map);
long nielsen_number(const FiniteTypeMap& map);

struct Action {
  int degree = 0;
  std::string label;
  gf2::GF2Matrix matrix;  // acts on the total space, grading shifted by degree
};

struct GradedZ2Module {
  surface::RankVector ranks;
  std::vector<Action> actions;
};

GradedZ2Module floer_homology(const FiniteTypeMap& map);
std::vector<Action> module_structure(const FiniteTypeMap& map);

// Action matrices of H^*(K; Z2) on H_*(pair) + Z2^lambda (lambda generators
// appended to the degree-0 block); shared by the mapping-class and monodromy
// pipelines.
std::vector<Action> pair_module_actions(const surface::SurfaceComplex& K,
                                        const surface::PairMasks& masks,
                                        const surface::HomologyResult& H,
                                        long lambda);

}  // namespace floerhf::finite_type
