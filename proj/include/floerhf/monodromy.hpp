#pragma once

#include <array>
#include <string>
#include <vector>

#include "floerhf/finite_type.hpp"
#include "floerhf/splice.hpp"

namespace floerhf::monodromy {

struct DecompPiece {
  splice::CharEntry entry;  // (chi, d, h; ell) with chi < 0
  long components = 1;      // d
  long genus = 0;           // per component
  long boundary = 0;        // per component
};

struct DecompAnnulus {
  splice::CharEntry entry;  // (0, d, 2d; ell)
  splice::TwistModel model;
  // Endpoint tags: "box:<v>" or "boundary:<k>" for the k-th link component.
  std::array<std::string, 2> ends;
};

struct MilnorDecomposition {
  std::vector<DecompPiece> pieces;
  std::vector<DecompAnnulus> annuli;
  struct Fiber {
    long genus = 0;
    long kappa = 0;  // boundary components
    long chi = 0;
  } fiber;
};

MilnorDecomposition assemble(const splice::SpliceDiagram& g);

struct CheckItem {
  std::string id;  // "claim1", "claim2", "claim3", "lambda"
  bool pass = false;
  std::string detail;
};

struct MonodromyReport {
  std::vector<CheckItem> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

MonodromyReport verify_monodromy(const MilnorDecomposition& d);

struct ComplementPiece {
  int genus = 0;
  std::vector<int> attach;  // indices of dM circles, 0..kappa-1
};

struct EmbeddingSpec {
  std::vector<ComplementPiece> complement;
  int disks = 0;  // dM circles capped by collapsed disks
};

finite_type::GradedZ2Module hf_of_monodromy(const MilnorDecomposition& d,
                                            const EmbeddingSpec& e);

finite_type::GradedZ2Module hf_ak(long k, const EmbeddingSpec& e);

// Surrogate Puiseux data of the A_k germ x^2 + y^(k+1) over the rationals.
std::vector<puiseux::FracPowerSeries> ak_puiseux_data(long k);

struct HFPlusResult {
  finite_type::GradedZ2Module module;  // identically zero
  MonodromyReport report;
};

HFPlusResult hf_plus(const MilnorDecomposition& d);

}  // namespace floerhf::monodromy
