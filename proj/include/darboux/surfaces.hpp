#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "darboux/grid.hpp"
#include "darboux/vec3.hpp"

namespace darboux {

/// Rectangle of parameters with an optional extra genericity predicate.
struct Domain {
  double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
  std::function<bool(double, double)> inside;  // null means whole rectangle
  std::string description;

  bool contains(double u, double v) const {
    if (u < u0 || u > u1 || v < v0 || v > v1) return false;
    return !inside || inside(u, v);
  }
};

/// Parametrized map S -> R^3 evaluated as a jet of any requested order.
struct SurfaceMap {
  std::function<JV3(double, double, int)> eval;
  Domain domain;

  V3 at(double u, double v) const { return value(eval(u, v, 0)); }
};

enum class PairClass {
  generic,
  trivial_displacement,
  planar_normal,
  ruled_rank1_plus,
  developable_rank1_minus,
  ruled_developable_rank1_both,
};

const char* pair_class_name(PairClass c);

/// Surface f with an infinitesimal isometric deformation field g
/// (df . dg = 0 symmetrized). The rotation field h with dg = h X df is
/// recovered by the triplet layer; a closed form is stored when available.
struct DeformationPair {
  std::string name;
  SurfaceMap f, g;
  std::optional<SurfaceMap> h_closed;
  PairClass expected_class = PairClass::generic;
  Domain domain;
};

/// Built-in examples, one per degeneracy class.
const std::vector<DeformationPair>& catalog();

const DeformationPair& find_pair(const std::string& name);

std::vector<std::string> pair_names();

/// Uniform n x n grid over the pair's rectangle, filtered by its predicate.
std::vector<GridPoint> pair_grid(const DeformationPair& p, int n);

/// Unfiltered row-major n x n grid (for meshes); may contain non-generic points.
std::vector<GridPoint> raw_grid(const Domain& d, int n);

struct PairValidation {
  double max_isometry_residual = 0;  // relative to the derivative scale
  double min_immersion = 0;          // min |d1f x d2f| / (|d1f| |d2f|)
  bool pass = false;
};

/// Check df.dg = 0 (all three symmetrized products) and that f immerses,
/// over the given grid. Residuals are scale-normalized.
PairValidation validate_pair(const DeformationPair& p,
                             const std::vector<GridPoint>& grid,
                             Exec exec = Exec::parallel);

}  // namespace darboux
