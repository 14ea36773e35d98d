#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "darboux/quadric.hpp"
#include "darboux/triplet.hpp"

namespace darboux {

/// Jet data of the isotropic lift psi = (f : 1 : g : -f.g) at one parameter
/// point, together with division-free projective representatives of the two
/// Gauss maps. psi_plus is rho^{-1}(h.gt, -h; -gt, 1); psi_minus is
/// rho^{-1}(nu.f, (nu.f) h + nu x gt; -nu, -h.nu), which stays defined when
/// the tangent planes of f pass through the origin (there nu.f = 0 and the
/// polar of f does not exist).
struct IsotropicImmersionPoint {
  TripletJets trip;  // f, g, h one order above the representatives
  J44 psi;
  J44 psi_plus, psi_minus;
  JV3 gtilde, nu_f;
  IsoSubspace v;  // span{psi, d1 psi, d2 psi} at the value level

  int order() const { return psi.s.order(); }
};

/// The isotropic lift as a jet; q(psi) vanishes identically.
J44 lift_psi(const DeformationPair& p, double u, double v, int order);

IsotropicImmersionPoint lift_point(const DeformationPair& p, double u, double v,
                                   int order = 2);

/// Same data computed from a (possibly word-derived) lazy triplet.
IsotropicImmersionPoint lift_point(const DarbouxTriplet& t, double u, double v,
                                   int order = 2);

/// Gauss maps by the incidence geometry alone: the two maximal isotropic
/// extensions of span{psi, d1 psi, d2 psi}, ordered (plus, minus).
std::pair<IsoSubspace, IsoSubspace> gauss_maps_generic(
    const IsotropicImmersionPoint& p);

/// Gauss maps from the closed chart formulas: chart_plus(h, gtilde) and
/// chart_minus(htilde, fstar) with htilde = h - fstar x gtilde. When the
/// polar of f is undefined at the point, the minus space falls back to an
/// equivalent division-free basis.
std::pair<IsoSubspace, IsoSubspace> gauss_maps_closed_form(
    const DarbouxTriplet& t, double u, double v);

/// Largest sin of a principal angle between the generic-route and
/// closed-form Gauss maps, over both sides.
double cross_oracle_residual(const DeformationPair& p, double u, double v);

struct TrialityReport {
  // Scale-normalized sup norms of the four families of Zorn products that
  // the differential identities say must vanish.
  double psi_plus_dpsi = 0;    // psi_plus . d_i psi
  double dpsi_psi_minus = 0;   // d_i psi . psi_minus
  double psi_minus_dpsi_plus = 0;
  double dpsi_minus_psi_plus = 0;
  int points = 0;

  double max_residual() const {
    return std::max({psi_plus_dpsi, dpsi_psi_minus, psi_minus_dpsi_plus,
                     dpsi_minus_psi_plus});
  }
};

TrialityReport verify_differential_triality(const DeformationPair& p, int grid_n,
                                            Exec exec = Exec::parallel);

struct CycleReport {
  // sin of the projective angle between each recomputed secondary Gauss map
  // and its predicted identification.
  double plus_plus = 0;   // (phi+)+ against the minus label
  double plus_minus = 0;  // (phi+)- against psi itself
  double minus_plus = 0;  // (phi-)+ against psi itself
  double minus_minus = 0; // (phi-)- against the plus label
  int checked = 0;
  int skipped = 0;  // points where a secondary map fails to immerse

  double max_residual() const {
    return std::max({plus_plus, plus_minus, minus_plus, minus_minus});
  }
};

/// Treats each Gauss map as a new map into the quadric, recomputes its Gauss
/// maps geometrically, and verifies the three-cycle identifications. Points
/// where either Gauss map has rank below 2 are skipped; if no point survives,
/// DegenerateSecondary is thrown.
CycleReport verify_triality_cycle(const DeformationPair& p, int grid_n,
                                  Exec exec = Exec::parallel);

struct PhiLevelReport {
  double plus_vs_A = 0;      // theta+(phi+) against c of the A-transform's lift
  double sigma_vs_D = 0;     // sigma of the lift against the D-transform's lift
  double central_vs_sc = 0;  // six-letter alternating word against sigma.c
};

/// Checks that the triplet involutions act on lifts by the coordinate
/// involutions of the quadric.
PhiLevelReport darboux_at_phi_level(const DarbouxTriplet& t, double u, double v);

struct RankPoint {
  GridPoint at;
  int rank_plus, rank_minus;
};

struct RankReport {
  std::vector<RankPoint> points;
  int rank_plus_max = 0, rank_minus_max = 0;
  PairClass label = PairClass::generic;
  double max_ruling_residual = 0;  // filled where a side has rank exactly 1
  int ruling_points = 0;
};

/// Degeneracy class from the maximal Gauss-map ranks over a grid.
PairClass rank_class(int rank_plus, int rank_minus);

/// Ranks of both Gauss differentials at one point: the plus side from the
/// 6x2 Jacobian of the chart coordinates (h, gtilde), the minus side from
/// the projected derivative of the normalized minus representative.
std::pair<int, int> gauss_ranks(const IsotropicImmersionPoint& p);

/// Unit kernel direction, in the parameter plane, of the chosen Gauss
/// differential (the right singular direction with the smallest singular
/// value; meaningful when that differential has rank 1).
Eigen::Vector2d gauss_kernel(const IsotropicImmersionPoint& p, Family side);

/// Straightness of the rulings: along the kernel direction of dh the
/// immersion's tangent direction must not turn. Relative to the size of the
/// second derivatives of f.
double ruling_residual(const DeformationPair& p, double u, double v);

RankReport classify_rank(const DeformationPair& p, int grid_n,
                         Exec exec = Exec::parallel);

}  // namespace darboux
