#pragma once

#include <functional>
#include <string>
#include <vector>

#include "darboux/surfaces.hpp"
#include "darboux/vec3.hpp"

namespace darboux {

/// One Darboux triplet at a point: jets of (f, g, h) at a common order,
/// tied together by dg = h x df.
struct TripletJets {
  JV3 f, g, h;

  int order() const { return f.x.order(); }
};

/// The unique rotation field h with d_i g = h x d_i f, i = 1,2, solved from
/// the stacked 6x3 linear system by normal equations in jet arithmetic
/// (adjugate over determinant), so dh comes out alongside h. Input jets must
/// have order >= 1; the result has one order less.
JV3 solve_rotation_field(const JV3& f, const JV3& g);

/// max_i |d_i g - h x d_i f| at the value level, relative to the derivative
/// scale. Doubles as the df.dg = 0 certificate: a nonzero symmetrized product
/// makes the least-squares system inconsistent.
double rotation_residual(const JV3& f, const JV3& g, const JV3& h);

/// (f, g, h) -> (h, g - h x f, f). Order preserving; an involution.
TripletJets step_A(const TripletJets& t);

/// How the D step obtains the new rotation field.
enum class DRoute {
  automatic,       // rotation_solve, falling back to polar_of_h
  rotation_solve,  // solve df = h* x dg
  polar_of_h,      // h* = -nu_h / (nu_h . h)
  cross_check,     // compute both, assert they agree
};

/// (f, g, h) -> (g, f, h*). Costs one jet order.
TripletJets step_D(const TripletJets& t, DRoute route = DRoute::automatic);

/// Polar surface w.r.t. the quadric x.x = -1: m* = -nu_m/(nu_m . m) with
/// nu_m = d1 m x d2 m. Satisfies m*.m = -1 and m*.dm = 0. One order less.
JV3 polar_jet(const JV3& m);

/// Cancel AA and DD factors until none remain. Throws BadWord on letters
/// outside {A, D}.
std::string reduce_word(const std::string& word);

/// Lazily evaluated triplet: `jets` produces all three components at once so
/// a chain of transforms evaluates each intermediate triplet exactly once.
/// The component maps share that closure.
struct DarbouxTriplet {
  std::function<TripletJets(double, double, int)> jets;
  SurfaceMap f, g, h;
  std::string provenance;  // word over {A, D} applied to the base triplet
  Domain domain;
};

/// Base triplet of a deformation pair; h is solved from (f, g), not taken
/// from the pair's closed form.
DarbouxTriplet make_triplet(const DeformationPair& p);

DarbouxTriplet transform_A(const DarbouxTriplet& t);
DarbouxTriplet transform_D(const DarbouxTriplet& t,
                           DRoute route = DRoute::automatic);

/// Left-factor-first application of a word over {A, D}, reduced modulo
/// A^2 = D^2 = id before composing. Evaluation errors from an inner step are
/// rethrown with the failing prefix in the message.
DarbouxTriplet apply_word(const DarbouxTriplet& t, const std::string& word);

/// Gauge move (f, g, h) -> (f + v, g + a x f + b, h + a); preserves the
/// triplet relation and is used to escape degenerate positions.
DarbouxTriplet triplet_shift(const DarbouxTriplet& t, V3 v = {0.1, 0.2, 0.3},
                             V3 a = {0.07, -0.05, 0.11}, V3 b = {0, 0, 0});

/// Rotation field of a deformation pair as a lazy map; evaluation throws
/// NotImmersion or InconsistentSystem when the defining system degenerates.
SurfaceMap compute_h(const SurfaceMap& f, const SurfaceMap& g);

enum class PolarNormalization { tangent_plane };

SurfaceMap polar(const SurfaceMap& m,
                 PolarNormalization norm = PolarNormalization::tangent_plane);

/// Direct fold of a word over TripletJets with no lazy layer in between.
/// With reduce = false the word is applied letter for letter; that is how the
/// involution identities and the twelve-step closure are checked numerically.
TripletJets eval_word_jets(const DeformationPair& p, const std::string& word,
                           double u, double v, int order, bool reduce = true,
                           DRoute route = DRoute::automatic);

struct OrbitEntry {
  std::string word;    // reduced word naming the surface
  std::string label;   // f, g, h and their star / tilde companions
  std::string family;  // asymptotic class representative: "f", "g" or "h"
  SurfaceMap surface;  // first component of the word's triplet
};

/// First components of the twelve triplets in the dihedral orbit, with their
/// classical labels and the partition into the three four-element classes.
std::vector<OrbitEntry> twelve_surfaces(const DarbouxTriplet& t);

/// Look up an orbit entry by word or by label. Throws UnknownSurface.
const OrbitEntry& find_surface(const std::vector<OrbitEntry>& orbit,
                               const std::string& word_or_label);

}  // namespace darboux
