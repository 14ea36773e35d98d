#pragma once

// Numerical tolerances used across the library. The ladder reflects expected
// error growth: algebraic identities sit at rounding level, residuals built
// from first derivatives one step up, anything involving second derivatives or
// long transform chains one more.
namespace darboux::tol {

inline constexpr double jet_eps = 1e-12;        // singular-divisor detection
inline constexpr double algebra = 1e-12;        // closed algebraic identities
inline constexpr double iso_eps = 1e-9;         // isotropy check, relative to |Z|^2
inline constexpr double kernel_cutoff = 1e-9;   // SVD kernel cutoff, relative to sigma_max
inline constexpr double proj_eq = 1e-8;         // projective point equality (sin angle)
inline constexpr double subspace_eq = 1e-8;     // max principal angle (sin)
inline constexpr double triplet_residual = 1e-8;   // first-derivative residuals
inline constexpr double route_agreement = 1e-8;    // the two D-step constructions
inline constexpr double orbit_residual = 1e-7;     // derived-surface / word-closure checks
inline constexpr double cross_oracle = 1e-7;    // closed-form vs generic Gauss maps
inline constexpr double prop6 = 1e-7;           // differential triality residuals
inline constexpr double cycle = 1e-6;           // triality cycle residuals
inline constexpr double forms_direction = 1e-6; // off-direction residual in form extraction
inline constexpr double apolarity = 1e-6;
inline constexpr double proportionality = 1e-6;
inline constexpr double kernel_angle = 1e-5;    // Lemma-15 style kernel comparisons
inline constexpr double ruling = 1e-5;
inline constexpr double form_rank_cutoff = 1e-6;
inline constexpr double form_zero = 1e-8;   // relative, see second_forms.hpp
inline constexpr double rank_cutoff = 1e-7;     // SVD rank cutoff for differentials
inline constexpr double membership = 1e-8;      // incidence membership residual
inline constexpr double tangency = 1e-7;        // incidence first-derivative residuals
inline constexpr double fiber_cutoff = 1e-6;    // SVD cutoff for incidence fiber spaces
// Rank cutoff for finite-difference Lie brackets. Nested central differences
// at step fd_step leave absolute noise near 1e-4 on unit-scale fields, so a
// singular value is treated as genuine only three decades above that floor;
// the structural singular values of the bracket matrices sit well above 1e-2.
inline constexpr double bracket_cutoff = 1e-3;
inline constexpr double fd_agreement = 1e-6;    // jets vs central finite differences
inline constexpr double fd_step = 1e-4;
inline constexpr double validate_pair = 1e-9;   // isometric-deformation residual
inline constexpr double immersion = 1e-9;       // |d1 x d2| relative floor

}
