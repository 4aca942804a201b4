#pragma once

/// Central tolerance record. Every epsilon used by the library lives here;
/// callers that need a different budget pass their own value explicitly.
namespace ybqfi::tol {

/// exact algebraic identities (unitarity, TL relations, conjugation)
inline constexpr double algebraic = 1e-12;

/// identities mediated by the eigensolver (reconstruction, spectrum match)
inline constexpr double eigensolver = 1e-10;

/// eigenvalue pairs with lam_i + lam_j below this are treated as kernel-kernel
inline constexpr double support = 1e-10;

/// agreement between independent QFI evaluation routes
inline constexpr double route_agreement = 1e-6;

/// agreement between numeric QFI flow and closed-form flow
inline constexpr double flow_match = 1e-5;

/// slack allowed on probe eigenvalue bounds before rejecting the state
inline constexpr double probe_bound = 1e-12;

/// central-difference step for d/dphi (one Richardson level on top)
inline constexpr double fd_phi_step = 1e-5;

/// central-difference step for d/dt (one Richardson level on top)
inline constexpr double fd_time_step = 1e-4;

/// Jacobi eigensolver: stop when off-diagonal Frobenius mass drops below this
inline constexpr double jacobi_off_mass = 1e-14;

/// Jacobi eigensolver: hard sweep cap
inline constexpr int jacobi_max_sweeps = 100;

/// eigenvalues closer than this are handled as one degenerate cluster
inline constexpr double degeneracy_gap = 1e-9;

/// dead band for classifying the sign of the QFI flow
inline constexpr double flow_dead_band = 1e-7;

}  // namespace ybqfi::tol
