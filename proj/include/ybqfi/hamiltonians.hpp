#pragma once

#include <cmath>

#include "ybqfi/eigh.hpp"
#include "ybqfi/r_matrix.hpp"
#include "ybqfi/spin_ops.hpp"

namespace ybqfi {

/// Couplings of the reference two-spin model. B and J are the mean and half
/// difference of the site fields, g the Ising coupling; theta and eps select
/// the deformation applied by the R matrices.
struct ModelParams {
    double B = 0.5;
    double J = 0.5;
    double g = 0.0;
    double theta = M_PI / 2.0;
    int eps = 1;
};

/// Undeformed diagonal Hamiltonian
///   H0 = (B+J) S1z + (B-J) S2z + g S1z S2z
/// with spectrum {B + g/4, J - g/4, -J - g/4, -B + g/4} on the product basis.
inline ComplexMatrix h0(const ModelParams& mp) {
    const ComplexMatrix s1z = spin_operator(1, SpinComponent::z);
    const ComplexMatrix s2z = spin_operator(2, SpinComponent::z);
    return (mp.B + mp.J) * s1z + (mp.B - mp.J) * s2z + mp.g * (s1z * s2z);
}

/// Deformed Hamiltonian of the given kind at angle (theta, phi). Kind 1
/// rotates the field sector {|00>,|11>}, kind 2 the exchange sector
/// {|01>,|10>}, kind 3 both at once (with the eps sign on the exchange part).
/// Equal to r_matrix(kind) * h0 * r_matrix(kind)^dagger; built explicitly.
inline ComplexMatrix h_yangbaxterized(int kind, const ModelParams& mp, double phi) {
    check_tl_kind(kind);
    const double c = std::cos(mp.theta);
    const double s = std::sin(mp.theta);
    const cdouble ep = {std::cos(phi), std::sin(phi)};
    const cdouble i = {0.0, 1.0};

    const ComplexMatrix s1z = spin_operator(1, SpinComponent::z);
    const ComplexMatrix s2z = spin_operator(2, SpinComponent::z);
    const ComplexMatrix s1p = spin_operator(1, SpinComponent::plus);
    const ComplexMatrix s2p = spin_operator(2, SpinComponent::plus);
    const ComplexMatrix s1m = spin_operator(1, SpinComponent::minus);
    const ComplexMatrix s2m = spin_operator(2, SpinComponent::minus);

    const ComplexMatrix ising = mp.g * (s1z * s2z);
    switch (kind) {
        case 1:
            return (mp.B * c) * (s1z + s2z) + mp.J * (s1z - s2z) + ising
                 + (i * mp.B * s) * (ep * (s1p * s2p) - std::conj(ep) * (s1m * s2m));
        case 2:
            return mp.B * (s1z + s2z) + (mp.J * c) * (s1z - s2z) + ising
                 + (i * mp.J * s) * (ep * (s1p * s2m) - std::conj(ep) * (s1m * s2p));
        default:
            return (mp.B * c) * (s1z + s2z)
                 - (i * mp.B * s) * (ep * (s1p * s2p) - std::conj(ep) * (s1m * s2m))
                 + ising + (mp.J * c) * (s1z - s2z)
                 + (static_cast<double>(mp.eps) * mp.J * s) * ((s1p * s2m) + (s1m * s2p));
    }
}

/// || H_kind - R H0 R^dagger ||_F; zero up to round-off for every kind.
inline double verify_conjugation(int kind, const ModelParams& mp, double phi) {
    const ComplexMatrix r = r_matrix(kind, mp.theta, phi, mp.eps);
    return frobenius_distance(h_yangbaxterized(kind, mp, phi), r * h0(mp) * r.adjoint());
}

}  // namespace ybqfi
