#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include "ybqfi/spin_ops.hpp"
#include "ybqfi/temperley_lieb.hpp"

namespace ybqfi {

/// Two-qubit R(theta, phi) of the given kind, eps entering only kind 3.
/// Each kind is the unitary obtained by Yang-Baxterizing the matching
/// Temperley-Lieb generator; the explicit spin-operator form is used here.
inline ComplexMatrix r_matrix(int kind, double theta, double phi, int eps = 1) {
    check_tl_kind(kind);
    if (eps != 1 && eps != -1) throw std::invalid_argument("r_matrix: eps must be +1 or -1");
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cdouble ep = {std::cos(phi), std::sin(phi)};
    const cdouble i = {0.0, 1.0};

    const ComplexMatrix s1z = spin_operator(1, SpinComponent::z);
    const ComplexMatrix s2z = spin_operator(2, SpinComponent::z);
    const ComplexMatrix s1p = spin_operator(1, SpinComponent::plus);
    const ComplexMatrix s2p = spin_operator(2, SpinComponent::plus);
    const ComplexMatrix s1m = spin_operator(1, SpinComponent::minus);
    const ComplexMatrix s2m = spin_operator(2, SpinComponent::minus);
    const ComplexMatrix id = ComplexMatrix::identity(4);

    switch (kind) {
        case 1:
            return (c + 0.5 * i * s) * id - (2.0 * i * s) * (s1z * s2z)
                 - (i * s) * (ep * (s1p * s2p) + std::conj(ep) * (s1m * s2m));
        case 2:
            return (c + 0.5 * i * s) * id + (2.0 * i * s) * (s1z * s2z)
                 - (i * s) * (ep * (s1p * s2m) + std::conj(ep) * (s1m * s2p));
        default:
            return (-c) * id
                 - (i * s) * (ep * (s1p * s2p) + std::conj(ep) * (s1m * s2m))
                 + (static_cast<double>(eps) * s) * ((s1p * s2m) - (s1m * s2p));
    }
}

struct TlFit {
    cdouble a;        ///< coefficient of the identity
    cdouble b;        ///< coefficient of the generator
    double residual;  ///< || R - a I - b U ||_F at the optimum
};

/// Least-squares fit of R onto span{I, U} in the Frobenius inner product.
inline TlFit tl_decompose(const ComplexMatrix& r, const ComplexMatrix& u) {
    const ComplexMatrix id = ComplexMatrix::identity(r.dim());
    const auto inner = [](const ComplexMatrix& x, const ComplexMatrix& y) {
        return (x.adjoint() * y).trace();
    };
    const cdouble g11 = inner(id, id), g12 = inner(id, u);
    const cdouble g21 = inner(u, id), g22 = inner(u, u);
    const cdouble r1 = inner(id, r), r2 = inner(u, r);
    const cdouble det = g11 * g22 - g12 * g21;
    if (std::abs(det) < 1e-14) throw std::invalid_argument("tl_decompose: I and U are not independent");
    TlFit fit{};
    fit.a = (r1 * g22 - g12 * r2) / det;
    fit.b = (g11 * r2 - r1 * g21) / det;
    fit.residual = frobenius_distance(r, fit.a * id + fit.b * u);
    return fit;
}

/// || E1 E2 E1 - E2 E1 E2 ||_F with E1 = R otimes I, E2 = I otimes R.
inline double check_braid_ybe(const ComplexMatrix& r) {
    const ComplexMatrix e1 = embed_three_site(r, 1);
    const ComplexMatrix e2 = embed_three_site(r, 2);
    return frobenius_distance(e1 * e2 * e1, e2 * e1 * e2);
}

/// Spectral-parameter to angle map: cos(theta) = (1-mu^2)/(1+mu^2) for kinds
/// 1-2, cos(theta) = 1/cosh(mu) for kind 3. The signed branches
/// theta = 2 atan(mu) and theta = 2 atan(tanh(mu/2)) are used so that the
/// map is odd and monotone; they agree with the cosine form for mu >= 0.
inline double theta_from_parameter(int kind, double mu) {
    check_tl_kind(kind);
    if (std::isnan(mu)) throw std::invalid_argument("theta_from_parameter: NaN spectral parameter");
    if (kind == 3) return 2.0 * std::atan(std::tanh(mu / 2.0));
    return 2.0 * std::atan(mu);
}

enum class YbeCombiner { additive, moebius };

/// Residual of the spectral-parameter Yang-Baxter equation
///   R1(mu) R2(m) R1(nu) = R2(nu) R1(m) R2(mu)
/// where the middle argument m is mu+nu (additive) or the Moebius combination
/// (mu+nu)/(1+beta^2 mu nu). A Moebius combination with a non-real result is
/// rejected. Returns the Frobenius norm of the difference.
inline double check_parameterized_ybe(int kind, double mu, double nu, double phi, int eps,
                                      YbeCombiner combiner, cdouble beta = {1.0, 0.0}) {
    if (std::isnan(mu) || std::isnan(nu)) throw std::invalid_argument("parameterized ybe: NaN input");
    double mid = 0.0;
    if (combiner == YbeCombiner::additive) {
        mid = mu + nu;
    } else {
        const cdouble denom = 1.0 + beta * beta * mu * nu;
        if (std::abs(denom) < 1e-14)
            throw std::invalid_argument("parameterized ybe: Moebius combination is singular");
        const cdouble z = (mu + nu) / denom;
        if (std::abs(z.imag()) > 1e-12)
            throw std::invalid_argument("parameterized ybe: Moebius combination is not real");
        mid = z.real();
    }
    const ComplexMatrix ra = r_matrix(kind, theta_from_parameter(kind, mu), phi, eps);
    const ComplexMatrix rm = r_matrix(kind, theta_from_parameter(kind, mid), phi, eps);
    const ComplexMatrix rb = r_matrix(kind, theta_from_parameter(kind, nu), phi, eps);
    const ComplexMatrix lhs = embed_three_site(ra, 1) * embed_three_site(rm, 2) * embed_three_site(rb, 1);
    const ComplexMatrix rhs = embed_three_site(rb, 2) * embed_three_site(rm, 1) * embed_three_site(ra, 2);
    return frobenius_distance(lhs, rhs);
}

}  // namespace ybqfi
