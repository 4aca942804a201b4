#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ybqfi/complex_matrix.hpp"
#include "ybqfi/constants.hpp"

namespace ybqfi {

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascend;
/// eigenvectors[:,k] pairs with eigenvalues[k].
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

namespace detail {

inline double off_diagonal_mass(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One cyclic sweep of two-sided complex Jacobi rotations. The rotation for
// pivot (p,q) is the unitary [[c, s*e^{ia}], [-s*e^{-ia}, c]] with the phase
// a absorbing arg(A[p][q]) so the remaining 2x2 problem is real symmetric.
inline void jacobi_sweep(ComplexMatrix& a, ComplexMatrix& v) {
    const std::size_t n = a.dim();
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const cdouble apq = a(p, q);
            const double m = std::abs(apq);
            if (m == 0.0) continue;
            const cdouble phase = apq / m;
            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            const double zeta = (aqq - app) / (2.0 * m);
            // smaller-angle root keeps the rotation stable
            const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            const cdouble gpq = s * phase;

            for (std::size_t k = 0; k < n; ++k) {
                const cdouble akp = a(k, p);
                const cdouble akq = a(k, q);
                a(k, p) = c * akp - std::conj(gpq) * akq;
                a(k, q) = gpq * akp + c * akq;
            }
            for (std::size_t k = 0; k < n; ++k) {
                const cdouble apk = a(p, k);
                const cdouble aqk = a(q, k);
                a(p, k) = c * apk - gpq * aqk;
                a(q, k) = std::conj(gpq) * apk + c * aqk;
            }
            for (std::size_t k = 0; k < n; ++k) {
                const cdouble vkp = v(k, p);
                const cdouble vkq = v(k, q);
                v(k, p) = c * vkp - std::conj(gpq) * vkq;
                v(k, q) = gpq * vkp + c * vkq;
            }
        }
    }
}

// gauge: largest-magnitude component real and non-negative, ties at the
// lowest index, so repeated runs give bitwise-identical columns
inline void fix_column_gauge(ComplexMatrix& v, std::size_t col) {
    std::size_t kmax = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < v.dim(); ++k) {
        const double mag = std::abs(v(k, col));
        if (mag > best) {
            best = mag;
            kmax = k;
        }
    }
    if (best <= 0.0) return;
    const cdouble z = std::conj(v(kmax, col)) / best;
    for (std::size_t k = 0; k < v.dim(); ++k) v(k, col) *= z;
    v(kmax, col) = cdouble{std::abs(v(kmax, col)), 0.0};
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for Hermitian matrices. Deterministic: the same
/// input yields bitwise-identical output. Throws if the input is not
/// Hermitian within `hermiticity_tol`.
inline SpectralDecomposition eigh(const ComplexMatrix& h, double hermiticity_tol = 1e-10) {
    if (!is_hermitian(h, hermiticity_tol))
        throw std::invalid_argument("eigh: matrix is not Hermitian within tolerance");

    const std::size_t n = h.dim();
    ComplexMatrix a = hermitize(h);
    ComplexMatrix v = ComplexMatrix::identity(n);

    for (int sweep = 0; sweep < tol::jacobi_max_sweeps; ++sweep) {
        if (detail::off_diagonal_mass(a) < tol::jacobi_off_mass) break;
        detail::jacobi_sweep(a, v);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    SpectralDecomposition d;
    d.eigenvalues.resize(n);
    d.eigenvectors = ComplexMatrix(n);
    for (std::size_t c = 0; c < n; ++c) {
        d.eigenvalues[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) d.eigenvectors(r, c) = v(r, order[c]);
        detail::fix_column_gauge(d.eigenvectors, c);
    }
    return d;
}

/// V diag(f(lam)) V^dagger for a scalar function applied to the spectrum.
inline ComplexMatrix spectral_apply(const SpectralDecomposition& d, const std::vector<cdouble>& f) {
    const std::size_t n = d.eigenvalues.size();
    ComplexMatrix scaled = d.eigenvectors;
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= f[c];
    return scaled * d.eigenvectors.adjoint();
}

/// exp(-i H t) for Hermitian H via the spectral decomposition.
inline ComplexMatrix unitary_exp(const ComplexMatrix& h, double t) {
    const SpectralDecomposition d = eigh(h);
    std::vector<cdouble> f(d.eigenvalues.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double ang = -d.eigenvalues[k] * t;
        f[k] = cdouble{std::cos(ang), std::sin(ang)};
    }
    return spectral_apply(d, f);
}

/// Hermitian, unit trace, spectrum bounded below by -tolerance.
inline bool is_density(const ComplexMatrix& rho, double tolerance) {
    if (!is_hermitian(rho, tolerance)) return false;
    if (std::abs(rho.trace() - cdouble{1.0, 0.0}) > tolerance) return false;
    const auto d = eigh(rho);
    return d.eigenvalues.front() >= -tolerance;
}

}  // namespace ybqfi
