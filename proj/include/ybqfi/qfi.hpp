#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "ybqfi/hamiltonians.hpp"
#include "ybqfi/states.hpp"

namespace ybqfi {

enum class Subsystem { full, reduced_a };

inline std::string format_subsystem(Subsystem s) {
    return s == Subsystem::full ? "full" : "reduced";
}

/// One estimation setup: which deformed Hamiltonian drives the evolution,
/// which probe it acts on, and whether the figure of merit is taken on the
/// joint state or on qubit A alone.
struct Scenario {
    int hamiltonian_kind = 1;
    ProbeSpec probe;
    Subsystem subsystem = Subsystem::full;
    ModelParams params;
};

inline ComplexMatrix scenario_hamiltonian(const Scenario& sc, double phi) {
    return h_yangbaxterized(sc.hamiltonian_kind, sc.params, phi);
}

inline ComplexMatrix scenario_unitary(const Scenario& sc, double phi, double t) {
    return unitary_exp(scenario_hamiltonian(sc, phi), t);
}

inline ComplexMatrix evolve(const ComplexMatrix& probe, const ComplexMatrix& h, double t) {
    const ComplexMatrix u = unitary_exp(h, t);
    return hermitize(u * probe * u.adjoint());
}

inline ComplexMatrix output_state(const Scenario& sc, double phi, double t) {
    const ComplexMatrix sigma = evolve(make_probe(sc.probe), scenario_hamiltonian(sc, phi), t);
    return sc.subsystem == Subsystem::full ? sigma : partial_trace_b(sigma);
}

namespace detail {

// Central difference with one Richardson level: (4 D(h/2) - D(h)) / 3
// cancels the O(h^2) truncation term of the plain stencil.
template <typename Eval>
ComplexMatrix central_diff_richardson(Eval&& eval, double x, double h) {
    const auto d = [&](double s) {
        ComplexMatrix m = eval(x + s) - eval(x - s);
        m *= cdouble{1.0 / (2.0 * s), 0.0};
        return m;
    };
    ComplexMatrix fine = d(h / 2.0);
    ComplexMatrix coarse = d(h);
    fine *= cdouble{4.0 / 3.0, 0.0};
    coarse *= cdouble{1.0 / 3.0, 0.0};
    return fine - coarse;
}

template <typename Eval>
double scalar_diff_richardson(Eval&& eval, double x, double h) {
    const auto d = [&](double s) { return (eval(x + s) - eval(x - s)) / (2.0 * s); };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

}  // namespace detail

/// Derivative of the output state with respect to the encoded phase.
/// Hermitian and traceless up to the stencil's truncation error.
inline ComplexMatrix d_rho_d_phi(const Scenario& sc, double phi, double t,
                                 double h = tol::fd_phi_step) {
    const auto at = [&](double x) { return output_state(sc, x, t); };
    return hermitize(detail::central_diff_richardson(at, phi, h));
}

struct SldResult {
    double value = 0.0;
    ComplexMatrix sld;
};

/// Fisher information from the pair form
///   F = sum_{lam_i + lam_j > tol} 2 |<psi_i| drho |psi_j>|^2 / (lam_i + lam_j)
/// together with the symmetric logarithmic derivative assembled from the same
/// matrix elements. Pairs joining the support to the kernel are kept; they
/// carry real information for rank-deficient states. The sum is manifestly
/// independent of the eigenvector gauge.
inline SldResult qfi_sld_pair(const ComplexMatrix& rho, const ComplexMatrix& drho,
                              double support_tol = tol::support) {
    const SpectralDecomposition d = eigh(rho);
    const std::size_t n = rho.dim();
    const ComplexMatrix m = d.eigenvectors.adjoint() * (drho * d.eigenvectors);

    SldResult out;
    ComplexMatrix l(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double weight = d.eigenvalues[i] + d.eigenvalues[j];
            if (weight <= support_tol) continue;
            out.value += 2.0 * std::norm(m(i, j)) / weight;
            l(i, j) = 2.0 * m(i, j) / weight;
        }
    }
    out.sld = hermitize(d.eigenvectors * (l * d.eigenvectors.adjoint()));
    return out;
}

namespace detail {

// Unitary factor of the polar decomposition, M (M^dagger M)^{-1/2}.
// Returns false when M is too close to singular for the inverse root.
inline bool polar_unitary(const ComplexMatrix& m, ComplexMatrix& w) {
    const SpectralDecomposition d = eigh(m.adjoint() * m);
    if (d.eigenvalues.front() < 1e-12) return false;
    std::vector<cdouble> inv_root(d.eigenvalues.size());
    for (std::size_t k = 0; k < inv_root.size(); ++k)
        inv_root[k] = 1.0 / std::sqrt(d.eigenvalues[k]);
    w = m * spectral_apply(d, inv_root);
    return true;
}

// Contiguous index ranges of eigenvalues closer than cluster_tol.
inline std::vector<std::pair<std::size_t, std::size_t>> eigenvalue_clusters(
    const std::vector<double>& lam, double cluster_tol) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= lam.size(); ++i) {
        if (i == lam.size() || lam[i] - lam[i - 1] > cluster_tol) {
            out.emplace_back(begin, i);
            begin = i;
        }
    }
    return out;
}

// Matches a side-stencil decomposition to the center one so that finite
// differences follow smooth branches. Within each center cluster the side
// columns are permuted by largest overlap, then rotated by the polar unitary
// of the overlap block; the residual intra-cluster rotation freedom of the
// eigensolver would otherwise masquerade as an O(1/h) derivative.
inline void align_side_to_center(const SpectralDecomposition& center, SpectralDecomposition& side,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& clusters,
                                 bool& alignment_ok) {
    const std::size_t n = center.eigenvalues.size();
    for (const auto& [b, e] : clusters) {
        const std::size_t k = e - b;
        if (k == 0) continue;

        ComplexMatrix overlap(k);  // overlap(i, j) = <side_{b+i} | center_{b+j}>
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                cdouble s = 0.0;
                for (std::size_t r = 0; r < n; ++r)
                    s += std::conj(side.eigenvectors(r, b + i)) * center.eigenvectors(r, b + j);
                overlap(i, j) = s;
            }

        // greedy assignment: strongest overlaps claim their columns first
        std::vector<std::size_t> perm(k, k);
        std::vector<bool> row_used(k, false), col_used(k, false);
        for (std::size_t pick = 0; pick < k; ++pick) {
            double best = -1.0;
            std::size_t bi = 0, bj = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (row_used[i]) continue;
                for (std::size_t j = 0; j < k; ++j) {
                    if (col_used[j]) continue;
                    if (std::abs(overlap(i, j)) > best) {
                        best = std::abs(overlap(i, j));
                        bi = i;
                        bj = j;
                    }
                }
            }
            perm[bj] = bi;
            row_used[bi] = true;
            col_used[bj] = true;
        }

        std::vector<double> lam(k);
        ComplexMatrix cols(n);  // only the first k columns are used
        ComplexMatrix m(k);
        for (std::size_t j = 0; j < k; ++j) {
            lam[j] = side.eigenvalues[b + perm[j]];
            for (std::size_t r = 0; r < n; ++r) cols(r, j) = side.eigenvectors(r, b + perm[j]);
            for (std::size_t jj = 0; jj < k; ++jj) m(j, jj) = overlap(perm[j], jj);
        }

        ComplexMatrix w;
        const bool ok = polar_unitary(m, w);
        if (!ok) alignment_ok = false;

        for (std::size_t j = 0; j < k; ++j) {
            side.eigenvalues[b + j] = lam[j];
            for (std::size_t r = 0; r < n; ++r) {
                cdouble s = 0.0;
                if (ok) {
                    for (std::size_t c = 0; c < k; ++c) s += cols(r, c) * w(c, j);
                } else {
                    s = cols(r, j);
                }
                side.eigenvectors(r, b + j) = s;
            }
        }
    }
}

}  // namespace detail

struct SpectralQfi {
    double value = 0.0;
    double classical_term = 0.0;  // sum over the support of (dlam)^2 / lam
    double step = 0.0;            // stencil half-width actually used
    bool crossing_flagged = false;
};

/// Fisher information from eigenvalue and eigenvector derivatives:
///   F = sum (dlam_i)^2/lam_i + sum 4 lam_i <dpsi_i|dpsi_i>
///       - sum_{i,j} 8 lam_i lam_j/(lam_i+lam_j) |<psi_i|dpsi_j>|^2,
/// all sums over the support. The last sum keeps i = j, whose coefficient
/// degenerates to 4 lam_i; that term cancels the gauge-dependent part of the
/// middle sum, so the result matches the fixed-gauge textbook expression
/// while staying computable in any gauge.
inline SpectralQfi qfi_spectral_from_decomps(
    const SpectralDecomposition& center, SpectralDecomposition plus, SpectralDecomposition minus,
    double h, double cluster_tol = tol::degeneracy_gap, double support_tol = tol::support) {
    const std::size_t n = center.eigenvalues.size();
    const auto clusters = detail::eigenvalue_clusters(center.eigenvalues, cluster_tol);

    bool alignment_ok = true;
    detail::align_side_to_center(center, plus, clusters, alignment_ok);
    detail::align_side_to_center(center, minus, clusters, alignment_ok);

    SpectralQfi out;
    out.step = h;
    out.crossing_flagged = !alignment_ok;

    std::vector<double> dlam(n);
    ComplexMatrix dpsi(n);
    const double inv = 1.0 / (2.0 * h);
    for (std::size_t j = 0; j < n; ++j) {
        dlam[j] = (plus.eigenvalues[j] - minus.eigenvalues[j]) * inv;
        for (std::size_t r = 0; r < n; ++r)
            dpsi(r, j) = (plus.eigenvectors(r, j) - minus.eigenvectors(r, j)) * inv;
    }

    double quantum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double li = center.eigenvalues[i];
        if (li <= support_tol) continue;
        out.classical_term += dlam[i] * dlam[i] / li;

        double norm2 = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm2 += std::norm(dpsi(r, i));
        quantum += 4.0 * li * norm2;

        for (std::size_t j = 0; j < n; ++j) {
            const double lj = center.eigenvalues[j];
            if (lj <= support_tol) continue;
            cdouble coh = 0.0;
            for (std::size_t r = 0; r < n; ++r)
                coh += std::conj(center.eigenvectors(r, i)) * dpsi(r, j);
            quantum -= 8.0 * li * lj / (li + lj) * std::norm(coh);
        }
    }
    out.value = out.classical_term + quantum;
    return out;
}

/// Spectral-route QFI for a scenario. Adjacent eigenvalues that are distinct
/// yet closer than ten stencil widths can swap order inside the stencil; the
/// step is then shrunk, and if the gap is too small even for the smallest
/// usable step the pair is treated as one degenerate cluster. A stencil the
/// detector could not repair is reported through crossing_flagged.
inline SpectralQfi qfi_spectral(const Scenario& sc, double phi, double t,
                                double initial_step = tol::fd_phi_step) {
    double h = initial_step;
    double cluster_tol = tol::degeneracy_gap;
    const SpectralDecomposition center = eigh(output_state(sc, phi, t));

    bool bottomed_out = false;
    for (int attempt = 0; attempt < 8; ++attempt) {
        double risky = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < center.eigenvalues.size(); ++i) {
            const double gap = center.eigenvalues[i] - center.eigenvalues[i - 1];
            if (gap > cluster_tol && gap < 10.0 * h) risky = std::min(risky, gap);
        }
        if (!std::isfinite(risky)) break;
        const double refined = risky / 20.0;
        if (refined >= 1e-8) {
            h = refined;
        } else if (attempt + 1 < 8) {
            cluster_tol = risky * (1.0 + 1e-9);
        } else {
            bottomed_out = true;
        }
    }

    SpectralQfi out = qfi_spectral_from_decomps(
        center, eigh(output_state(sc, phi + h, t)), eigh(output_state(sc, phi - h, t)), h,
        cluster_tol);
    out.crossing_flagged = out.crossing_flagged || bottomed_out;
    return out;
}

/// Local generator of the phase encoding, i (dU/dphi)^dagger U, hermitized.
inline ComplexMatrix phase_generator(const Scenario& sc, double phi, double t,
                                     double h = tol::fd_phi_step) {
    const ComplexMatrix u = scenario_unitary(sc, phi, t);
    const ComplexMatrix du_dag = detail::central_diff_richardson(
        [&](double x) { return scenario_unitary(sc, x, t).adjoint(); }, phi, h);
    ComplexMatrix g = du_dag * u;
    g *= cdouble{0.0, 1.0};
    return hermitize(g);
}

/// Fisher information from the encoding generator and the probe spectrum:
///   F = sum 4 lam_i Var_i(G) - sum_{i != j} 8 lam_i lam_j/(lam_i+lam_j) |G_ij|^2
/// over the probe eigenbasis. The variance term reaches matrix elements into
/// the kernel, so rank-deficient probes need no special casing. Only defined
/// for the joint dynamics; the reduced state is not unitarily encoded.
inline double qfi_generator(const Scenario& sc, double phi, double t,
                            double h = tol::fd_phi_step, double support_tol = tol::support) {
    if (sc.subsystem != Subsystem::full)
        throw std::invalid_argument("qfi_generator: requires the full bipartite dynamics");

    const ComplexMatrix gen = phase_generator(sc, phi, t, h);
    const SpectralDecomposition d = eigh(make_probe(sc.probe));
    const std::size_t n = gen.dim();
    const ComplexMatrix m = d.eigenvectors.adjoint() * (gen * d.eigenvectors);

    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double li = d.eigenvalues[i];
        if (li <= support_tol) continue;

        double second_moment = 0.0;
        for (std::size_t k = 0; k < n; ++k) second_moment += std::norm(m(i, k));
        const double mean = m(i, i).real();
        f += 4.0 * li * (second_moment - mean * mean);

        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double lj = d.eigenvalues[j];
            if (lj <= support_tol) continue;
            f -= 8.0 * li * lj / (li + lj) * std::norm(m(i, j));
        }
    }
    return f;
}

/// Primary numeric QFI: pair form on the finite-difference state derivative.
inline double qfi_numeric(const Scenario& sc, double phi, double t) {
    return qfi_sld_pair(output_state(sc, phi, t), d_rho_d_phi(sc, phi, t)).value;
}

/// Time derivative of the QFI; positive values witness information returning
/// to the system.
inline double qfi_flow_numeric(const Scenario& sc, double phi, double t,
                               double h = tol::fd_time_step) {
    return detail::scalar_diff_richardson([&](double x) { return qfi_numeric(sc, phi, x); }, t, h);
}

/// Estimator variance bound 1/(N F) from N repeated measurements; an
/// insensitive state (F = 0) gives an unbounded variance.
inline double qcrb_bound(double fisher, long repetitions = 1) {
    if (fisher <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (static_cast<double>(repetitions) * fisher);
}

}  // namespace ybqfi
