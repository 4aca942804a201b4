#pragma once

#include <cmath>

#include "ybqfi/complex_matrix.hpp"

namespace ybqfi {

/// Generator kinds. Kinds 1 and 2 close the algebra with loop parameter
/// d = 2 and act on the {|00>,|11>} and {|01>,|10>} sectors respectively;
/// kind 3 has d = sqrt(2), couples both sectors and carries a sign eps.
inline void check_tl_kind(int kind) {
    if (kind < 1 || kind > 3) throw std::invalid_argument("temperley-lieb kind must be 1, 2 or 3");
}

inline double tl_loop_parameter(int kind) {
    check_tl_kind(kind);
    return kind == 3 ? std::sqrt(2.0) : 2.0;
}

/// 4x4 Temperley-Lieb generator U_kind(phi); eps enters only for kind 3.
inline ComplexMatrix tl_generator(int kind, double phi, int eps = 1) {
    check_tl_kind(kind);
    if (eps != 1 && eps != -1) throw std::invalid_argument("tl_generator: eps must be +1 or -1");
    const cdouble ep = {std::cos(phi), std::sin(phi)};
    ComplexMatrix u(4);
    switch (kind) {
        case 1:
            u(0, 0) = u(3, 3) = 1.0;
            u(0, 3) = ep;
            u(3, 0) = std::conj(ep);
            break;
        case 2:
            u(1, 1) = u(2, 2) = 1.0;
            u(1, 2) = ep;
            u(2, 1) = std::conj(ep);
            break;
        case 3: {
            const double r = 1.0 / std::sqrt(2.0);
            u(0, 0) = u(1, 1) = u(2, 2) = u(3, 3) = r;
            u(0, 3) = r * ep;
            u(3, 0) = r * std::conj(ep);
            u(1, 2) = cdouble{0.0, r * eps};
            u(2, 1) = cdouble{0.0, -r * eps};
            break;
        }
    }
    return u;
}

/// Embed a two-site operator into three sites: position 1 acts on the first
/// pair (M otimes I), position 2 on the second (I otimes M).
inline ComplexMatrix embed_three_site(const ComplexMatrix& m, int position) {
    if (m.dim() != 4) throw std::invalid_argument("embed_three_site expects a 4x4 operator");
    if (position != 1 && position != 2)
        throw std::invalid_argument("embed_three_site: position must be 1 or 2");
    const ComplexMatrix id = ComplexMatrix::identity(2);
    return position == 1 ? kron(m, id) : kron(id, m);
}

struct TlaResiduals {
    double chain;       ///< || E1 E2 E1 - E1 ||_F on three sites
    double idempotent;  ///< || U^2 - d U ||_F
};

/// Residuals of the defining Temperley-Lieb relations for a candidate
/// generator with loop parameter d.
inline TlaResiduals check_tla(const ComplexMatrix& u, double d) {
    const ComplexMatrix e1 = embed_three_site(u, 1);
    const ComplexMatrix e2 = embed_three_site(u, 2);
    TlaResiduals r{};
    r.chain = frobenius_distance(e1 * e2 * e1, e1);
    r.idempotent = frobenius_distance(u * u, d * u);
    return r;
}

}  // namespace ybqfi
