#pragma once

#include "ybqfi/complex_matrix.hpp"

// Fixed conventions: two-qubit basis ordered |00>, |01>, |10>, |11>;
// |0> is spin up; site 1 is the left Kronecker factor; hbar = 1.
namespace ybqfi {

enum class SpinComponent { z, plus, minus };

namespace detail {

inline ComplexMatrix single_spin(SpinComponent which) {
    ComplexMatrix m(2);
    switch (which) {
        case SpinComponent::z:
            m(0, 0) = 0.5;
            m(1, 1) = -0.5;
            break;
        case SpinComponent::plus:
            m(0, 1) = 1.0;  // |0><1|
            break;
        case SpinComponent::minus:
            m(1, 0) = 1.0;
            break;
    }
    return m;
}

}  // namespace detail

/// Two-qubit embedding of a single-site spin operator, 4x4.
inline ComplexMatrix spin_operator(int site, SpinComponent which) {
    if (site != 1 && site != 2) throw std::invalid_argument("spin_operator: site must be 1 or 2");
    const ComplexMatrix s = detail::single_spin(which);
    const ComplexMatrix id = ComplexMatrix::identity(2);
    return site == 1 ? kron(s, id) : kron(id, s);
}

inline ComplexMatrix pauli(int axis) {
    ComplexMatrix m(2);
    switch (axis) {
        case 1:
            m(0, 1) = m(1, 0) = 1.0;
            break;
        case 2:
            m(0, 1) = cdouble{0.0, -1.0};
            m(1, 0) = cdouble{0.0, 1.0};
            break;
        case 3:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        default:
            throw std::invalid_argument("pauli: axis must be 1, 2 or 3");
    }
    return m;
}

}  // namespace ybqfi
