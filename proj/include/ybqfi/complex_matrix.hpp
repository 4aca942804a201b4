#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ybqfi {

using cdouble = std::complex<double>;

/// Dense square complex matrix, row major. The library works with the fixed
/// dimensions 2 (one qubit), 4 (two qubits) and 8 (three-site embeddings), but
/// nothing below depends on that.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return dim_; }

    cdouble& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const std::vector<cdouble>& data() const { return a_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }

    ComplexMatrix& operator*=(cdouble s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cdouble s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cdouble s) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same_dim(b);
        const std::size_t n = a.dim_;
        ComplexMatrix c(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const cdouble aik = a(i, k);
                if (aik == cdouble{}) continue;
                for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    cdouble trace() const {
        cdouble t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    void check_same_dim(const ComplexMatrix& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
    }

    std::size_t dim_ = 0;
    std::vector<cdouble> a_;
};

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).frobenius_norm();
}

/// Kronecker product; the left factor owns the slow index (site 1).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t n = a.dim(), m = b.dim();
    ComplexMatrix c(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cdouble aij = a(i, j);
            if (aij == cdouble{}) continue;
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) c(i * m + k, j * m + l) = aij * b(k, l);
        }
    return c;
}

/// Trace out the second qubit of a two-qubit operator:
/// out[i][j] = sum_k rho[2i+k][2j+k].
inline ComplexMatrix partial_trace_b(const ComplexMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("partial_trace_b expects a 4x4 matrix");
    ComplexMatrix out(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
    return out;
}

inline bool is_hermitian(const ComplexMatrix& m, double tolerance) {
    return frobenius_distance(m, m.adjoint()) <= tolerance;
}

inline bool is_unitary(const ComplexMatrix& m, double tolerance) {
    return frobenius_distance(m.adjoint() * m, ComplexMatrix::identity(m.dim())) <= tolerance;
}

/// Hermitizes in place; cheap guard against accumulated round-off drift.
inline ComplexMatrix hermitize(const ComplexMatrix& m) {
    ComplexMatrix h(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return h;
}

}  // namespace ybqfi
