#include <catch2/catch_amalgamated.hpp>

#include "ybqfi/eigh.hpp"
#include "ybqfi/hamiltonians.hpp"

using namespace ybqfi;

namespace {

ModelParams sample_params() {
    ModelParams mp;
    mp.B = 0.7;
    mp.J = 0.4;
    mp.g = 0.3;
    return mp;
}

}  // namespace

TEST_CASE("undeformed Hamiltonian is diagonal with the expected entries") {
    const ModelParams mp = sample_params();
    const ComplexMatrix h = h0(mp);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) CHECK(std::abs(h(i, j)) < 1e-15);
    CHECK(std::abs(h(0, 0) - cdouble(mp.B + mp.g / 4.0)) < 1e-15);
    CHECK(std::abs(h(1, 1) - cdouble(mp.J - mp.g / 4.0)) < 1e-15);
    CHECK(std::abs(h(2, 2) - cdouble(-mp.J - mp.g / 4.0)) < 1e-15);
    CHECK(std::abs(h(3, 3) - cdouble(-mp.B + mp.g / 4.0)) < 1e-15);
}

TEST_CASE("zero deformation angle reproduces the undeformed Hamiltonian") {
    ModelParams mp = sample_params();
    mp.theta = 0.0;
    for (int kind : {1, 2, 3})
        CHECK(frobenius_distance(h_yangbaxterized(kind, mp, 1.2), h0(mp)) < 1e-13);
}

TEST_CASE("fully deformed Hamiltonians rotate the expected sector") {
    ModelParams mp = sample_params();
    mp.theta = M_PI / 2.0;
    const double phi = 0.9;
    const cdouble expected_corner = cdouble(0.0, mp.B) * std::exp(cdouble(0.0, phi));
    const cdouble expected_middle = cdouble(0.0, mp.J) * std::exp(cdouble(0.0, phi));

    SECTION("first kind couples |00> and |11>") {
        const ComplexMatrix h = h_yangbaxterized(1, mp, phi);
        CHECK(std::abs(h(0, 3) - expected_corner) < 1e-14);
        CHECK(std::abs(h(3, 0) - std::conj(expected_corner)) < 1e-14);
        CHECK(std::abs(h(0, 0) - cdouble(mp.g / 4.0)) < 1e-14);  // only the Ising part stays diagonal
        CHECK(std::abs(h(1, 2)) < 1e-14);                        // the middle block is untouched
        CHECK(std::abs(h(1, 1) - cdouble(mp.J - mp.g / 4.0)) < 1e-14);
    }
    SECTION("second kind couples |01> and |10>") {
        const ComplexMatrix h = h_yangbaxterized(2, mp, phi);
        CHECK(std::abs(h(1, 2) - expected_middle) < 1e-14);
        CHECK(std::abs(h(2, 1) - std::conj(expected_middle)) < 1e-14);
        CHECK(std::abs(h(0, 3)) < 1e-14);
        CHECK(std::abs(h(0, 0) - cdouble(mp.B + mp.g / 4.0)) < 1e-14);
    }
    SECTION("third kind rotates both sectors at once") {
        const ComplexMatrix h = h_yangbaxterized(3, mp, phi);
        CHECK(std::abs(h(0, 3)) > 0.1);
        CHECK(std::abs(h(1, 2)) > 0.1);
    }
}

TEST_CASE("deformed Hamiltonians are Hermitian") {
    ModelParams mp = sample_params();
    for (int kind : {1, 2, 3}) {
        const std::vector<int> signs = kind == 3 ? std::vector<int>{1, -1} : std::vector<int>{1};
        for (int eps : signs) {
            mp.eps = eps;
            for (double theta : {0.0, 0.8, M_PI / 2.0, 2.9}) {
                mp.theta = theta;
                for (double phi : {0.0, 1.3, 5.1}) {
                    const ComplexMatrix h = h_yangbaxterized(kind, mp, phi);
                    CHECK((h - h.adjoint()).max_abs() < 1e-14);
                }
            }
        }
    }
}

TEST_CASE("the deformation is isospectral") {
    ModelParams mp = sample_params();
    const std::vector<double> reference = eigh(h0(mp)).eigenvalues;
    for (int kind : {1, 2, 3})
        for (double theta : {0.3, M_PI / 2.0, 2.2}) {
            mp.theta = theta;
            const std::vector<double> ev = eigh(h_yangbaxterized(kind, mp, 1.1)).eigenvalues;
            for (std::size_t i = 0; i < 4; ++i)
                CHECK(std::abs(ev[i] - reference[i]) < 1e-12);
        }
}

TEST_CASE("deformed Hamiltonians equal the conjugated undeformed one") {
    ModelParams mp = sample_params();
    for (int kind : {1, 2, 3}) {
        const std::vector<int> signs = kind == 3 ? std::vector<int>{1, -1} : std::vector<int>{1};
        for (int eps : signs) {
            mp.eps = eps;
            for (double theta : {0.0, 0.8, M_PI / 2.0, 2.9}) {
                mp.theta = theta;
                for (double phi : {0.2, 1.3, 4.4})
                    CHECK(verify_conjugation(kind, mp, phi) < 1e-12);
            }
        }
    }
}

TEST_CASE("default couplings") {
    const ModelParams mp;
    CHECK(mp.B == 0.5);
    CHECK(mp.J == 0.5);
    CHECK(mp.g == 0.0);
    CHECK(mp.theta == Catch::Approx(M_PI / 2.0).epsilon(0.0).margin(1e-15));
    CHECK(mp.eps == 1);
}

TEST_CASE("unknown kinds are rejected") {
    const ModelParams mp = sample_params();
    CHECK_THROWS_AS(h_yangbaxterized(0, mp, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(h_yangbaxterized(4, mp, 0.5), std::invalid_argument);
}
