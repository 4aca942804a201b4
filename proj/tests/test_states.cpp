#include <catch2/catch_amalgamated.hpp>

#include "ybqfi/eigh.hpp"
#include "ybqfi/states.hpp"

using namespace ybqfi;
using Catch::Matchers::ContainsSubstring;

namespace {

double overlap(const StateVector& a, const StateVector& b) {
    cdouble s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
    return std::abs(s);
}

}  // namespace

TEST_CASE("maximally entangled vectors form an orthonormal basis") {
    const std::array<StateVector, 4> basis = {bell_state(0, 0), bell_state(0, 1),
                                              bell_state(1, 0), bell_state(1, 1)};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(overlap(basis[i], basis[j]) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-15));
    // singlet sign convention
    CHECK(std::real(bell_state(1, 1)[1]) > 0.0);
    CHECK(std::real(bell_state(1, 1)[2]) < 0.0);

    CHECK_THROWS_AS(bell_state(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(bell_state(0, -1), std::invalid_argument);
}

TEST_CASE("projector builds a rank-one idempotent") {
    const ComplexMatrix p = projector(bell_state(0, 1));
    CHECK((p - p.adjoint()).max_abs() < 1e-15);
    CHECK(frobenius_distance(p * p, p) < 1e-15);
    CHECK(std::abs(p.trace() - cdouble(1.0)) < 1e-15);
}

TEST_CASE("first Werner family interpolates between white noise and a pure state") {
    SECTION("p = 0 is maximally mixed") {
        ComplexMatrix quarter = ComplexMatrix::identity(4);
        quarter *= 0.25;
        CHECK(frobenius_distance(make_probe({ProbeFamily::werner1, 0.0, {}}), quarter) < 1e-15);
    }
    SECTION("p = 1 is the entangled projector") {
        CHECK(frobenius_distance(make_probe({ProbeFamily::werner1, 1.0, {}}),
                                 projector(bell_state(0, 0))) < 1e-15);
    }
    SECTION("spectrum is {(1+3p)/4, (1-p)/4 x3}") {
        const double p = 0.62;
        const auto d = eigh(make_probe({ProbeFamily::werner1, p, {}}));
        CHECK(d.eigenvalues[0] == Catch::Approx((1.0 - p) / 4.0).margin(1e-14));
        CHECK(d.eigenvalues[1] == Catch::Approx((1.0 - p) / 4.0).margin(1e-14));
        CHECK(d.eigenvalues[2] == Catch::Approx((1.0 - p) / 4.0).margin(1e-14));
        CHECK(d.eigenvalues[3] == Catch::Approx((1.0 + 3.0 * p) / 4.0).margin(1e-14));
    }
}

TEST_CASE("second Werner family is the rank-deficient three-state mixture") {
    const double p = 0.3;
    const ComplexMatrix rho = make_probe({ProbeFamily::werner2, p, {}});
    CHECK(is_density(rho, 1e-12));
    const auto d = eigh(rho);
    CHECK(d.eigenvalues[0] == Catch::Approx(0.0).margin(1e-14));
    CHECK(d.eigenvalues[1] == Catch::Approx(p).margin(1e-14));
    CHECK(d.eigenvalues[2] == Catch::Approx((1.0 - p) / 2.0).margin(1e-14));
    CHECK(d.eigenvalues[3] == Catch::Approx((1.0 - p) / 2.0).margin(1e-14));
    // the singlet carries weight p
    const ComplexMatrix ps = projector(bell_state(1, 1));
    CHECK(std::abs((rho * ps).trace() - cdouble(p)) < 1e-14);
}

TEST_CASE("Bell-diagonal probes diagonalize on the entangled basis") {
    const std::array<double, 3> c = {0.3, -0.2, 0.25};
    const ComplexMatrix rho = make_probe({ProbeFamily::bell_diagonal, 0.0, c});
    CHECK(is_density(rho, 1e-12));

    const double l00 = 0.25 * (1.0 + c[0] - c[1] + c[2]);
    const double l01 = 0.25 * (1.0 + c[0] + c[1] - c[2]);
    const double l10 = 0.25 * (1.0 - c[0] + c[1] + c[2]);
    const double l11 = 0.25 * (1.0 - c[0] - c[1] - c[2]);
    const ComplexMatrix rebuilt = l00 * projector(bell_state(0, 0)) +
                                  l01 * projector(bell_state(0, 1)) +
                                  l10 * projector(bell_state(1, 0)) +
                                  l11 * projector(bell_state(1, 1));
    CHECK(frobenius_distance(rho, rebuilt) < 1e-15);
}

TEST_CASE("rank-two Bell-diagonal archetype has the expected spectrum") {
    const auto d = eigh(make_probe({ProbeFamily::bell_diagonal, 0.0, {0.9, 0.0, 0.1}}));
    CHECK(d.eigenvalues[0] == Catch::Approx(0.0).margin(1e-14));
    CHECK(d.eigenvalues[1] == Catch::Approx(0.05).margin(1e-14));
    CHECK(d.eigenvalues[2] == Catch::Approx(0.45).margin(1e-14));
    CHECK(d.eigenvalues[3] == Catch::Approx(0.5).margin(1e-14));
}

TEST_CASE("unphysical probe parameters are rejected with the violated bound named") {
    CHECK_THROWS_WITH(make_probe({ProbeFamily::werner1, -0.1, {}}),
                      ContainsSubstring("werner1 weight p"));
    CHECK_THROWS_WITH(make_probe({ProbeFamily::werner1, 1.1, {}}),
                      ContainsSubstring("1 - p"));
    CHECK_THROWS_WITH(make_probe({ProbeFamily::werner2, 1.2, {}}),
                      ContainsSubstring("werner2 weight bound 1 - p"));
    CHECK_THROWS_WITH(make_probe({ProbeFamily::bell_diagonal, 0.0, {1.0, 1.0, 1.0}}),
                      ContainsSubstring("(1 - c1 - c2 - c3)/4"));
    CHECK_THROWS_WITH(make_probe({ProbeFamily::bell_diagonal, 0.0, {1.0, -1.0, -1.0}}),
                      ContainsSubstring("(1 - c1 + c2 + c3)/4"));
}

TEST_CASE("boundary round-off is absorbed by the slack") {
    CHECK_NOTHROW(make_probe({ProbeFamily::werner1, -1e-13, {}}));
    CHECK_NOTHROW(make_probe({ProbeFamily::werner1, 1.0 + 1e-13, {}}));
    CHECK_NOTHROW(make_probe({ProbeFamily::bell_diagonal, 0.0, {1.0 + 1e-13, 1e-13, 1e-13}}));
    CHECK_THROWS_AS(make_probe({ProbeFamily::werner1, -1e-11, {}}), std::invalid_argument);
}

TEST_CASE("probe descriptions round-trip through their text form") {
    const ProbeSpec w{ProbeFamily::werner2, 0.375, {}};
    const ProbeSpec back = parse_probe_spec(format_probe_spec(w));
    CHECK(back.family == ProbeFamily::werner2);
    CHECK(back.p == 0.375);

    const ProbeSpec b{ProbeFamily::bell_diagonal, 0.0, {0.9, 0.0, -0.1}};
    const ProbeSpec bback = parse_probe_spec(format_probe_spec(b));
    CHECK(bback.family == ProbeFamily::bell_diagonal);
    CHECK(bback.c[0] == 0.9);
    CHECK(bback.c[1] == 0.0);
    CHECK(bback.c[2] == -0.1);

    // shortest round-trip formatting survives an awkward value
    const ProbeSpec odd{ProbeFamily::werner1, 0.1 + 0.2, {}};
    CHECK(parse_probe_spec(format_probe_spec(odd)).p == odd.p);
}

TEST_CASE("malformed probe descriptions are rejected") {
    CHECK_THROWS_WITH(parse_probe_spec("werner1"), ContainsSubstring("expected family:key=value"));
    CHECK_THROWS_WITH(parse_probe_spec("foo:p=1"), ContainsSubstring("unknown family 'foo'"));
    CHECK_THROWS_WITH(parse_probe_spec("werner1:p"), ContainsSubstring("expected key=value"));
    CHECK_THROWS_WITH(parse_probe_spec("werner1:p=abc"), ContainsSubstring("malformed number 'abc'"));
    CHECK_THROWS_WITH(parse_probe_spec("werner1:p=0.5nonsense"), ContainsSubstring("malformed number"));
    CHECK_THROWS_WITH(parse_probe_spec("belldiag:c1=1,c1=2,c3=0"), ContainsSubstring("duplicate key 'c1'"));
    CHECK_THROWS_WITH(parse_probe_spec("belldiag:c1=1,c2=0"), ContainsSubstring("wrong number of parameters"));
    CHECK_THROWS_WITH(parse_probe_spec("werner1:p=0.5,q=1"), ContainsSubstring("wrong number of parameters"));
    CHECK_THROWS_WITH(parse_probe_spec("belldiag:c1=0,c2=0,c4=0"), ContainsSubstring("missing parameter 'c3'"));
}
