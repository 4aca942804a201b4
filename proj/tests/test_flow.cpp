#include <catch2/catch_amalgamated.hpp>

#include "ybqfi/flow.hpp"

using namespace ybqfi;

namespace {

Scenario werner1_scenario(double p, Subsystem sub) {
    Scenario sc;
    sc.hamiltonian_kind = 1;
    sc.probe = {ProbeFamily::werner1, p, {}};
    sc.subsystem = sub;
    sc.params.B = 0.7;
    sc.params.J = 0.4;
    sc.params.g = 0.3;
    return sc;
}

}  // namespace

TEST_CASE("full-subsystem flow matches the analytic time derivative") {
    // F = 8 p^2/(1+p) sin^2(Bt)(1 - cos^2 phi cos^2(Bt)), so
    // dF/dt = 8 p^2/(1+p) B sin(2Bt)(1 - cos^2 phi cos(2Bt)).
    const double p = 0.62;
    const Scenario sc = werner1_scenario(p, Subsystem::full);
    const double b = sc.params.B;
    for (double t : {0.4, 1.0, 2.6})  // 2.6 puts sin(2Bt) on its negative arc
        for (double phi : {0.8, 2.4}) {
            const double expected = 8.0 * p * p / (1.0 + p) * b * std::sin(2.0 * b * t) *
                                    (1.0 - std::pow(std::cos(phi), 2) * std::cos(2.0 * b * t));
            CHECK(qfi_flow_numeric(sc, phi, t) == Catch::Approx(expected).margin(2e-5));
        }
}

TEST_CASE("reduced-subsystem flow matches the analytic time derivative") {
    // F = p^2 sin^2(2Bt) sin^2 phi / D with D = 1 - p^2 sin^2(2Bt) cos^2 phi,
    // so dF/dt = 2 B p^2 sin(4Bt) sin^2 phi / D^2.
    const double p = 0.62;
    const Scenario sc = werner1_scenario(p, Subsystem::reduced_a);
    const double b = sc.params.B;
    for (double t : {0.3, 0.9, 1.8})
        for (double phi : {0.8, M_PI / 2.0}) {
            const double k = p * p * std::pow(std::sin(2.0 * b * t), 2);
            const double d = 1.0 - k * std::pow(std::cos(phi), 2);
            const double expected =
                2.0 * b * p * p * std::sin(4.0 * b * t) * std::pow(std::sin(phi), 2) / (d * d);
            CHECK(qfi_flow_numeric(sc, phi, t) == Catch::Approx(expected).margin(2e-5));
        }
}

TEST_CASE("reduced flow at phi = pi/2 is antisymmetric about the revival midpoint") {
    const Scenario sc = werner1_scenario(0.62, Subsystem::reduced_a);
    const double mid = M_PI / (2.0 * sc.params.B);
    for (double t : {0.3, 0.7, 1.0}) {
        const double fwd = qfi_flow_numeric(sc, M_PI / 2.0, t);
        const double bwd = qfi_flow_numeric(sc, M_PI / 2.0, mid - t);
        CHECK(fwd == Catch::Approx(-bwd).margin(2e-5));
    }
}

TEST_CASE("sign windows partition a sampled flow") {
    const std::vector<double> t = {0.0, 1.0, 2.0, 3.0, 4.0};

    SECTION("a neutral gap joins the window that follows it") {
        const auto w = classify_markovianity(t, {1.0, 1.0, 0.0, -1.0, -1.0}, 0.5);
        REQUIRE(w.size() == 2);
        CHECK(w[0].regime == FlowRegime::non_markovian);
        CHECK(w[0].t_begin == 0.0);
        CHECK(w[0].t_end == 1.0);
        CHECK(w[1].regime == FlowRegime::markovian);
        CHECK(w[1].t_begin == 2.0);
        CHECK(w[1].t_end == 4.0);
    }
    SECTION("a trailing neutral stretch extends the last window") {
        const auto w = classify_markovianity({0.0, 1.0, 2.0}, {1.0, 1.0, 0.0}, 0.5);
        REQUIRE(w.size() == 1);
        CHECK(w[0].t_begin == 0.0);
        CHECK(w[0].t_end == 2.0);
    }
    SECTION("a leading neutral stretch joins the first signed window") {
        const auto w = classify_markovianity({0.0, 1.0}, {0.0, 1.0}, 0.5);
        REQUIRE(w.size() == 1);
        CHECK(w[0].t_begin == 0.0);
        CHECK(w[0].t_end == 1.0);
        CHECK(w[0].regime == FlowRegime::non_markovian);
    }
    SECTION("same-sign stretches merge across a neutral gap") {
        const auto w = classify_markovianity({0.0, 1.0, 2.0}, {1.0, 0.0, 1.0}, 0.5);
        REQUIRE(w.size() == 1);
        CHECK(w[0].t_end == 2.0);
    }
    SECTION("a trace that never leaves the dead band has no windows") {
        CHECK(classify_markovianity(t, {0.1, -0.1, 0.0, 0.2, -0.2}, 0.5).empty());
    }
    SECTION("malformed traces are rejected") {
        CHECK_THROWS_AS(classify_markovianity({}, {}, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(classify_markovianity({0.0, 1.0}, {1.0}, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(classify_markovianity({1.0, 1.0}, {1.0, 1.0}, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(classify_markovianity({1.0, 0.5}, {1.0, 1.0}, 0.5), std::invalid_argument);
    }
}

TEST_CASE("regime labels") {
    CHECK(format_regime(FlowRegime::markovian) == "markovian(-)");
    CHECK(format_regime(FlowRegime::non_markovian) == "non-markovian(+)");
}

TEST_CASE("trace construction rejects degenerate grids") {
    const Scenario sc = werner1_scenario(0.5, Subsystem::full);
    CHECK_THROWS_AS(build_flow_trace(sc, 0.8, 0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_flow_trace(sc, 0.8, 1.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_flow_trace(sc, 0.8, 2.0, 1.0, 10), std::invalid_argument);
}

TEST_CASE("a pure probe's reduced trace splits into one revival and one decay window") {
    // with B = 1/2 and phi = pi/2 the reduced information is sin^2(t): the
    // flow sin(2t) changes sign exactly once inside [0.1, 3.04]
    Scenario sc;
    sc.hamiltonian_kind = 1;
    sc.probe = {ProbeFamily::werner1, 1.0, {}};
    sc.subsystem = Subsystem::reduced_a;

    const FlowTrace trace = build_flow_trace(sc, M_PI / 2.0, 0.1, 3.04, 40);
    REQUIRE(trace.times.size() == 40);
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const double t = trace.times[i];
        CHECK(trace.qfi[i] == Catch::Approx(std::pow(std::sin(t), 2)).margin(1e-7));
        CHECK(trace.flow[i] == Catch::Approx(std::sin(2.0 * t)).margin(2e-5));
    }

    REQUIRE(trace.windows.size() == 2);
    CHECK(trace.windows[0].regime == FlowRegime::non_markovian);
    CHECK(trace.windows[1].regime == FlowRegime::markovian);
    CHECK(trace.windows[0].t_begin == Catch::Approx(0.1).margin(1e-12));
    CHECK(trace.windows[1].t_end == Catch::Approx(3.04).margin(1e-12));
    CHECK(trace.windows[0].t_end < M_PI / 2.0);
    CHECK(trace.windows[1].t_begin > M_PI / 2.0 - 0.08);

    // while information drains, the variance bound can only deteriorate
    const double begin = trace.windows[1].t_begin;
    double previous = -1.0;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        if (trace.times[i] < begin) continue;
        const double bound = qcrb_bound(trace.qfi[i]);
        if (previous >= 0.0) CHECK(bound >= previous - 1e-9);
        previous = bound;
    }
}
