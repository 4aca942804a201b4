#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "ybqfi/constants.hpp"
#include "ybqfi/spin_ops.hpp"

namespace ybqfi {

using StateVector = std::array<cdouble, 4>;

/// Maximally entangled basis vector: (|0,y> + (-1)^x |1,1-y>) / sqrt(2).
inline StateVector bell_state(int x, int y) {
    if ((x != 0 && x != 1) || (y != 0 && y != 1))
        throw std::invalid_argument("bell_state: indices must be 0 or 1");
    StateVector v{};
    const double r = 1.0 / std::sqrt(2.0);
    v[static_cast<std::size_t>(y)] = r;
    v[static_cast<std::size_t>(2 + (1 - y))] = (x == 0) ? r : -r;
    return v;
}

inline ComplexMatrix projector(const StateVector& v) {
    ComplexMatrix p(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) p(i, j) = v[i] * std::conj(v[j]);
    return p;
}

enum class ProbeFamily { werner1, werner2, bell_diagonal };

/// A probe state description. Werner families use the mixing weight p;
/// the Bell-diagonal family uses the correlation triple c.
struct ProbeSpec {
    ProbeFamily family = ProbeFamily::werner1;
    double p = 0.0;
    std::array<double, 3> c{};
};

namespace detail {

inline std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

}  // namespace detail

inline std::string format_probe_spec(const ProbeSpec& s) {
    using detail::format_double;
    switch (s.family) {
        case ProbeFamily::werner1:
            return "werner1:p=" + format_double(s.p);
        case ProbeFamily::werner2:
            return "werner2:p=" + format_double(s.p);
        default:
            return "belldiag:c1=" + format_double(s.c[0]) + ",c2=" + format_double(s.c[1]) +
                   ",c3=" + format_double(s.c[2]);
    }
}

/// Parses "werner1:p=0.5", "werner2:p=0.25" or
/// "belldiag:c1=0.9,c2=0,c3=0.1". Throws on unknown families, missing or
/// extra keys, and malformed numbers; does not validate state bounds.
inline ProbeSpec parse_probe_spec(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("probe spec '" + text + "': expected family:key=value[,...]");
    const std::string family = text.substr(0, colon);

    std::map<std::string, double> kv;
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("probe spec '" + text + "': expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        double parsed = 0.0;
        const auto res = std::from_chars(val.data(), val.data() + val.size(), parsed);
        if (res.ec != std::errc{} || res.ptr != val.data() + val.size())
            throw std::invalid_argument("probe spec '" + text + "': malformed number '" + val + "'");
        if (!kv.emplace(key, parsed).second)
            throw std::invalid_argument("probe spec '" + text + "': duplicate key '" + key + "'");
    }

    const auto require_keys = [&](std::initializer_list<std::string> keys) {
        if (kv.size() != keys.size())
            throw std::invalid_argument("probe spec '" + text + "': wrong number of parameters");
        for (const auto& k : keys)
            if (!kv.count(k))
                throw std::invalid_argument("probe spec '" + text + "': missing parameter '" + k + "'");
    };

    ProbeSpec s;
    if (family == "werner1" || family == "werner2") {
        s.family = family == "werner1" ? ProbeFamily::werner1 : ProbeFamily::werner2;
        require_keys({"p"});
        s.p = kv.at("p");
    } else if (family == "belldiag") {
        s.family = ProbeFamily::bell_diagonal;
        require_keys({"c1", "c2", "c3"});
        s.c = {kv.at("c1"), kv.at("c2"), kv.at("c3")};
    } else {
        throw std::invalid_argument("probe spec '" + text + "': unknown family '" + family +
                                    "' (expected werner1, werner2 or belldiag)");
    }
    return s;
}

/// Builds the 4x4 density matrix for a probe description, rejecting
/// parameters outside the physical region; the error names the violated
/// bound. `bound_slack` absorbs round-off on the boundary.
inline ComplexMatrix make_probe(const ProbeSpec& spec, double bound_slack = tol::probe_bound) {
    const auto check = [&](double value, const std::string& label) {
        if (value < -bound_slack)
            throw std::invalid_argument("probe rejected: " + label + " = " +
                                        detail::format_double(value) + " must be >= 0");
    };

    switch (spec.family) {
        case ProbeFamily::werner1: {
            check(spec.p, "werner1 weight p");
            check(1.0 - spec.p, "werner1 weight bound 1 - p");
            ComplexMatrix rho = ComplexMatrix::identity(4);
            rho *= (1.0 - spec.p) / 4.0;
            return rho + spec.p * projector(bell_state(0, 0));
        }
        case ProbeFamily::werner2: {
            check(spec.p, "werner2 weight p");
            check(1.0 - spec.p, "werner2 weight bound 1 - p");
            ComplexMatrix rho = spec.p * projector(bell_state(1, 1));
            const double w = (1.0 - spec.p) / 2.0;
            return rho + w * projector(bell_state(0, 1)) + w * projector(bell_state(0, 0));
        }
        default: {
            const auto [c1, c2, c3] = spec.c;
            // spectrum of the correlation form on the Bell basis
            check(0.25 * (1.0 - c1 - c2 - c3), "belldiag eigenvalue (1 - c1 - c2 - c3)/4");
            check(0.25 * (1.0 - c1 + c2 + c3), "belldiag eigenvalue (1 - c1 + c2 + c3)/4");
            check(0.25 * (1.0 + c1 - c2 + c3), "belldiag eigenvalue (1 + c1 - c2 + c3)/4");
            check(0.25 * (1.0 + c1 + c2 - c3), "belldiag eigenvalue (1 + c1 + c2 - c3)/4");
            ComplexMatrix rho = ComplexMatrix::identity(4);
            for (int axis = 1; axis <= 3; ++axis) {
                const ComplexMatrix s = pauli(axis);
                rho += spec.c[static_cast<std::size_t>(axis - 1)] * kron(s, s);
            }
            rho *= 0.25;
            return rho;
        }
    }
}

}  // namespace ybqfi
