#pragma once

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "ybqfi/closed_form.hpp"
#include "ybqfi/flow.hpp"

namespace ybqfi {

inline constexpr const char* tool_version = "yb-qfi 1.0.0";

enum class SweepAxis { t, phi, p, c1, c2, c3 };

inline std::string format_axis(SweepAxis a) {
    switch (a) {
        case SweepAxis::t: return "t";
        case SweepAxis::phi: return "phi";
        case SweepAxis::p: return "p";
        case SweepAxis::c1: return "c1";
        case SweepAxis::c2: return "c2";
        default: return "c3";
    }
}

inline SweepAxis parse_axis(const std::string& s) {
    if (s == "t") return SweepAxis::t;
    if (s == "phi") return SweepAxis::phi;
    if (s == "p") return SweepAxis::p;
    if (s == "c1") return SweepAxis::c1;
    if (s == "c2") return SweepAxis::c2;
    if (s == "c3") return SweepAxis::c3;
    throw std::invalid_argument("unknown sweep axis '" + s + "' (expected t, phi, p, c1, c2, c3)");
}

struct AxisSpec {
    SweepAxis axis = SweepAxis::t;
    double min = 0.0;
    double max = 1.0;
    std::size_t count = 101;
};

/// A grid evaluation job: one or two axes vary, everything else is pinned by
/// the scenario and the fixed phi/t below.
struct SweepRequest {
    Scenario scenario;
    double phi = M_PI / 2.0;  // used when phi is not an axis
    double t = 1.0;           // used when t is not an axis
    std::vector<AxisSpec> axes;
    long repetitions = 1;
    unsigned threads = 1;
};

struct SweepRow {
    double axis1 = 0.0;
    double axis2 = 0.0;  // meaningful only for two-axis grids
    double qfi_numeric = 0.0;
    std::optional<double> qfi_closed;
    double flow_numeric = 0.0;
    std::optional<double> flow_closed;
    double qcrb = 0.0;
};

struct SweepResult {
    std::vector<std::string> comments;
    std::vector<std::string> axis_names;
    std::vector<SweepRow> rows;
    bool crossing_flagged = false;
};

namespace detail {

inline void validate_request(const SweepRequest& req) {
    if (req.axes.empty() || req.axes.size() > 2)
        throw std::invalid_argument("sweep: need one or two axes");
    for (const auto& ax : req.axes) {
        if (ax.count < 2) throw std::invalid_argument("sweep: each axis needs >= 2 points");
        if (!(ax.min < ax.max)) throw std::invalid_argument("sweep: axis range must ascend");
        const bool state_axis = ax.axis != SweepAxis::t && ax.axis != SweepAxis::phi;
        if (!state_axis) continue;
        const bool werner = req.scenario.probe.family != ProbeFamily::bell_diagonal;
        if (werner && ax.axis != SweepAxis::p)
            throw std::invalid_argument("sweep: correlation axes need a belldiag probe");
        if (!werner && ax.axis == SweepAxis::p)
            throw std::invalid_argument("sweep: the p axis needs a Werner probe");
    }
    if (req.axes.size() == 2 && req.axes[0].axis == req.axes[1].axis)
        throw std::invalid_argument("sweep: axes must be distinct");
}

inline double axis_value(const AxisSpec& ax, std::size_t i) {
    return ax.min + (ax.max - ax.min) * static_cast<double>(i) / static_cast<double>(ax.count - 1);
}

// applies one axis value to the evaluation point
inline void apply_axis(SweepAxis which, double value, Scenario& sc, double& phi, double& t) {
    switch (which) {
        case SweepAxis::t: t = value; break;
        case SweepAxis::phi: phi = value; break;
        case SweepAxis::p: sc.probe.p = value; break;
        case SweepAxis::c1: sc.probe.c[0] = value; break;
        case SweepAxis::c2: sc.probe.c[1] = value; break;
        case SweepAxis::c3: sc.probe.c[2] = value; break;
    }
}

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

/// Evaluates the grid. Workers pull row indices from a shared counter and
/// write into preallocated slots, so the result is identical for any worker
/// count; each row is a pure function of its grid coordinates.
inline SweepResult run_sweep(const SweepRequest& req) {
    detail::validate_request(req);
    make_probe(req.scenario.probe);  // reject invalid probes before spawning workers

    const AxisSpec& a1 = req.axes[0];
    const bool two = req.axes.size() == 2;
    const std::size_t n2 = two ? req.axes[1].count : 1;
    const std::size_t total = a1.count * n2;

    SweepResult result;
    result.axis_names.push_back(format_axis(a1.axis));
    if (two) result.axis_names.push_back(format_axis(req.axes[1].axis));
    result.rows.resize(total);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> flagged{false};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= total || failed.load()) return;
            const std::size_t i = idx / n2, j = idx % n2;

            Scenario sc = req.scenario;
            double phi = req.phi, t = req.t;
            SweepRow row;
            row.axis1 = detail::axis_value(a1, i);
            detail::apply_axis(a1.axis, row.axis1, sc, phi, t);
            if (two) {
                row.axis2 = detail::axis_value(req.axes[1], j);
                detail::apply_axis(req.axes[1].axis, row.axis2, sc, phi, t);
            }

            try {
                row.qfi_numeric = qfi_numeric(sc, phi, t);
                row.qfi_closed = closed_form_qfi(sc, phi, t);
                row.flow_numeric = qfi_flow_numeric(sc, phi, t);
                row.flow_closed = closed_form_flow(sc, phi, t);
                row.qcrb = qcrb_bound(row.qfi_numeric, req.repetitions);
                if (qfi_spectral(sc, phi, t).crossing_flagged) flagged.store(true);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
            result.rows[idx] = row;
        }
    };

    const unsigned n_threads = req.threads == 0 ? 1 : req.threads;
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    result.crossing_flagged = flagged.load();

    result.comments.push_back(std::string("# ") + tool_version);
    const auto swept = [&](SweepAxis a) {
        for (const auto& ax : req.axes)
            if (ax.axis == a) return true;
        return false;
    };
    std::string probe_text;  // swept probe parameters are marked, not frozen
    {
        using detail::format_double;
        const ProbeSpec& pr = req.scenario.probe;
        if (pr.family == ProbeFamily::bell_diagonal) {
            probe_text = "belldiag";
            const SweepAxis c_axes[3] = {SweepAxis::c1, SweepAxis::c2, SweepAxis::c3};
            for (int i = 0; i < 3; ++i)
                probe_text += std::string(i == 0 ? ":" : ",") + "c" + std::to_string(i + 1) +
                              "=" + (swept(c_axes[i]) ? "<swept>" : format_double(pr.c[i]));
        } else {
            probe_text = pr.family == ProbeFamily::werner1 ? "werner1" : "werner2";
            probe_text += ":p=" + (swept(SweepAxis::p) ? std::string("<swept>")
                                                       : format_double(pr.p));
        }
    }
    result.comments.push_back("# scenario: ham=h" + std::to_string(req.scenario.hamiltonian_kind) +
                              " probe=" + probe_text +
                              " subsystem=" + format_subsystem(req.scenario.subsystem));
    {
        const ModelParams& mp = req.scenario.params;
        result.comments.push_back("# params: B=" + detail::format_double(mp.B) +
                                  " J=" + detail::format_double(mp.J) +
                                  " g=" + detail::format_double(mp.g) +
                                  " theta=" + detail::format_double(mp.theta) +
                                  " eps=" + std::to_string(mp.eps) +
                                  " repetitions=" + std::to_string(req.repetitions));
        std::string fixed;
        bool phi_is_axis = false, t_is_axis = false;
        for (const auto& ax : req.axes) {
            phi_is_axis = phi_is_axis || ax.axis == SweepAxis::phi;
            t_is_axis = t_is_axis || ax.axis == SweepAxis::t;
        }
        if (!t_is_axis) fixed += " t=" + detail::format_double(req.t);
        if (!phi_is_axis) fixed += " phi=" + detail::format_double(req.phi);
        if (!fixed.empty()) result.comments.push_back("# fixed:" + fixed);
    }
    for (std::size_t k = 0; k < req.axes.size(); ++k) {
        const auto& ax = req.axes[k];
        result.comments.push_back("# axis" + std::to_string(k + 1) + ": " + format_axis(ax.axis) +
                                  " from " + detail::format_double(ax.min) + " to " +
                                  detail::format_double(ax.max) + ", " + std::to_string(ax.count) +
                                  " points");
    }
    return result;
}

/// Serializes a sweep as CSV: '#' provenance comments, one fixed header, rows
/// with 17 significant digits. Closed-form columns are left empty when the
/// scenario has no tabulated expression.
inline void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    for (const auto& line : result.comments) out << line << '\n';
    out << "axis1,axis2,qfi_numeric,qfi_closed,abs_diff,flow_numeric,flow_closed,qcrb_bound\n";
    const bool two = result.axis_names.size() == 2;
    for (const auto& row : result.rows) {
        using detail::format_g17;
        out << format_g17(row.axis1) << ',';
        if (two) out << format_g17(row.axis2);
        out << ',' << format_g17(row.qfi_numeric) << ',';
        if (row.qfi_closed) out << format_g17(*row.qfi_closed);
        out << ',';
        if (row.qfi_closed) out << format_g17(std::abs(row.qfi_numeric - *row.qfi_closed));
        out << ',' << format_g17(row.flow_numeric) << ',';
        if (row.flow_closed) out << format_g17(*row.flow_closed);
        out << ',' << format_g17(row.qcrb) << '\n';
    }
}

}  // namespace ybqfi
