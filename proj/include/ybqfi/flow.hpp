#pragma once

#include <vector>

#include "ybqfi/qfi.hpp"

namespace ybqfi {

enum class FlowRegime { markovian, non_markovian };

inline std::string format_regime(FlowRegime r) {
    return r == FlowRegime::markovian ? "markovian(-)" : "non-markovian(+)";
}

/// Maximal time interval on which the QFI flow keeps one sign.
struct FlowWindow {
    double t_begin = 0.0;
    double t_end = 0.0;
    FlowRegime regime = FlowRegime::markovian;
};

struct FlowTrace {
    std::vector<double> times;  // ascending
    std::vector<double> qfi;
    std::vector<double> flow;
    std::vector<FlowWindow> windows;
};

/// Splits a sampled flow into maximal one-sign windows. Samples inside the
/// dead band carry no sign of their own: they join the next signed window,
/// and a trailing neutral stretch joins the preceding one. A trace that never
/// leaves the dead band has no windows at all.
inline std::vector<FlowWindow> classify_markovianity(const std::vector<double>& times,
                                                     const std::vector<double>& flow,
                                                     double dead_band = tol::flow_dead_band) {
    if (times.empty() || times.size() != flow.size())
        throw std::invalid_argument("classify_markovianity: empty or mismatched trace");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw std::invalid_argument("classify_markovianity: time grid must ascend");

    std::vector<FlowWindow> windows;
    std::size_t pending_begin = 0;  // first index not yet assigned to a window
    bool have_pending = false;

    for (std::size_t i = 0; i < flow.size(); ++i) {
        int sign = 0;
        if (flow[i] > dead_band) sign = 1;
        else if (flow[i] < -dead_band) sign = -1;

        if (sign == 0) {
            if (!have_pending) {
                pending_begin = i;
                have_pending = true;
            }
            continue;
        }

        const FlowRegime regime = sign > 0 ? FlowRegime::non_markovian : FlowRegime::markovian;
        const std::size_t begin = have_pending ? pending_begin : i;
        have_pending = false;
        if (!windows.empty() && windows.back().regime == regime) {
            windows.back().t_end = times[i];
        } else {
            windows.push_back({times[begin], times[i], regime});
        }
    }

    // trailing neutral samples extend the last signed window
    if (have_pending && !windows.empty()) windows.back().t_end = times.back();
    return windows;
}

/// Samples QFI and its time derivative over a uniform grid and classifies the
/// sign windows.
inline FlowTrace build_flow_trace(const Scenario& sc, double phi, double t_begin, double t_end,
                                  std::size_t count, double dead_band = tol::flow_dead_band) {
    if (count < 2 || !(t_end > t_begin))
        throw std::invalid_argument("build_flow_trace: need an ascending range with >= 2 points");

    FlowTrace trace;
    trace.times.resize(count);
    trace.qfi.resize(count);
    trace.flow.resize(count);
    const double step = (t_end - t_begin) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = t_begin + step * static_cast<double>(i);
        trace.times[i] = t;
        trace.qfi[i] = qfi_numeric(sc, phi, t);
        trace.flow[i] = qfi_flow_numeric(sc, phi, t);
    }
    trace.windows = classify_markovianity(trace.times, trace.flow, dead_band);
    return trace;
}

}  // namespace ybqfi
