// Command-line frontend: verification suites, figure grids, free-form sweeps
// and flow reports. Exit codes: 0 ok, 1 check failure, 2 usage error,
// 3 numerical warning escalated by --strict.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>

#include "ybqfi/verify.hpp"

namespace {

using namespace ybqfi;

int parse_ham(const std::string& text) {
    if (text == "h1") return 1;
    if (text == "h2") return 2;
    if (text == "h3") return 3;
    throw std::invalid_argument("unknown Hamiltonian '" + text + "' (expected h1, h2 or h3)");
}

Subsystem parse_subsystem(const std::string& text) {
    if (text == "full") return Subsystem::full;
    if (text == "reduced") return Subsystem::reduced_a;
    throw std::invalid_argument("unknown subsystem '" + text + "' (expected full or reduced)");
}

double parse_number(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument(where + ": malformed number '" + text + "'");
    }
}

AxisSpec parse_axis_spec(const std::string& text, std::size_t points) {
    const std::size_t c1 = text.find(':');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("axis '" + text + "': expected name:min:max");
    AxisSpec ax;
    ax.axis = parse_axis(text.substr(0, c1));
    ax.min = parse_number(text.substr(c1 + 1, c2 - c1 - 1), "axis '" + text + "'");
    ax.max = parse_number(text.substr(c2 + 1), "axis '" + text + "'");
    ax.count = points;
    return ax;
}

// ---------------------------------------------------------------- verify ---

int cmd_verify(const std::vector<std::string>& only, const VerifyOptions& options, bool json) {
    const std::vector<SuiteResult> results = run_verify(only, options);
    bool all_passed = true;
    for (const SuiteResult& r : results) all_passed = all_passed && r.passed;

    if (json) {
        nlohmann::json doc;
        doc["tool"] = tool_version;
        doc["passed"] = all_passed;
        doc["suites"] = nlohmann::json::array();
        for (const SuiteResult& r : results) {
            nlohmann::json s;
            s["name"] = r.name;
            s["summary"] = r.summary;
            s["max_residual"] = r.max_residual;
            s["tolerance"] = r.tolerance;
            s["passed"] = r.passed;
            s["notes"] = r.notes;
            doc["suites"].push_back(s);
        }
        std::cout << doc.dump(2) << '\n';
        return all_passed ? 0 : 1;
    }

    std::printf("%-17s %-6s %-13s %-10s summary\n", "suite", "status", "max residual",
                "tolerance");
    int passed = 0;
    for (const SuiteResult& r : results) {
        std::printf("%-17s %-6s %-13.3e %-10.0e %s\n", r.name.c_str(),
                    r.passed ? "pass" : "FAIL", r.max_residual, r.tolerance,
                    r.summary.c_str());
        for (const std::string& note : r.notes) std::printf("    %s\n", note.c_str());
        if (r.passed) ++passed;
    }
    std::printf("%d of %zu suites passed\n", passed, results.size());
    return all_passed ? 0 : 1;
}

// ----------------------------------------------------- sweeps and figures ---

void write_csv(const SweepResult& result, const std::string& path) {
    if (path == "-") {
        write_sweep_csv(result, std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    write_sweep_csv(result, out);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

// shared tail: run, warn, serialize; returns 3 when --strict escalates
int run_and_write(SweepRequest& req, const std::string& path, bool strict) {
    const SweepResult result = run_sweep(req);
    write_csv(result, path);
    if (result.crossing_flagged) {
        std::fprintf(stderr,
                     "warning: eigenvalue crossing inside a derivative stencil was repaired "
                     "by clustering%s\n",
                     strict ? " (escalated by --strict)" : "");
        if (strict) return 3;
    }
    return 0;
}

struct PanelDef {
    int figure;
    char panel;  // '-' for single-panel figures
    const char* description;
    int kind;
    ProbeFamily family;
    double scale;        // Werner weight or Bell-diagonal scale; ignored when scale_axis
    bool scale_axis;     // probe weight is the second axis
    Subsystem subsystem;
    double drive;        // value of the drive coupling (B for h1, J for h2)
    bool phi_axis;       // second axis is phi instead of the probe weight
    bool axis1_is_probe; // probe weight runs first (row-major outer axis)
};

const std::vector<PanelDef>& panel_table() {
    // Drive coupling 1 for information grids (the time axis is then drive*t),
    // 1/2 for flow grids; the idle coupling stays at 1/2 and the Ising term
    // at zero. phi = pi/2 wherever phi is not an axis.
    static const std::vector<PanelDef> table = {
        {1, 'a', "joint QFI, first drive on the first Werner family, t x p at phi = pi/2",
         1, ProbeFamily::werner1, 0.0, true, Subsystem::full, 1.0, false, false},
        {1, 'b', "joint QFI, first drive on the second Werner family, t x p at phi = pi/2",
         1, ProbeFamily::werner2, 0.0, true, Subsystem::full, 1.0, false, false},
        {1, 'c', "joint QFI, first drive on the first Werner family, t x phi at p = 0.5",
         1, ProbeFamily::werner1, 0.5, false, Subsystem::full, 1.0, true, false},
        {1, 'd', "joint QFI, first drive on the second Werner family, t x phi at p = 0.5",
         1, ProbeFamily::werner2, 0.5, false, Subsystem::full, 1.0, true, false},
        {2, 'a', "joint QFI, second drive on the second Werner family, p x t at phi = pi/2",
         2, ProbeFamily::werner2, 0.0, true, Subsystem::full, 1.0, false, true},
        {2, 'b', "joint QFI, second drive on the second Werner family, phi x t at p = 0.5",
         2, ProbeFamily::werner2, 0.5, false, Subsystem::full, 1.0, true, true},
        {3, '-', "joint QFI, first drive on the Bell-diagonal probe (0.9, 0, 0.1), t x phi",
         1, ProbeFamily::bell_diagonal, 1.0, false, Subsystem::full, 1.0, true, false},
        {4, 'a', "reduced QFI, first drive on the first Werner family, t x p at phi = pi/2",
         1, ProbeFamily::werner1, 0.0, true, Subsystem::reduced_a, 1.0, false, false},
        {4, 'b', "reduced QFI flow, first drive on the first Werner family, drive 1/2",
         1, ProbeFamily::werner1, 0.0, true, Subsystem::reduced_a, 0.5, false, false},
        {4, 'c', "reduced QFI, first drive on the second Werner family, t x p at phi = pi/2",
         1, ProbeFamily::werner2, 0.0, true, Subsystem::reduced_a, 1.0, false, false},
        {4, 'd', "reduced QFI flow, first drive on the second Werner family, drive 1/2",
         1, ProbeFamily::werner2, 0.0, true, Subsystem::reduced_a, 0.5, false, false},
        {5, 'a', "reduced QFI, second drive on the second Werner family, t x p at phi = pi/2",
         2, ProbeFamily::werner2, 0.0, true, Subsystem::reduced_a, 1.0, false, false},
        {5, 'b', "reduced QFI flow, second drive on the second Werner family, drive 1/2",
         2, ProbeFamily::werner2, 0.0, true, Subsystem::reduced_a, 0.5, false, false},
        {6, 'a', "reduced QFI, first drive on the Bell-diagonal probe, t x phi",
         1, ProbeFamily::bell_diagonal, 1.0, false, Subsystem::reduced_a, 1.0, true, false},
        {6, 'b', "reduced QFI flow, first drive on the Bell-diagonal probe, drive 1/2",
         1, ProbeFamily::bell_diagonal, 1.0, false, Subsystem::reduced_a, 0.5, true, false},
        {6, 'c', "reduced QFI, second drive on the Bell-diagonal probe, t x phi",
         2, ProbeFamily::bell_diagonal, 1.0, false, Subsystem::reduced_a, 1.0, true, false},
        {6, 'd', "reduced QFI flow, second drive on the Bell-diagonal probe, drive 1/2",
         2, ProbeFamily::bell_diagonal, 1.0, false, Subsystem::reduced_a, 0.5, true, false},
    };
    return table;
}

SweepRequest panel_request(const PanelDef& def, std::size_t points, long repetitions,
                           unsigned threads) {
    SweepRequest req;
    req.scenario.hamiltonian_kind = def.kind;
    req.scenario.subsystem = def.subsystem;
    req.scenario.params.g = 0.0;
    req.scenario.params.B = def.kind == 1 ? def.drive : 0.5;
    req.scenario.params.J = def.kind == 2 ? def.drive : 0.5;
    detail::apply_probe_scale(req.scenario, def.family, def.scale_axis ? 0.5 : def.scale);
    req.phi = M_PI / 2.0;
    req.repetitions = repetitions;
    req.threads = threads;

    const AxisSpec time_axis{SweepAxis::t, 0.0, 2.0 * M_PI, points};
    AxisSpec other;
    other.count = points;
    if (def.phi_axis) {
        other.axis = SweepAxis::phi;
        other.min = 0.0;
        other.max = 2.0 * M_PI;
    } else {
        other.axis = SweepAxis::p;
        other.min = 0.0;
        other.max = 1.0;
    }
    if (def.axis1_is_probe)
        req.axes = {other, time_axis};
    else
        req.axes = {time_axis, other};
    return req;
}

int cmd_figure(int figure, const std::string& panel, const std::string& output,
               std::size_t points, long repetitions, unsigned threads, bool strict) {
    std::vector<PanelDef> selected;
    for (const PanelDef& def : panel_table()) {
        if (def.figure != figure) continue;
        if (!panel.empty() && std::string(1, def.panel) != panel) continue;
        selected.push_back(def);
    }
    if (selected.empty()) {
        if (panel.empty())
            throw std::invalid_argument("figure " + std::to_string(figure) +
                                        ": expected a number from 1 to 6");
        throw std::invalid_argument("figure " + std::to_string(figure) + " has no panel '" +
                                    panel + "'");
    }

    int severity = 0;
    for (const PanelDef& def : selected) {
        SweepRequest req = panel_request(def, points, repetitions, threads);
        SweepResult result = run_sweep(req);
        const std::string id =
            "figure " + std::to_string(def.figure) +
            (def.panel == '-' ? std::string() : std::string(" panel ") + def.panel);
        result.comments.insert(result.comments.begin(), "# " + id + ": " + def.description);

        std::string path = output;
        if (path.empty()) {
            path = "figure" + std::to_string(def.figure);
            if (def.panel != '-') path += def.panel;
            path += ".csv";
        } else if (selected.size() > 1 && path != "-") {
            const std::size_t dot = path.rfind(".csv");
            const std::string stem = dot == std::string::npos ? path : path.substr(0, dot);
            path = stem + "_" + def.panel + ".csv";
        }
        write_csv(result, path);
        if (path != "-") std::printf("%s -> %s\n", id.c_str(), path.c_str());
        if (result.crossing_flagged) {
            std::fprintf(stderr, "warning: %s hit a derivative-stencil crossing%s\n",
                         id.c_str(), strict ? " (escalated by --strict)" : "");
            if (strict) severity = 3;
        }
    }
    return severity;
}

// ------------------------------------------------------------------ flow ---

int cmd_flow(const Scenario& scenario, double phi, double t_begin, double t_end,
             std::size_t points, double dead_band, bool json, const std::string& output) {
    make_probe(scenario.probe);  // surface bound violations as usage errors
    const FlowTrace trace = build_flow_trace(scenario, phi, t_begin, t_end, points, dead_band);

    double max_qfi = 0.0, max_qfi_t = trace.times.front();
    double max_flow = 0.0, max_flow_t = trace.times.front();
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        if (trace.qfi[i] > max_qfi) {
            max_qfi = trace.qfi[i];
            max_qfi_t = trace.times[i];
        }
        if (std::abs(trace.flow[i]) > max_flow) {
            max_flow = std::abs(trace.flow[i]);
            max_flow_t = trace.times[i];
        }
    }
    const bool quiet = max_qfi <= 1e-12;

    const std::string scenario_text = "ham=h" + std::to_string(scenario.hamiltonian_kind) +
                                      " probe=" + format_probe_spec(scenario.probe) +
                                      " subsystem=" + format_subsystem(scenario.subsystem);
    std::ostringstream report;
    if (json) {
        nlohmann::json doc;
        doc["tool"] = tool_version;
        doc["scenario"] = scenario_text;
        doc["phi"] = phi;
        doc["t_begin"] = t_begin;
        doc["t_end"] = t_end;
        doc["points"] = points;
        doc["dead_band"] = dead_band;
        doc["quiet"] = quiet;
        doc["windows"] = nlohmann::json::array();
        if (!quiet)
            for (const FlowWindow& w : trace.windows)
                doc["windows"].push_back({{"t_begin", w.t_begin},
                                          {"t_end", w.t_end},
                                          {"regime", format_regime(w.regime)}});
        doc["max_qfi"] = {{"value", max_qfi}, {"t", max_qfi_t}};
        doc["max_abs_flow"] = {{"value", max_flow}, {"t", max_flow_t}};
        report << doc.dump(2) << '\n';
    } else {
        report << "scenario: " << scenario_text << '\n';
        report << "grid: t in [" << detail::format_double(t_begin) << ", "
               << detail::format_double(t_end) << "], " << points
               << " points, phi = " << detail::format_double(phi)
               << ", dead band = " << detail::format_double(dead_band) << '\n';
        if (quiet) {
            report << "no phi-sensitivity; QFI identically 0; no windows\n";
        } else {
            report << "windows:\n";
            std::size_t n = 0;
            for (const FlowWindow& w : trace.windows)
                report << "  " << ++n << ". [" << detail::format_double(w.t_begin) << ", "
                       << detail::format_double(w.t_end) << "]  " << format_regime(w.regime)
                       << '\n';
            if (trace.windows.empty())
                report << "  (flow never leaves the dead band)\n";
            report << "max QFI " << detail::format_double(max_qfi) << " at t = "
                   << detail::format_double(max_qfi_t) << '\n';
            report << "max |flow| " << detail::format_double(max_flow) << " at t = "
                   << detail::format_double(max_flow_t) << '\n';
        }
    }

    if (output.empty() || output == "-") {
        std::cout << report.str();
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file '" + output + "'");
        out << report.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Yang-Baxter deformed two-qubit models: quantum Fisher information toolkit"};
    app.set_version_flag("--version", std::string(ybqfi::tool_version));
    app.require_subcommand(1);

    // global flags, visible to every subcommand
    std::size_t points = 101;
    bool json = false, strict = false;
    long repetitions = 1;
    unsigned threads = 1;
    std::string output;
    ybqfi::VerifyOptions verify_options;
    app.add_option("--points", points, "grid points per axis (default 101)")
        ->check(CLI::Range(static_cast<std::size_t>(2), static_cast<std::size_t>(100000)));
    app.add_flag("--json", json, "emit JSON instead of the text report (verify, flow)");
    app.add_flag("--strict", strict, "escalate numerical warnings to exit code 3");
    app.add_option("--repetitions", repetitions,
                   "independent repetitions entering the QCRB column")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "worker threads for grid evaluation")
        ->check(CLI::Range(1u, 64u));
    app.add_option("--output", output, "output path ('-' for stdout)");
    app.add_option("--tol-closed-form", verify_options.tol_closed_form,
                   "tolerance of the closed-form comparison suite");
    app.add_option("--tol-routes", verify_options.tol_routes,
                   "tolerance of the route-agreement suite");
    app.fallthrough();

    // verify
    CLI::App* verify = app.add_subcommand("verify", "run the self-check suites");
    std::vector<std::string> only;
    verify->add_option("--only", only, "run only the named suites (repeatable)");

    // figure
    CLI::App* figure =
        app.add_subcommand("figure", "emit the grid behind one of the built-in figures (1-6)");
    int figure_number = 0;
    std::string panel;
    figure->add_option("number", figure_number, "figure number, 1 to 6")->required();
    figure->add_option("--panel", panel, "panel letter (a-d); all panels when omitted")
        ->check(CLI::IsMember({"a", "b", "c", "d"}));

    // sweep
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a scenario over a custom grid");
    std::string ham_text = "h1", probe_text = "werner1:p=0.5", subsystem_text = "full";
    std::vector<std::string> axis_texts;
    double fixed_t = 1.0, fixed_phi = M_PI / 2.0;
    ybqfi::ModelParams params;
    sweep->add_option("--ham", ham_text, "h1, h2 or h3");
    sweep->add_option("--probe", probe_text,
                      "probe spec, e.g. werner1:p=0.5 or belldiag:c1=0.9,c2=0,c3=0.1");
    sweep->add_option("--subsystem", subsystem_text, "full or reduced");
    sweep->add_option("--axis", axis_texts, "swept axis as name:min:max (one or two)")
        ->required()
        ->expected(1, 2);
    sweep->add_option("--t", fixed_t, "fixed evolution time when t is not an axis");
    sweep->add_option("--phi", fixed_phi, "fixed phase when phi is not an axis");
    sweep->add_option("--B", params.B, "mean field (drive of h1)");
    sweep->add_option("--J", params.J, "field half-difference (drive of h2)");
    sweep->add_option("--g", params.g, "Ising coupling");
    sweep->add_option("--theta", params.theta, "deformation angle");
    sweep->add_option("--eps", params.eps, "sign parameter of the third kind")
        ->check(CLI::IsMember({-1, 1}));

    // flow
    CLI::App* flow = app.add_subcommand("flow", "classify the QFI flow over a time range");
    std::string f_ham = "h1", f_probe = "werner1:p=0.5", f_subsystem = "reduced";
    double f_phi = M_PI / 2.0, t_begin = 0.0, t_end = M_PI;
    double dead_band = ybqfi::tol::flow_dead_band;
    ybqfi::ModelParams f_params;
    flow->add_option("--ham", f_ham, "h1, h2 or h3");
    flow->add_option("--probe", f_probe, "probe spec");
    flow->add_option("--subsystem", f_subsystem, "full or reduced");
    flow->add_option("--phi", f_phi, "encoded phase");
    flow->add_option("--t-begin", t_begin, "start of the time range");
    flow->add_option("--t-end", t_end, "end of the time range");
    flow->add_option("--dead-band", dead_band, "flow magnitudes below this carry no sign");
    flow->add_option("--B", f_params.B, "mean field (drive of h1)");
    flow->add_option("--J", f_params.J, "field half-difference (drive of h2)");
    flow->add_option("--g", f_params.g, "Ising coupling");
    flow->add_option("--theta", f_params.theta, "deformation angle");
    flow->add_option("--eps", f_params.eps, "sign parameter of the third kind")
        ->check(CLI::IsMember({-1, 1}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(verify)) return cmd_verify(only, verify_options, json);

        if (app.got_subcommand(figure))
            return cmd_figure(figure_number, panel, output, points, repetitions, threads,
                              strict);

        if (app.got_subcommand(sweep)) {
            ybqfi::SweepRequest req;
            req.scenario.hamiltonian_kind = parse_ham(ham_text);
            req.scenario.probe = ybqfi::parse_probe_spec(probe_text);
            req.scenario.subsystem = parse_subsystem(subsystem_text);
            req.scenario.params = params;
            req.phi = fixed_phi;
            req.t = fixed_t;
            for (const std::string& text : axis_texts)
                req.axes.push_back(parse_axis_spec(text, points));
            req.repetitions = repetitions;
            req.threads = threads;
            return run_and_write(req, output.empty() ? "sweep.csv" : output, strict);
        }

        if (app.got_subcommand(flow)) {
            ybqfi::Scenario sc;
            sc.hamiltonian_kind = parse_ham(f_ham);
            sc.probe = ybqfi::parse_probe_spec(f_probe);
            sc.subsystem = parse_subsystem(f_subsystem);
            sc.params = f_params;
            return cmd_flow(sc, f_phi, t_begin, t_end, points, dead_band, json, output);
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
