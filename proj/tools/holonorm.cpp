// holonorm: command-line front end.
//
// Exit codes: 0 pass, 2 input error, 3 analytic failure.

#include "holonorm/criteria.hpp"
#include "holonorm/error.hpp"
#include "holonorm/format.hpp"
#include "holonorm/generators.hpp"
#include "holonorm/io.hpp"
#include "holonorm/jensen.hpp"
#include "holonorm/rescale.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>

namespace fs = std::filesystem;
using namespace holonorm;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_input = 2;
constexpr int exit_fail = 3;

struct Options {
    std::string curve;
    std::string out;
    double a = 1.0;
    double delta = 0.3;
    std::vector<double> window;
    bool interior_only = true;
    double threshold_a = std::numeric_limits<double>::infinity();
    double threshold_delta = std::numeric_limits<double>::infinity();
    double zero_tolerance = default_zero_tolerance;

    // jensen-check
    int t_points = 101;
    int nodes = 4096;
    double jensen_tolerance = 1e-6;

    // rescale
    std::vector<double> ladder{0.0, 1.0, 10.0};
    std::vector<int> grid{32, 32};
    std::vector<double> annulus{-1.0, 1.0};
    double h_step = 0.01;
    double threshold_vanish = TraceConfig{}.threshold_vanish;
    double tol_conv = TraceConfig{}.tol_conv;
    std::string csv;

    // generate
    std::string preset;
    int K = 0;
    double base = 2.0;
    std::uint64_t seed = 0;
    int n = 1;
    double density = 1.0;
};

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file_atomic(path, text);
}

void add_curve(CLI::App* cmd, Options& o) {
    cmd->add_option("--curve", o.curve, "Curve specification (JSON)")->required();
    cmd->add_option("--zero-tolerance", o.zero_tolerance, "Common-zero detection radius");
}

void add_window(CLI::App* cmd, Options& o) {
    cmd->add_option("--window", o.window, "t-window lo,hi (default: zeros' t-range padded)")
        ->delimiter(',')
        ->expected(2);
}

void add_out(CLI::App* cmd, Options& o) {
    cmd->add_option("--out", o.out, "Output path (default: stdout)");
}

Window resolve_window(const Curve& curve, const Options& o) {
    if (!o.window.empty()) {
        const Window w{o.window[0], o.window[1]};
        if (!(w.lo < w.hi)) invalid_parameter("window must satisfy lo < hi");
        return w;
    }
    double lo = 0.0, hi = 0.0;
    if (!curve.zero_t_range(lo, hi)) return {-5.0, 5.0};
    const double pad = 2.0 * o.a + 2.0;
    return {lo - pad, hi + pad};
}

int run_analyze(const Options& o) {
    const LoadedCurve in = load_curve(o.curve, o.zero_tolerance);
    AnalyzeParams p;
    p.a = o.a;
    p.delta = o.delta;
    p.window = resolve_window(in.curve, o);
    p.interior_only = o.interior_only;
    p.threshold_a = o.threshold_a;
    p.threshold_delta = o.threshold_delta;
    const CriteriaReport report = analyze(in.curve, p);
    write_output(o.out, report_to_json(report, p, in.curve.label(), in.m_shift));
    return report.pass ? exit_pass : exit_fail;
}

int run_jensen(const Options& o) {
    const LoadedCurve in = load_curve(o.curve, o.zero_tolerance);
    const Window w = resolve_window(in.curve, o);
    JensenOptions jo;
    jo.t_points = o.t_points;
    jo.nodes = o.nodes;
    const JensenReport r = jensen_check(in.curve, w, jo);
    write_output(o.out, jensen_to_json(r, w, jo, o.jensen_tolerance));
    std::cerr << "max error " << format_sig12(r.max_error) << " over " << r.checked << " circles, "
              << r.skipped.size() << " skipped near zeros\n";
    return r.max_error <= o.jensen_tolerance ? exit_pass : exit_fail;
}

int run_rescale(const Options& o) {
    const LoadedCurve in = load_curve(o.curve, o.zero_tolerance);
    const double count = o.ladder[2];
    if (!(count >= 1.0) || count != std::floor(count)) invalid_parameter("ladder count must be a positive integer");
    std::vector<double> lls;
    for (int k = 0; k < static_cast<int>(count); ++k) lls.push_back(o.ladder[0] + o.ladder[1] * k);
    const Window annulus{o.annulus[0], o.annulus[1]};
    const Grid grid{o.grid[0], o.grid[1]};
    TraceConfig cfg;
    cfg.threshold_vanish = o.threshold_vanish;
    cfg.tol_conv = o.tol_conv;

    FamilyTrace trace = normalized_trace(in.curve, lls, annulus, grid, cfg);
    const EquicontinuityResult eq = equicontinuity_probe(in.curve, lls, annulus, grid, o.h_step);
    trace.h_step = o.h_step;
    trace.l_max = eq.l_max;
    trace.l_per_lambda = eq.per_lambda;

    write_output(o.out, trace_to_json(trace));
    std::string csv = o.csv;
    if (csv.empty() && !o.out.empty() && o.out != "-") csv = fs::path(o.out).replace_extension(".csv").string();
    if (!csv.empty()) write_file_atomic(csv, trace_to_csv(trace));
    return exit_pass;
}

int run_export(const Options& o) {
    const LoadedCurve in = load_curve(o.curve, o.zero_tolerance);
    const Window w = resolve_window(in.curve, o);
    const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::io_error, "cannot create " + dir.string() + ": " + ec.message());
    for (std::size_t j = 0; j < in.curve.size(); ++j)
        write_file_atomic(dir / ("N_g" + std::to_string(j) + ".csv"), to_csv(in.curve.counting_functions()[j], w));
    write_file_atomic(dir / "N_envelope.csv", to_csv(in.curve.envelope(), w));
    return exit_pass;
}

int run_generate(const Options& o) {
    std::optional<Curve> curve;
    if (o.preset == "geometric")
        curve = geometric_pair(o.K > 0 ? o.K : 10, o.base);
    else if (o.preset == "counterexample")
        curve = normal_counterexample(o.K > 0 ? o.K : 3);
    else if (o.preset == "colliding")
        curve = colliding_pair(o.K > 0 ? o.K : 19, [](int k) { return 1.0 / (k + 1); });
    else if (o.preset == "random") {
        const Window w = o.window.empty() ? Window{-5.0, 5.0} : Window{o.window[0], o.window[1]};
        curve = random_curve(o.n, o.density, w, o.seed);
    } else
        invalid_parameter("unknown preset " + o.preset);
    write_output(o.out, curve_to_json(*curve));
    return exit_pass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normality criteria for holomorphic curves in projective space"};
    app.set_config("--config", "", "INI/TOML file with option defaults; command-line flags win");
    app.require_subcommand(1);
    Options o;

    auto* analyze_cmd = app.add_subcommand("analyze", "Evaluate the tangent-defect and cluster conditions");
    add_curve(analyze_cmd, o);
    add_window(analyze_cmd, o);
    add_out(analyze_cmd, o);
    analyze_cmd->add_option("--a", o.a, "Defect range a > 0");
    analyze_cmd->add_option("--delta", o.delta, "Disc radius 0 < delta <= pi/2");
    analyze_cmd->add_flag("--interior-only,!--no-interior-only", o.interior_only,
                          "Ignore pairs within a of the window edges (default on)");
    analyze_cmd->add_option("--threshold-a", o.threshold_a, "Largest acceptable C(a)");
    analyze_cmd->add_option("--threshold-delta", o.threshold_delta, "Largest acceptable C(delta)");

    auto* jensen_cmd = app.add_subcommand("jensen-check", "Compare circle means of log|g| with the counting functions");
    add_curve(jensen_cmd, o);
    add_window(jensen_cmd, o);
    add_out(jensen_cmd, o);
    jensen_cmd->add_option("--points", o.t_points, "t-grid size");
    jensen_cmd->add_option("--nodes", o.nodes, "Quadrature nodes per circle");
    jensen_cmd->add_option("--tolerance", o.jensen_tolerance, "Largest acceptable absolute error");

    auto* rescale_cmd = app.add_subcommand("rescale", "Trace the normalized rescaled family");
    add_curve(rescale_cmd, o);
    add_out(rescale_cmd, o);
    rescale_cmd->add_option("--ladder", o.ladder, "log(lambda) ladder start,step,count")->delimiter(',')->expected(3);
    rescale_cmd->add_option("--grid", o.grid, "Annulus grid nt,ntheta")->delimiter(',')->expected(2);
    rescale_cmd->add_option("--annulus", o.annulus, "Annulus t-range lo,hi")->delimiter(',')->expected(2);
    rescale_cmd->add_option("--h-step", o.h_step, "Neighbour distance for the equicontinuity probe");
    rescale_cmd->add_option("--threshold-vanish", o.threshold_vanish, "Log level below which a coordinate vanishes");
    rescale_cmd->add_option("--tol-conv", o.tol_conv, "Convergence tolerance between ladder steps");
    rescale_cmd->add_option("--csv", o.csv, "CSV path (default: --out with .csv extension)");

    auto* export_cmd = app.add_subcommand("export-n", "Write counting functions and envelope as CSV");
    add_curve(export_cmd, o);
    add_window(export_cmd, o);
    export_cmd->add_option("--out", o.out, "Output directory (default: .)");

    auto* generate_cmd = app.add_subcommand("generate", "Write a preset curve specification");
    generate_cmd->add_option("preset", o.preset, "geometric | counterexample | colliding | random")
        ->required()
        ->check(CLI::IsMember({"geometric", "counterexample", "colliding", "random"}));
    add_out(generate_cmd, o);
    generate_cmd->add_option("--K", o.K, "Truncation depth");
    generate_cmd->add_option("--base", o.base, "Modulus ratio for the geometric preset");
    generate_cmd->add_option("--seed", o.seed, "Seed for the random preset");
    generate_cmd->add_option("--n", o.n, "Dimension n for the random preset");
    generate_cmd->add_option("--density", o.density, "Zeros per unit t for the random preset");
    add_window(generate_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (*analyze_cmd) return run_analyze(o);
        if (*jensen_cmd) return run_jensen(o);
        if (*rescale_cmd) return run_rescale(o);
        if (*export_cmd) return run_export(o);
        if (*generate_cmd) return run_generate(o);
    } catch (const Error& e) {
        std::cerr << "holonorm: " << e.what() << '\n';
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "holonorm: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
