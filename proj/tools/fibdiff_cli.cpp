// Command line front end: model set generation, Bragg lower-bound reports,
// almost-period certificates, the ping identity check and the common-peak
// table. Identical configuration produces identical output bytes.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "fibdiff/report_io.hpp"

using namespace fibdiff;

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

Window parse_window(const std::string& spec, bool lo_open, bool hi_open) {
    if (spec == "fib") return Window::fibonacci();
    auto comma = spec.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--window", "expected 'fib' or 'LO,HI'");
    double lo = std::stod(spec.substr(0, comma));
    double hi = std::stod(spec.substr(comma + 1));
    return Window(lo, hi, !lo_open, !hi_open);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        out.push_back(std::stod(text.substr(pos, next == std::string::npos ? next : next - pos)));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (out.empty()) throw CLI::ValidationError("list", "empty list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fibonacci cut-and-project diffraction toolkit"};
    app.require_subcommand(1);

    // generate ---------------------------------------------------------------
    std::string g_side = "direct", g_window = "fib", g_out = "points.csv", g_format = "csv";
    bool g_lo_open = false, g_hi_open = false;
    std::vector<double> g_range{-10.0, 10.0};
    auto* gen = app.add_subcommand("generate", "enumerate a (dual) model set over a range");
    gen->add_option("--side", g_side)->check(CLI::IsMember({"direct", "dual"}));
    gen->add_option("--window", g_window, "'fib' or 'LO,HI'");
    gen->add_flag("--lo-open", g_lo_open, "exclude the lower window endpoint");
    gen->add_flag("--hi-open", g_hi_open, "exclude the upper window endpoint");
    gen->add_option("--range", g_range, "position range MIN MAX")->expected(2);
    gen->add_option("--out", g_out);
    gen->add_option("--format", g_format)->check(CLI::IsMember({"csv", "json"}));

    // bragg -------------------------------------------------------------------
    std::string b_subset = "full", b_out = "bragg.csv", b_format = "csv";
    double b_n = 1e4, b_eps = 0.9, b_tol = 0.05, b_agree = 0.02;
    std::vector<double> b_range{-20.0, 20.0};
    auto* bragg = app.add_subcommand("bragg", "verify Bragg-peak lower bounds for a subset");
    bragg->add_option("--subset", b_subset,
                      "full | bernoulli:p=<f>:seed=<u64> | stride:k=<int> | file:<path> | empty");
    bragg->add_option("--n", b_n, "averaging radius");
    bragg->add_option("--eps", b_eps, "peak family B_eps");
    bragg->add_option("--range", b_range, "peak position range MIN MAX")->expected(2);
    bragg->add_option("--tol", b_tol, "finite-size tolerance as a fraction of I at n=1e4");
    bragg->add_option("--agree-tol", b_agree, "estimator agreement tolerance at n=1e4");
    bragg->add_option("--out", b_out);
    bragg->add_option("--format", b_format)->check(CLI::IsMember({"csv", "json"}));

    // almostperiods -------------------------------------------------------------
    std::string a_alphas = "1e-3,1e-4,1e-5", a_out = "certificates.json", a_format = "json";
    int a_count = 20;
    double a_Y = 50.0;
    std::uint64_t a_seed = 1;
    auto* ap = app.add_subcommand("almostperiods",
                                  "certify norm almost periods of the Fourier side");
    ap->add_option("--alphas", a_alphas, "comma separated internal radii");
    ap->add_option("--count", a_count, "samples per alpha");
    ap->add_option("--Y", a_Y, "internal truncation");
    ap->add_option("--seed", a_seed);
    ap->add_option("--out", a_out);
    ap->add_option("--format", a_format)->check(CLI::IsMember({"csv", "json"}));

    // pingcheck ------------------------------------------------------------------
    double p_n = 1e4, p_Y = 50.0;
    std::vector<double> p_window{0.0, 1.0};
    std::string p_out = "pingcheck.json", p_format = "json";
    auto* ping = app.add_subcommand("pingcheck",
                                    "atomwise convolution identity on the full model set");
    ping->add_option("--n", p_n);
    ping->add_option("--Y", p_Y, "internal truncation of the Fourier side");
    ping->add_option("--k-window", p_window, "check window LO HI")->expected(2);
    ping->add_option("--out", p_out);
    ping->add_option("--format", p_format)->check(CLI::IsMember({"csv", "json"}));

    // figure1 ---------------------------------------------------------------------
    std::vector<double> f_range{-500.0, 500.0};
    std::string f_out = "figure1.csv", f_format = "csv";
    auto* fig = app.add_subcommand("figure1", "common Bragg peak positions and bound fractions");
    fig->add_option("--range", f_range)->expected(2);
    fig->add_option("--out", f_out);
    fig->add_option("--format", f_format)->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            ModelSetQuery q{g_side == "direct" ? Side::direct : Side::dual,
                            parse_window(g_window, g_lo_open, g_hi_open), g_range[0], g_range[1]};
            auto res = enumerate_model_set(q);
            RunConfig cfg{{"command", "generate"},
                          {"side", g_side},
                          {"window", g_window},
                          {"lo_open", g_lo_open ? "true" : "false"},
                          {"hi_open", g_hi_open ? "true" : "false"},
                          {"x_min", fmt17(g_range[0])},
                          {"x_max", fmt17(g_range[1])},
                          {"format", g_format}};
            auto os = open_out(g_out);
            if (g_format == "csv") write_points_csv(os, cfg, res);
            else write_points_json(os, cfg, res);
            return 0;
        }
        if (bragg->parsed()) {
            auto spec = SubsetSpec::parse(b_subset);
            auto points = spec.materialize(b_n);
            auto v = verify_bragg_lower_bounds(points, b_n, b_eps, b_range[0], b_range[1], b_tol,
                                               b_agree);
            RunConfig cfg{{"command", "bragg"},
                          {"subset", spec.describe()},
                          {"rng", "mt19937_64"},
                          {"n", fmt17(b_n)},
                          {"eps", fmt17(b_eps)},
                          {"x_min", fmt17(b_range[0])},
                          {"x_max", fmt17(b_range[1])},
                          {"tol_scale", fmt17(b_tol)},
                          {"agree_scale", fmt17(b_agree)},
                          {"format", b_format}};
            auto os = open_out(b_out);
            if (b_format == "csv") write_bragg_csv(os, cfg, v);
            else write_bragg_json(os, cfg, v);
            if (v.vacuous) std::cerr << "note: intensity at the origin is zero; vacuous pass\n";
            if (!v.all_pass()) {
                std::cerr << "bragg: a lower bound or agreement check failed; see " << b_out
                          << "\n";
                return 1;
            }
            return 0;
        }
        if (ap->parsed()) {
            auto alphas = parse_list(a_alphas);
            std::vector<AlmostPeriodReport> reports;
            AlmostPeriodOptions opts;
            opts.Y = a_Y;
            for (std::size_t i = 0; i < alphas.size(); ++i) {
                auto ts = sample_dual_points(alphas[i], a_count, a_seed + i);
                for (auto& t : ts) reports.push_back(certify_almost_period(t, alphas[i], opts));
            }
            RunConfig cfg{{"command", "almostperiods"},
                          {"alphas", a_alphas},
                          {"count", std::to_string(a_count)},
                          {"Y", fmt17(a_Y)},
                          {"rng", "mt19937_64"},
                          {"seed", std::to_string(a_seed)},
                          {"format", a_format}};
            auto os = open_out(a_out);
            if (a_format == "csv") write_certificates_csv(os, cfg, reports);
            else write_certificates_json(os, cfg, reports);
            for (const auto& r : reports)
                if (!r.pass) {
                    std::cerr << "almostperiods: a certificate failed; see " << a_out << "\n";
                    return 1;
                }
            return 0;
        }
        if (ping->parsed()) {
            auto points = fib_points(p_n);
            auto rep = ping_identity_check(points, p_n, p_window[0], p_window[1], p_Y);
            RunConfig cfg{{"command", "pingcheck"},
                          {"n", fmt17(p_n)},
                          {"Y", fmt17(p_Y)},
                          {"k_lo", fmt17(p_window[0])},
                          {"k_hi", fmt17(p_window[1])},
                          {"format", p_format}};
            auto os = open_out(p_out);
            if (p_format == "csv") write_ping_csv(os, cfg, rep);
            else write_ping_json(os, cfg, rep);
            if (!rep.pass) {
                std::cerr << "pingcheck: identity defect above tolerance; see " << p_out << "\n";
                return 1;
            }
            return 0;
        }
        if (fig->parsed()) {
            auto rows = figure1_data(f_range[0], f_range[1]);
            RunConfig cfg{{"command", "figure1"},
                          {"x_min", fmt17(f_range[0])},
                          {"x_max", fmt17(f_range[1])},
                          {"format", f_format}};
            auto os = open_out(f_out);
            if (f_format == "csv") write_figure1_csv(os, cfg, rows);
            else write_figure1_json(os, cfg, rows);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
