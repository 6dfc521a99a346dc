#include "fibdiff/report_io.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace fibdiff {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void csv_header(std::ostream& os, const RunConfig& cfg) {
    for (const auto& [k, v] : cfg) os << "# " << k << "=" << v << "\n";
}

nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : cfg) j[k] = v;
    return j;
}

const char* method_name(BraggMethod m) {
    return m == BraggMethod::amplitude_sq ? "amplitude_sq" : "autocorr_sum";
}

nlohmann::json bragg_row(const LowerBoundReport& r) {
    return {{"k", r.k},
            {"k_star", r.k_star},
            {"m", r.k_point.u.m},
            {"n", r.k_point.u.n},
            {"intensity", r.intensity},
            {"intensity_autocorr", r.intensity_autocorr},
            {"bound", r.bound},
            {"bound_eps", r.bound_eps},
            {"bound_schi", r.bound_schi},
            {"finite_size_tol", r.finite_size_tol},
            {"pass", r.pass},
            {"agree", r.agree}};
}

nlohmann::json certificate_row(const AlmostPeriodReport& r) {
    return {{"t", r.t_position},
            {"t_star", r.t_star},
            {"m", r.t.u.m},
            {"n", r.t.u.n},
            {"alpha", r.alpha},
            {"truncated_norm", r.truncated_norm},
            {"head_cap", r.head_cap},
            {"tail_bound", r.tail_bound},
            {"paper_bound", r.paper_bound},
            {"Y", r.Y},
            {"K", {r.k_lo, r.k_hi}},
            {"hypothesis_ok", r.hypothesis_ok},
            {"pass", r.pass}};
}

}  // namespace

void write_points_csv(std::ostream& os, const RunConfig& cfg, const EnumerationResult& res) {
    csv_header(os, cfg);
    os << "# guard_hits=" << res.guard_hits << "\n";
    os << "position,star,m,n\n";
    for (const auto& p : res.points)
        os << fmt17(p.position) << "," << fmt17(p.star) << "," << p.q.m << "," << p.q.n << "\n";
}

void write_points_json(std::ostream& os, const RunConfig& cfg, const EnumerationResult& res) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : res.points)
        rows.push_back({{"position", p.position}, {"star", p.star}, {"m", p.q.m}, {"n", p.q.n}});
    nlohmann::json j{{"config", config_json(cfg)},
                     {"guard_hits", res.guard_hits},
                     {"points", rows}};
    os << j.dump(2) << "\n";
}

void write_bragg_csv(std::ostream& os, const RunConfig& cfg, const BraggVerification& v) {
    csv_header(os, cfg);
    os << "# intensity_origin=" << fmt17(v.intensity_origin)
       << "\n# intensity_origin_autocorr=" << fmt17(v.intensity_origin_ac)
       << "\n# finite_size_tol=" << fmt17(v.finite_size_tol)
       << "\n# agreement_tol=" << fmt17(v.agreement_tol) << "\n# vacuous="
       << (v.vacuous ? "true" : "false") << "\n";
    os << "k,k_star,intensity,bound,pass,n,method,intensity_autocorr,bound_eps,bound_schi,agree\n";
    for (const auto& r : v.reports) {
        os << fmt17(r.k) << "," << fmt17(r.k_star) << "," << fmt17(r.intensity) << ","
           << fmt17(r.bound) << "," << (r.pass ? "true" : "false") << "," << fmt17(v.n) << ","
           << method_name(BraggMethod::amplitude_sq) << "," << fmt17(r.intensity_autocorr) << ","
           << fmt17(r.bound_eps) << "," << fmt17(r.bound_schi) << ","
           << (r.agree ? "true" : "false") << "\n";
    }
}

void write_bragg_json(std::ostream& os, const RunConfig& cfg, const BraggVerification& v) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : v.reports) rows.push_back(bragg_row(r));
    nlohmann::json j{{"config", config_json(cfg)},
                     {"n", v.n},
                     {"eps", v.eps},
                     {"intensity_origin", v.intensity_origin},
                     {"intensity_origin_autocorr", v.intensity_origin_ac},
                     {"finite_size_tol", v.finite_size_tol},
                     {"agreement_tol", v.agreement_tol},
                     {"vacuous", v.vacuous},
                     {"all_pass", v.all_pass()},
                     {"reports", rows}};
    os << j.dump(2) << "\n";
}

void write_certificates_csv(std::ostream& os, const RunConfig& cfg,
                            const std::vector<AlmostPeriodReport>& reports) {
    csv_header(os, cfg);
    os << "t,t_star,alpha,truncated_norm,head_cap,tail_bound,paper_bound,pass,Y,k_lo,k_hi\n";
    for (const auto& r : reports) {
        os << fmt17(r.t_position) << "," << fmt17(r.t_star) << "," << fmt17(r.alpha) << ","
           << fmt17(r.truncated_norm) << "," << fmt17(r.head_cap) << "," << fmt17(r.tail_bound)
           << "," << fmt17(r.paper_bound) << "," << (r.pass ? "true" : "false") << ","
           << fmt17(r.Y) << "," << fmt17(r.k_lo) << "," << fmt17(r.k_hi) << "\n";
    }
}

void write_certificates_json(std::ostream& os, const RunConfig& cfg,
                             const std::vector<AlmostPeriodReport>& reports) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : reports) rows.push_back(certificate_row(r));
    nlohmann::json j{{"config", config_json(cfg)}, {"certificates", rows}};
    os << j.dump(2) << "\n";
}

void write_ping_csv(std::ostream& os, const RunConfig& cfg, const PingIdentityReport& rep) {
    csv_header(os, cfg);
    os << "max_abs_error,worst_k,nu_mass,density,truncation_budget,atoms_checked,tol,pass\n";
    os << fmt17(rep.max_abs_error) << "," << fmt17(rep.worst_k) << "," << fmt17(rep.nu_mass)
       << "," << fmt17(rep.density) << "," << fmt17(rep.truncation_budget) << ","
       << rep.atoms_checked << "," << fmt17(rep.tol) << "," << (rep.pass ? "true" : "false")
       << "\n";
}

void write_ping_json(std::ostream& os, const RunConfig& cfg, const PingIdentityReport& rep) {
    nlohmann::json j{{"config", config_json(cfg)},
                     {"max_abs_error", rep.max_abs_error},
                     {"worst_k", rep.worst_k},
                     {"nu_mass", rep.nu_mass},
                     {"density", rep.density},
                     {"truncation_budget", rep.truncation_budget},
                     {"atoms_checked", rep.atoms_checked},
                     {"tol", rep.tol},
                     {"pass", rep.pass}};
    os << j.dump(2) << "\n";
}

void write_figure1_csv(std::ostream& os, const RunConfig& cfg,
                       const std::vector<Figure1Row>& rows) {
    csv_header(os, cfg);
    os << "k,lower_bound_fraction\n";
    for (const auto& r : rows) os << fmt17(r.k) << "," << fmt17(r.lower_bound_fraction) << "\n";
}

void write_figure1_json(std::ostream& os, const RunConfig& cfg,
                        const std::vector<Figure1Row>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"k", r.k}, {"k_star", r.k_star},
                       {"lower_bound_fraction", r.lower_bound_fraction}});
    nlohmann::json j{{"config", config_json(cfg)}, {"rows", arr}};
    os << j.dump(2) << "\n";
}

void write_periodogram_csv(std::ostream& os, const RunConfig& cfg,
                           const std::vector<PeriodogramPoint>& rows) {
    csv_header(os, cfg);
    os << "k,density,samples_used\n";
    for (const auto& r : rows)
        os << fmt17(r.k) << "," << fmt17(r.density) << "," << r.samples_used << "\n";
}

}  // namespace fibdiff
