#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fibdiff/pingpong.hpp"
#include "fibdiff/report_io.hpp"

namespace py = pybind11;
using namespace fibdiff;

namespace {

Window window_from(const std::string& spec, double lo, double hi, bool lo_closed,
                   bool hi_closed) {
    if (spec == "fib") return Window::fibonacci();
    if (spec == "numeric") return Window(lo, hi, lo_closed, hi_closed);
    throw std::invalid_argument("window spec must be 'fib' or 'numeric'");
}

py::dict report_dict(const AlmostPeriodReport& r) {
    py::dict d;
    d["t"] = r.t_position;
    d["t_star"] = r.t_star;
    d["alpha"] = r.alpha;
    d["truncated_norm"] = r.truncated_norm;
    d["head_cap"] = r.head_cap;
    d["tail_bound"] = r.tail_bound;
    d["paper_bound"] = r.paper_bound;
    d["pass"] = r.pass;
    return d;
}

}  // namespace

PYBIND11_MODULE(_fibdiff, m) {
    m.doc() = "Fibonacci cut-and-project diffraction toolkit";

    m.attr("GOLDEN") = kGolden;
    m.attr("SQRT5") = kSqrt5;

    py::class_<QuadInt>(m, "QuadInt")
        .def(py::init<std::int64_t, std::int64_t>(), py::arg("m"), py::arg("n"))
        .def_readonly("m", &QuadInt::m)
        .def_readonly("n", &QuadInt::n)
        .def("embed", [](QuadInt q) { return embed(q); })
        .def("star", [](QuadInt q) { return star(q); })
        .def("__mul__", [](QuadInt a, QuadInt b) { return a * b; })
        .def("__add__", [](QuadInt a, QuadInt b) { return a + b; })
        .def("__sub__", [](QuadInt a, QuadInt b) { return a - b; })
        .def("__eq__", [](QuadInt a, QuadInt b) { return a == b; })
        .def("__repr__", [](QuadInt q) { return q.str(); });

    py::class_<DualPoint>(m, "DualPoint")
        .def(py::init([](std::int64_t m, std::int64_t n) { return DualPoint::from_mn(m, n); }),
             py::arg("m"), py::arg("n"))
        .def_property_readonly("value", [](DualPoint p) { return dual_value(p); })
        .def_property_readonly("star", [](DualPoint p) { return dual_star(p); })
        .def_property_readonly("coord_m", &DualPoint::coord_m)
        .def_property_readonly("coord_n", &DualPoint::coord_n);

    m.def(
        "enumerate_model_set",
        [](const std::string& side, const std::string& window, double x_min, double x_max,
           double lo, double hi, bool lo_closed, bool hi_closed) {
            ModelSetQuery q{side == "dual" ? Side::dual : Side::direct,
                            window_from(window, lo, hi, lo_closed, hi_closed), x_min, x_max};
            auto res = enumerate_model_set(q);
            std::vector<py::tuple> out;
            out.reserve(res.points.size());
            for (const auto& p : res.points)
                out.push_back(py::make_tuple(p.position, p.star, p.q.m, p.q.n));
            return out;
        },
        py::arg("side"), py::arg("window"), py::arg("x_min"), py::arg("x_max"),
        py::arg("lo") = 0.0, py::arg("hi") = 0.0, py::arg("lo_closed") = true,
        py::arg("hi_closed") = true,
        "Points of the (dual) model set: a list of (position, star, m, n).");

    m.def("max_gap", &max_gap, py::arg("sorted_positions"), py::arg("a"), py::arg("b"));
    m.def("s_chi", &s_chi, py::arg("chi_star"), py::arg("window_halfwidth") = kGolden);
    m.def(
        "b_epsilon",
        [](double eps, double x_min, double x_max) {
            auto pts = b_epsilon({eps, kGolden}, x_min, x_max);
            std::vector<std::pair<double, double>> out;
            out.reserve(pts.size());
            for (const auto& p : pts) out.emplace_back(p.position, p.star);
            return out;
        },
        py::arg("eps"), py::arg("x_min"), py::arg("x_max"));
    m.def("check_no_integer_in", &check_no_integer_in, py::arg("m"));

    m.def(
        "fib_points",
        [](double n) {
            auto atoms = fib_points(n);
            std::vector<double> out;
            out.reserve(atoms.size());
            for (const auto& a : atoms) out.push_back(a.position);
            return out;
        },
        py::arg("n"), "Positions of the Fibonacci model set in [-n, n].");

    m.def(
        "autocorrelation_density",
        [](const std::string& subset, double n) {
            auto pts = SubsetSpec::parse(subset).materialize(n);
            return autocorrelation(pts, n).density;
        },
        py::arg("subset"), py::arg("n"));

    m.def(
        "bragg_intensity",
        [](const std::string& subset, double n, double k, const std::string& method) {
            auto pts = SubsetSpec::parse(subset).materialize(n);
            if (method == "amplitude_sq")
                return bragg_intensity_amplitude(pts, n, k).intensity;
            if (method == "autocorr_sum")
                return bragg_intensity_autocorr(autocorrelation(pts, n), k).intensity;
            throw std::invalid_argument("method must be amplitude_sq or autocorr_sum");
        },
        py::arg("subset"), py::arg("n"), py::arg("k"), py::arg("method") = "amplitude_sq");

    m.def(
        "verify_bragg_lower_bounds",
        [](const std::string& subset, double n, double eps, double x_min, double x_max) {
            auto pts = SubsetSpec::parse(subset).materialize(n);
            auto v = verify_bragg_lower_bounds(pts, n, eps, x_min, x_max);
            py::dict d;
            d["all_pass"] = v.all_pass();
            d["vacuous"] = v.vacuous;
            d["intensity_origin"] = v.intensity_origin;
            d["peaks"] = v.reports.size();
            std::vector<py::dict> rows;
            for (const auto& r : v.reports) {
                py::dict row;
                row["k"] = r.k;
                row["k_star"] = r.k_star;
                row["intensity"] = r.intensity;
                row["bound"] = r.bound;
                row["pass"] = r.pass;
                rows.push_back(row);
            }
            d["reports"] = rows;
            return d;
        },
        py::arg("subset"), py::arg("n"), py::arg("eps"), py::arg("x_min"), py::arg("x_max"));

    m.def("h_value", [](double x) { return build_h()(x); }, py::arg("x"));
    m.def("h_hat", &h_hat, py::arg("k"));
    m.def("pingpong_weight", &pingpong_weight, py::arg("u"));
    m.def("omega_prefactor", &omega_prefactor);

    m.def(
        "almost_period_certificates",
        [](double alpha, int count, std::uint64_t seed, double Y) {
            AlmostPeriodOptions opts;
            opts.Y = Y;
            std::vector<py::dict> out;
            for (const auto& t : sample_dual_points(alpha, count, seed))
                out.push_back(report_dict(certify_almost_period(t, alpha, opts)));
            return out;
        },
        py::arg("alpha"), py::arg("count") = 5, py::arg("seed") = 1, py::arg("Y") = 50.0);

    m.def(
        "ping_identity_check",
        [](double n, double Y, double k_lo, double k_hi) {
            auto pts = fib_points(n);
            auto rep = ping_identity_check(pts, n, k_lo, k_hi, Y);
            py::dict d;
            d["max_abs_error"] = rep.max_abs_error;
            d["nu_mass"] = rep.nu_mass;
            d["truncation_budget"] = rep.truncation_budget;
            d["atoms_checked"] = rep.atoms_checked;
            d["pass"] = rep.pass;
            return d;
        },
        py::arg("n"), py::arg("Y") = 50.0, py::arg("k_lo") = 0.0, py::arg("k_hi") = 1.0);

    m.def(
        "figure1_data",
        [](double x_min, double x_max) {
            auto rows = figure1_data(x_min, x_max);
            std::vector<std::pair<double, double>> out;
            out.reserve(rows.size());
            for (const auto& r : rows) out.emplace_back(r.k, r.lower_bound_fraction);
            return out;
        },
        py::arg("x_min"), py::arg("x_max"));

    m.def("lattice_psf_error", &lattice_psf_error, py::arg("m_max") = 100000);
}
