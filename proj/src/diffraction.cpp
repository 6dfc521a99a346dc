#include "fibdiff/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

namespace fibdiff {

BraggEstimate bragg_intensity_amplitude(const std::vector<Atom>& points, double n, double k) {
    if (!(n > 0)) throw std::invalid_argument("bragg_intensity_amplitude: n must be positive");
    double re = 0.0, im = 0.0;
    for (const auto& a : points) {
        if (a.position < -n || a.position > n)
            throw std::invalid_argument("bragg_intensity_amplitude: atom outside [-n, n]");
        double phase = -2.0 * M_PI * k * a.position;
        double c = std::cos(phase), s = std::sin(phase);
        re += a.weight.real() * c - a.weight.imag() * s;
        im += a.weight.real() * s + a.weight.imag() * c;
    }
    double inv = 1.0 / (2.0 * n);
    re *= inv;
    im *= inv;
    BraggEstimate out;
    out.k = k;
    out.intensity = re * re + im * im;
    out.n = n;
    out.method = BraggMethod::amplitude_sq;
    return out;
}

BraggEstimate bragg_intensity_autocorr(const AutocorrEstimate& ac, double k, double sum_radius) {
    double n = ac.n;
    double r = sum_radius > 0 ? sum_radius : n;
    if (r > 2 * n) throw std::invalid_argument("bragg_intensity_autocorr: sum radius beyond 2n");
    double re = 0.0, im = 0.0;
    for (const auto& a : ac.comb.atoms()) {
        double z = a.position;
        if (z < -r || z > r) continue;
        double edge = (2.0 * n) / (2.0 * n - std::abs(z));  // undo the pair-count taper
        double phase = -2.0 * M_PI * k * z;
        double c = std::cos(phase), s = std::sin(phase);
        std::complex<double> w = a.weight * edge;
        re += w.real() * c - w.imag() * s;
        im += w.real() * s + w.imag() * c;
    }
    double inv = 1.0 / (2.0 * r);
    BraggEstimate out;
    out.k = k;
    out.intensity = re * inv;
    out.imag_residual = im * inv;
    out.n = n;
    out.method = BraggMethod::autocorr_sum;
    return out;
}

BraggVerification verify_bragg_lower_bounds(const std::vector<Atom>& points, double n, double eps,
                                            double x_min, double x_max, double tol_scale,
                                            double agree_scale) {
    BraggVerification out;
    out.n = n;
    out.eps = eps;

    auto ac = autocorrelation(points, n);
    out.intensity_origin = bragg_intensity_amplitude(points, n, 0.0).intensity;
    out.intensity_origin_ac = bragg_intensity_autocorr(ac, 0.0).intensity;
    double I = out.intensity_origin;
    if (!(I > 0.0)) {
        out.vacuous = true;  // no Bragg peak at the origin; nothing to verify
        return out;
    }
    double scale = std::sqrt(1e4 / n);
    out.finite_size_tol = tol_scale * I * scale;
    out.agreement_tol = agree_scale * scale;

    auto peaks = b_epsilon({eps, kGolden}, x_min, x_max);
    out.reports.reserve(peaks.size());
    for (const auto& pk : peaks) {
        LowerBoundReport r;
        r.k = pk.position;
        r.k_star = pk.star;
        r.k_point = pk.p;
        r.intensity = bragg_intensity_amplitude(points, n, pk.position).intensity;
        r.intensity_autocorr = bragg_intensity_autocorr(ac, pk.position).intensity;
        r.bound = (1.0 - 2.0 * M_PI * std::abs(pk.star) * kGolden) * I;
        r.bound_eps = (1.0 - eps) * I;
        r.bound_schi = (1.0 - s_chi(pk.star, kGolden)) * I;
        r.finite_size_tol = out.finite_size_tol;
        r.pass = r.intensity >= r.bound - r.finite_size_tol &&
                 r.intensity_autocorr >= r.bound - r.finite_size_tol;
        r.agree = std::abs(r.intensity - r.intensity_autocorr) <= out.agreement_tol;
        out.reports.push_back(r);
    }
    return out;
}

std::vector<Figure1Row> figure1_data(double x_min, double x_max) {
    double radius = 1.0 / (2.0 * M_PI * kGolden);
    ModelSetQuery q{Side::dual, Window::closed(-radius, radius), x_min, x_max};
    auto res = enumerate_model_set(q);
    std::vector<Figure1Row> out;
    out.reserve(res.points.size());
    for (const auto& p : res.points) {
        double frac = 1.0 - 2.0 * M_PI * std::abs(p.star) * kGolden;
        if (frac > 0.0) out.push_back({p.position, p.star, frac});
    }
    return out;
}

std::vector<PeriodogramPoint> smoothed_periodogram(const std::vector<Atom>& points, double n,
                                                   const std::vector<double>& k_grid,
                                                   double bandwidth,
                                                   const PeriodogramOptions& opts) {
    if (!(bandwidth > 0)) throw std::invalid_argument("smoothed_periodogram: bandwidth <= 0");
    if (k_grid.empty()) return {};

    double k_lo = *std::min_element(k_grid.begin(), k_grid.end()) - 2 * bandwidth;
    double k_hi = *std::max_element(k_grid.begin(), k_grid.end()) + 2 * bandwidth;
    ModelSetQuery q{Side::dual, Window::closed(-opts.peak_mask_star, opts.peak_mask_star),
                    k_lo - 1.0, k_hi + 1.0};
    auto peaks = enumerate_model_set(q);

    // strong peaks get a mask comparable to the bandwidth; the dense faint
    // ones only need their Fejer core masked
    double narrow = opts.core_mask_scale / (2.0 * n);
    std::vector<std::pair<double, double>> masks;  // (position, radius)
    for (const auto& p : peaks.points) {
        double r = std::abs(p.star) <= opts.strong_peak_star ? 2.0 * bandwidth : narrow;
        masks.push_back({p.position, r});
    }
    std::sort(masks.begin(), masks.end());

    auto masked = [&](double k) {
        auto it = std::lower_bound(masks.begin(), masks.end(), std::make_pair(k - 1.0, 0.0));
        for (; it != masks.end() && it->first <= k + 1.0; ++it)
            if (std::abs(k - it->first) < it->second) return true;
        return false;
    };

    // grid k0 must keep clear of strong peaks by 2*bandwidth
    for (double k0 : k_grid)
        for (const auto& m : masks)
            if (m.second > narrow && std::abs(k0 - m.first) < 2.0 * bandwidth)
                throw std::invalid_argument(
                    "smoothed_periodogram: grid point within 2*bandwidth of a strong peak");

    std::vector<PeriodogramPoint> out;
    out.reserve(k_grid.size());
    const double delta = bandwidth / opts.samples_per_side;
    for (double k0 : k_grid) {
        double acc = 0.0;
        int used = 0;
        for (int j = -opts.samples_per_side; j <= opts.samples_per_side; ++j) {
            double k = k0 + j * delta;
            if (masked(k)) continue;
            // P_n(k) = 2n |amp|^2, the spectral density scale
            double amp2 = bragg_intensity_amplitude(points, n, k).intensity;
            acc += 2.0 * n * amp2;
            ++used;
        }
        out.push_back({k0, used > 0 ? acc / used : 0.0, used});
    }
    return out;
}

std::vector<Atom> fib_points(double n) {
    ModelSetQuery q{Side::direct, Window::fibonacci(), -n, n};
    auto res = enumerate_model_set(q);
    std::vector<Atom> out;
    out.reserve(res.points.size());
    for (const auto& p : res.points)
        out.push_back({p.position, {1.0, 0.0}, ExactTag::direct(p.q)});
    return out;
}

std::vector<Atom> bernoulli_thin(const std::vector<Atom>& points, double p, std::uint64_t seed) {
    if (!(p >= 0.0) || !(p <= 1.0))
        throw std::invalid_argument("bernoulli_thin: p must lie in [0,1]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Atom> out;
    out.reserve(points.size());
    for (const auto& a : points) {
        double roll = u(rng);
        if (roll < p) out.push_back(a);
    }
    return out;
}

std::vector<Atom> stride_thin(const std::vector<Atom>& points, std::int64_t k) {
    if (k <= 0) throw std::invalid_argument("stride_thin: k must be positive");
    std::vector<Atom> out;
    out.reserve(points.size() / k + 1);
    for (std::size_t i = 0; i < points.size(); i += static_cast<std::size_t>(k))
        out.push_back(points[i]);
    return out;
}

SubsetSpec SubsetSpec::parse(const std::string& text) {
    SubsetSpec s;
    if (text == "full") {
        s.kind = Kind::full;
        return s;
    }
    if (text == "empty") {
        s.kind = Kind::empty;
        return s;
    }
    if (text.rfind("file:", 0) == 0) {
        s.kind = Kind::file;
        s.path = text.substr(5);
        if (s.path.empty()) throw std::invalid_argument("subset spec: empty file path");
        return s;
    }
    if (text.rfind("bernoulli:", 0) == 0) {
        s.kind = Kind::bernoulli;
        bool have_p = false, have_seed = false;
        std::size_t pos = 10;
        while (pos < text.size()) {
            std::size_t next = text.find(':', pos);
            std::string part = text.substr(pos, next == std::string::npos ? next : next - pos);
            if (part.rfind("p=", 0) == 0) {
                s.p = std::stod(part.substr(2));
                have_p = true;
            } else if (part.rfind("seed=", 0) == 0) {
                s.seed = std::stoull(part.substr(5));
                have_seed = true;
            } else {
                throw std::invalid_argument("subset spec: unknown field '" + part + "'");
            }
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        if (!have_p || !have_seed)
            throw std::invalid_argument("subset spec: bernoulli needs p= and seed=");
        return s;
    }
    if (text.rfind("stride:k=", 0) == 0) {
        s.kind = Kind::stride;
        s.k = std::stoll(text.substr(9));
        if (s.k <= 0) throw std::invalid_argument("subset spec: stride k must be positive");
        return s;
    }
    throw std::invalid_argument("subset spec: cannot parse '" + text + "'");
}

std::vector<Atom> SubsetSpec::materialize(double n) const {
    switch (kind) {
        case Kind::full: return fib_points(n);
        case Kind::empty: return {};
        case Kind::bernoulli: return bernoulli_thin(fib_points(n), p, seed);
        case Kind::stride: return stride_thin(fib_points(n), k);
        case Kind::file: {
            std::ifstream in(path);
            if (!in) throw std::invalid_argument("subset spec: cannot open " + path);
            auto comb = comb_from_csv(in);
            return comb.atoms();
        }
    }
    return {};
}

std::string SubsetSpec::describe() const {
    switch (kind) {
        case Kind::full: return "full";
        case Kind::empty: return "empty";
        case Kind::bernoulli: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "bernoulli:p=%g:seed=%llu", p,
                          static_cast<unsigned long long>(seed));
            return buf;
        }
        case Kind::stride: return "stride:k=" + std::to_string(k);
        case Kind::file: return "file:" + path;
    }
    return "?";
}

}  // namespace fibdiff
