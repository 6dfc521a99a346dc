#include "fibdiff/measures.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace fibdiff {

double ExactTag::position() const {
    switch (kind) {
        case Kind::direct: return embed(q);
        case Kind::dual: return embed(q) / kSqrt5;
        default: throw std::logic_error("ExactTag::position on empty tag");
    }
}

namespace {

bool tag_less(const ExactTag& a, const ExactTag& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.q.m != b.q.m) return a.q.m < b.q.m;
    return a.q.n < b.q.n;
}

bool atom_order(const Atom& x, const Atom& y) {
    if (x.position != y.position) return x.position < y.position;
    return tag_less(x.tag, y.tag);
}

}  // namespace

WeightedComb WeightedComb::from_atoms(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(), atom_order);
    WeightedComb out;
    out.atoms_.reserve(atoms.size());
    std::size_t i = 0;
    while (i < atoms.size()) {
        // proximity chain: consecutive atoms within the merge tolerance
        std::size_t j = i + 1;
        while (j < atoms.size() && atoms[j].position - atoms[j - 1].position <= kMergeTol) ++j;
        if (j == i + 1) {
            if (std::abs(atoms[i].weight) != 0.0) out.atoms_.push_back(atoms[i]);
            i = j;
            continue;
        }
        // within the chain: bucket tagged atoms by tag, pool untagged ones
        std::vector<Atom> tagged;
        Atom untagged;
        bool have_untagged = false;
        for (std::size_t k = i; k < j; ++k) {
            const Atom& a = atoms[k];
            if (a.tag.has_value()) {
                bool found = false;
                for (auto& t : tagged)
                    if (t.tag == a.tag) {
                        t.weight += a.weight;
                        found = true;
                        break;
                    }
                if (!found) tagged.push_back(a);
            } else {
                if (!have_untagged) {
                    untagged = a;
                    have_untagged = true;
                } else {
                    untagged.weight += a.weight;
                }
            }
        }
        // an untagged pool at the same position is absorbed by a unique tagged atom
        if (have_untagged && tagged.size() == 1 &&
            std::abs(untagged.position - tagged[0].position) <= kMergeTol) {
            tagged[0].weight += untagged.weight;
            have_untagged = false;
        }
        if (have_untagged) tagged.push_back(untagged);
        std::sort(tagged.begin(), tagged.end(), atom_order);
        for (auto& t : tagged)
            if (std::abs(t.weight) != 0.0) out.atoms_.push_back(t);
        i = j;
    }
    return out;
}

double WeightedComb::total_abs() const {
    double s = 0.0;
    for (const auto& a : atoms_) s += std::abs(a.weight);
    return s;
}

std::complex<double> WeightedComb::weight_at(double position, double tol) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), position - tol,
                               [](const Atom& a, double v) { return a.position < v; });
    std::complex<double> w{0.0, 0.0};
    for (; it != atoms_.end() && it->position <= position + tol; ++it) w += it->weight;
    return w;
}

AutocorrEstimate autocorrelation(const std::vector<Atom>& points, double n) {
    if (!(n > 0)) throw std::invalid_argument("autocorrelation: n must be positive");
    if (points.size() > 200000)
        throw std::invalid_argument("autocorrelation: more than 2e5 atoms");
    for (const auto& a : points)
        if (a.position < -n || a.position > n)
            throw std::invalid_argument("autocorrelation: atom outside [-n, n]");

    bool all_direct = true;
    for (const auto& a : points)
        if (a.tag.kind != ExactTag::Kind::direct) {
            all_direct = false;
            break;
        }

    const double inv2n = 1.0 / (2.0 * n);
    std::vector<Atom> diff_atoms;

    if (all_direct) {
        // group differences exactly by (dm, dn)
        std::vector<Atom> sorted = points;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Atom& a, const Atom& b) { return a.position < b.position; });
        std::unordered_map<std::uint64_t, std::complex<double>> acc;
        acc.reserve(sorted.size() * 8);
        auto key_of = [](std::int64_t dm, std::int64_t dn) {
            if (dm <= -0x40000000LL || dm >= 0x40000000LL || dn <= -0x40000000LL ||
                dn >= 0x40000000LL)
                throw OverflowError("autocorrelation: difference tag out of key range");
            auto um = static_cast<std::uint64_t>(dm + 0x40000000LL);
            auto un = static_cast<std::uint64_t>(dn + 0x40000000LL);
            return (um << 32) | un;
        };
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i].tag == sorted[i - 1].tag)
                throw std::invalid_argument("autocorrelation: duplicate point tags");
        double zero_w = 0.0;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            zero_w += std::norm(sorted[i].weight);
            for (std::size_t j = i + 1; j < sorted.size(); ++j) {
                std::int64_t dm = sorted[j].tag.q.m - sorted[i].tag.q.m;
                std::int64_t dn = sorted[j].tag.q.n - sorted[i].tag.q.n;
                acc[key_of(dm, dn)] += sorted[j].weight * std::conj(sorted[i].weight);
            }
        }
        diff_atoms.reserve(2 * acc.size() + 1);
        for (const auto& [key, w] : acc) {
            auto dm = static_cast<std::int64_t>(key >> 32) - 0x40000000LL;
            auto dn = static_cast<std::int64_t>(key & 0xffffffffULL) - 0x40000000LL;
            QuadInt z{dm, dn};
            std::complex<double> eta = w * inv2n;
            diff_atoms.push_back({embed(z), eta, ExactTag::direct(z)});
            diff_atoms.push_back({embed(-z), std::conj(eta), ExactTag::direct(-z)});
        }
        diff_atoms.push_back({0.0, {zero_w * inv2n, 0.0}, ExactTag::direct(QuadInt{0, 0})});
    } else {
        // float-keyed grouping for untagged inputs (small combs only)
        std::unordered_map<std::int64_t, std::complex<double>> acc;
        double zero_w = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            zero_w += std::norm(points[i].weight);
            for (std::size_t j = 0; j < points.size(); ++j) {
                if (i == j) continue;
                double z = points[j].position - points[i].position;
                auto key = std::llround(z * 1e10);
                if (key == 0 && z != 0.0) key = z > 0 ? 1 : -1;
                acc[key] += points[j].weight * std::conj(points[i].weight);
            }
        }
        for (const auto& [key, w] : acc)
            diff_atoms.push_back({static_cast<double>(key) * 1e-10, w * inv2n, ExactTag{}});
        diff_atoms.push_back({0.0, {zero_w * inv2n, 0.0}, ExactTag{}});
    }

    AutocorrEstimate est;
    est.comb = WeightedComb::from_atoms(std::move(diff_atoms));
    est.n = n;
    est.density = est.comb.weight_at(0.0).real();
    return est;
}

WindowNorm window_norm(const WeightedComb& mu, double k_lo, double k_hi) {
    if (!(k_hi > k_lo)) throw std::invalid_argument("window_norm: window must have positive length");
    WindowNorm out{k_lo, k_hi, 0.0, 0.0};
    const auto& atoms = mu.atoms();
    if (atoms.empty()) return out;
    const double len = k_hi - k_lo;
    // sliding closed window with its left edge at each atom
    std::size_t j = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0) sum -= std::abs(atoms[i - 1].weight);
        while (j < atoms.size() && atoms[j].position <= atoms[i].position + len) {
            sum += std::abs(atoms[j].weight);
            ++j;
        }
        if (sum > out.value) {
            out.value = sum;
            out.attained_at = atoms[i].position - k_lo;
        }
    }
    return out;
}

WeightedComb translate_diff(const WeightedComb& mu, double t,
                            std::optional<ExactTag> exact_shift) {
    if (exact_shift && !exact_shift->has_value())
        throw std::invalid_argument("translate_diff: empty exact shift tag");
    std::vector<Atom> atoms;
    atoms.reserve(2 * mu.size());
    for (const auto& a : mu.atoms()) {
        Atom shifted = a;
        if (exact_shift && a.tag.has_value() && a.tag.kind == exact_shift->kind) {
            QuadInt moved = a.tag.q + exact_shift->q;
            shifted.tag = a.tag.kind == ExactTag::Kind::direct
                              ? ExactTag::direct(moved)
                              : ExactTag::dual(DualPoint(moved));
            shifted.position = shifted.tag.position();
        } else {
            shifted.tag = ExactTag{};
            shifted.position = a.position + t;
        }
        atoms.push_back(shifted);
        Atom neg = a;
        neg.weight = -neg.weight;
        atoms.push_back(neg);
    }
    return WeightedComb::from_atoms(std::move(atoms));
}

namespace {

const char* kind_name(ExactTag::Kind k) {
    switch (k) {
        case ExactTag::Kind::direct: return "direct";
        case ExactTag::Kind::dual: return "dual";
        default: return "none";
    }
}

ExactTag tag_from(const std::string& kind, std::int64_t m, std::int64_t n) {
    if (kind == "direct") return ExactTag::direct(QuadInt{m, n});
    if (kind == "dual") return ExactTag::dual(DualPoint(QuadInt{m, n}));
    return ExactTag{};
}

}  // namespace

void comb_to_csv(const WeightedComb& comb, std::ostream& os) {
    os << "position,re_weight,im_weight,kind,m,n\n";
    char buf[140];
    for (const auto& a : comb.atoms()) {
        if (a.tag.has_value()) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%s,%lld,%lld\n", a.position,
                          a.weight.real(), a.weight.imag(), kind_name(a.tag.kind),
                          static_cast<long long>(a.tag.q.m), static_cast<long long>(a.tag.q.n));
        } else {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,none,,\n", a.position,
                          a.weight.real(), a.weight.imag());
        }
        os << buf;
    }
}

WeightedComb comb_from_csv(std::istream& is) {
    std::vector<Atom> atoms;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (first) {  // header
            first = false;
            if (line.rfind("position", 0) == 0) continue;
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() < 3) throw std::invalid_argument("comb_from_csv: bad row: " + line);
        Atom a;
        a.position = std::stod(fields[0]);
        a.weight = {std::stod(fields[1]), std::stod(fields[2])};
        if (fields.size() >= 6 && fields[3] != "none" && !fields[3].empty())
            a.tag = tag_from(fields[3], std::stoll(fields[4]), std::stoll(fields[5]));
        if (a.tag.has_value()) a.position = a.tag.position();
        atoms.push_back(a);
    }
    return WeightedComb::from_atoms(std::move(atoms));
}

std::string comb_to_json(const WeightedComb& comb) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& a : comb.atoms()) {
        nlohmann::json r{{"position", a.position},
                         {"re_weight", a.weight.real()},
                         {"im_weight", a.weight.imag()}};
        if (a.tag.has_value()) {
            r["kind"] = kind_name(a.tag.kind);
            r["m"] = a.tag.q.m;
            r["n"] = a.tag.q.n;
        }
        rows.push_back(std::move(r));
    }
    return nlohmann::json{{"atoms", rows}}.dump();
}

WeightedComb comb_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::vector<Atom> atoms;
    for (const auto& r : j.at("atoms")) {
        Atom a;
        a.position = r.at("position").get<double>();
        a.weight = {r.at("re_weight").get<double>(), r.at("im_weight").get<double>()};
        if (r.contains("kind"))
            a.tag = tag_from(r["kind"].get<std::string>(), r["m"].get<std::int64_t>(),
                             r["n"].get<std::int64_t>());
        if (a.tag.has_value()) a.position = a.tag.position();
        atoms.push_back(a);
    }
    return WeightedComb::from_atoms(std::move(atoms));
}

}  // namespace fibdiff
