#pragma once

// Finite weighted Dirac combs: point sets, autocorrelations and diffraction
// approximants all live here. Atoms carry optional exact lattice tags so that
// translation and difference-set grouping are decided in integer arithmetic.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "fibdiff/quadfield.hpp"

namespace fibdiff {

struct ExactTag {
    enum class Kind : std::uint8_t { none = 0, direct = 1, dual = 2 };
    Kind kind = Kind::none;
    QuadInt q{};  // direct: the element m + n*tau; dual: the numerator u

    ExactTag() = default;
    static ExactTag direct(QuadInt x) { return {Kind::direct, x}; }
    static ExactTag dual(DualPoint p) { return {Kind::dual, p.u}; }
    bool has_value() const { return kind != Kind::none; }
    double position() const;
    friend bool operator==(const ExactTag& a, const ExactTag& b) {
        return a.kind == b.kind && a.q == b.q;
    }
private:
    ExactTag(Kind k, QuadInt q_) : kind(k), q(q_) {}
};

struct Atom {
    double position = 0.0;
    std::complex<double> weight{0.0, 0.0};
    ExactTag tag{};
};

inline constexpr double kMergeTol = 1e-12;

// Sorted comb with coincident positions merged by weight addition. Atoms with
// equal exact tags merge exactly; untagged atoms merge within kMergeTol and
// absorb into a tagged atom at the same position. Distinct tags never merge.
class WeightedComb {
  public:
    WeightedComb() = default;
    static WeightedComb from_atoms(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    double total_abs() const;                       // |mu|(R)
    std::complex<double> weight_at(double position, double tol = kMergeTol) const;

  private:
    std::vector<Atom> atoms_;
};

struct AutocorrEstimate {
    WeightedComb comb;   // atoms at z in Lambda - Lambda, weights eta_n(z)
    double n = 0.0;      // averaging radius, A_n = [-n, n]
    double density = 0.0;  // eta_n(0)
};

// eta_n(z) = (1/2n) sum_{x-y=z} c_x conj(c_y) over all ordered pairs of atoms
// in [-n, n]. Differences are grouped by exact tag when every atom carries a
// direct tag, otherwise by a floating key. Throws if an atom lies outside
// [-n, n] or if there are more than 2e5 atoms.
AutocorrEstimate autocorrelation(const std::vector<Atom>& points, double n);

struct WindowNorm {
    double k_lo = 0.0, k_hi = 0.0;
    double value = 0.0;
    double attained_at = 0.0;  // translate t with the window [t+k_lo, t+k_hi]
};

// sup over translates t of sum of |weights| in the closed window
// [t + k_lo, t + k_hi]. Exact for finite combs: the supremum is attained with
// an atom at the left window edge.
WindowNorm window_norm(const WeightedComb& mu, double k_lo, double k_hi);

// T_t mu - mu. When `exact_shift` is provided the shifted atoms keep exact
// tags (tag + shift) and re-alignment with the original support is exact.
WeightedComb translate_diff(const WeightedComb& mu, double t,
                            std::optional<ExactTag> exact_shift = std::nullopt);

// Serialization: CSV columns position,re_weight,im_weight[,kind,m,n] and a
// JSON mirror of the same records.
void comb_to_csv(const WeightedComb& comb, std::ostream& os);
WeightedComb comb_from_csv(std::istream& is);
std::string comb_to_json(const WeightedComb& comb);
WeightedComb comb_from_json(const std::string& text);

}  // namespace fibdiff
