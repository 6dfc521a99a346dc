#pragma once

// Compactly supported piecewise polynomials with breakpoints and coefficients
// in Q(tau), convolved symbolically with indicator boxes. Plateau, support and
// integral claims about the functions built here are exact identities, not
// float assertions.

#include <utility>
#include <vector>

#include "fibdiff/quadfield.hpp"

namespace fibdiff {

class PiecewisePoly {
  public:
    PiecewisePoly() = default;

    // indicator of [lo, hi] (value 1 inside, 0 outside)
    static PiecewisePoly box(const QuadRat& lo, const QuadRat& hi);

    std::size_t piece_count() const { return pieces_.size(); }
    const std::vector<QuadRat>& breakpoints() const { return breaks_; }
    // coefficients of piece i in powers of (x - breakpoints()[i])
    const std::vector<QuadRat>& piece(std::size_t i) const { return pieces_[i]; }

    bool empty() const { return pieces_.empty(); }
    std::pair<QuadRat, QuadRat> support() const;
    int degree() const;

    double operator()(double x) const;
    QuadRat eval_exact(const QuadRat& x) const;

    // convolution with the indicator of [-halfwidth, halfwidth]
    PiecewisePoly convolve_box(const QuadRat& halfwidth) const;
    PiecewisePoly scaled(const QuadRat& c) const;

    QuadRat integral() const;
    QuadRat integral_of_square() const;

    // exact checks
    bool is_constant_on(const QuadRat& value, const QuadRat& lo, const QuadRat& hi) const;
    bool is_continuous() const;

  private:
    // breaks_ has pieces_.size() + 1 entries; zero outside [first, last]
    std::vector<QuadRat> breaks_;
    std::vector<std::vector<QuadRat>> pieces_;
    // cached float breakpoints for evaluation
    std::vector<double> fbreaks_;

    void cache_floats();
};

}  // namespace fibdiff
