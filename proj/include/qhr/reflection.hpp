#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qhr/complex_matrix.hpp"

namespace qhr {

inline constexpr double pi = std::numbers::pi;

/// Tolerance on | ||v|| - 1 | accepted by HouseholderFactor.
inline constexpr double unit_norm_tol = 1e-12;

/// Fold an angle into the canonical range (-pi, pi].
inline double fold_angle(double x) {
    double r = std::remainder(x, 2.0 * pi);
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

/// A generalized quantum Householder reflection I + (e^{i phi} - 1)|v><v|.
/// phi = pi is the standard reflection I - 2|v><v|; phi = 0 is the identity
/// ("skip" factor). The vector must arrive normalized: off-unit vectors are
/// rejected rather than renormalized, so upstream construction bugs surface.
class HouseholderFactor {
  public:
    HouseholderFactor(CVector v, double phi) : v_(std::move(v)), phi_(fold_angle(phi)) {
        if (!std::isfinite(phi)) throw std::invalid_argument("HouseholderFactor: phi must be finite");
        const double n = v_.norm();
        if (std::abs(n - 1.0) > unit_norm_tol)
            throw std::invalid_argument("HouseholderFactor: vector is not normalized");
    }

    const CVector& v() const { return v_; }
    double phi() const { return phi_; }
    std::size_t dim() const { return v_.dim(); }

    bool is_identity() const { return phi_ == 0.0; }

    /// Identity "skip" factor on the given coordinate.
    static HouseholderFactor skip(std::size_t dim, std::size_t coord) {
        return HouseholderFactor(CVector::basis(dim, coord), 0.0);
    }

  private:
    CVector v_;
    double phi_;
};

/// Diagonal gate diag(e^{i phi_1}, ..., e^{i phi_N}).
struct PhaseGate {
    std::vector<double> phases;
};

inline CMatrix reflection_matrix(const HouseholderFactor& f) {
    const std::size_t n = f.dim();
    const Complex c = std::polar(1.0, f.phi()) - 1.0;
    CMatrix m = CMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) += c * f.v()[i] * std::conj(f.v()[j]);
    return m;
}

/// M(v; phi) x in O(N): x + (e^{i phi}-1) <v|x> v.
inline CVector apply_reflection(const HouseholderFactor& f, const CVector& x) {
    detail::require(x.dim() == f.dim(), "apply_reflection: dimension mismatch");
    const Complex c = (std::polar(1.0, f.phi()) - 1.0) * inner(f.v(), x);
    CVector y = x;
    for (std::size_t i = 0; i < y.dim(); ++i) y[i] += c * f.v()[i];
    return y;
}

inline CMatrix phase_gate_matrix(const PhaseGate& g) {
    detail::require(!g.phases.empty(), "phase_gate_matrix: empty gate");
    CMatrix m(g.phases.size(), g.phases.size());
    for (std::size_t i = 0; i < g.phases.size(); ++i) m(i, i) = std::polar(1.0, g.phases[i]);
    return m;
}

}  // namespace qhr
