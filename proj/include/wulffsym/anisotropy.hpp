#pragma once

#include <string>
#include <string_view>

#include "wulffsym/types.hpp"

namespace wulffsym {

enum class NormFamily { euclidean, ellipsoid, regularized_p };

[[nodiscard]] std::string to_string(NormFamily family);
[[nodiscard]] NormFamily parse_norm_family(std::string_view name);

/// Value, gradient and Hessian of a norm at a nonzero argument.
struct NormJet {
    double value = 0.0;
    Vector gradient;
    SquareMatrix hessian;
};

/// Value, gradient and Hessian of the polar norm F^o at a nonzero point.
struct DualJet {
    double value = 0.0;
    Vector gradient;
    SquareMatrix hessian;
};

/// Volume of the Euclidean unit ball in R^n.
[[nodiscard]] double unit_ball_volume(int n);

/// A strongly convex norm F on R^n drawn from a closed set of families, each
/// with analytic C^2 jets away from the origin:
///
///   euclidean      F(xi) = |xi|
///   ellipsoid      F(xi) = sqrt(xi^T M xi), M symmetric positive definite
///   regularized_p  F(xi) = (sum_i (xi_i^2 + eps |xi|^2)^{p/2})^{1/p}
///
/// The polar norm is F^o(x) = sup <xi, x> / F(xi). Values are immutable and
/// safe to share across threads.
class Norm {
public:
    static Norm euclidean(int n);
    static Norm ellipsoid(const SquareMatrix& m);
    static Norm regularized_p(int n, double p, double epsilon = 1e-2);

    [[nodiscard]] NormFamily family() const noexcept { return family_; }
    [[nodiscard]] int dimension() const noexcept { return n_; }
    [[nodiscard]] const SquareMatrix& matrix() const noexcept { return m_; }
    [[nodiscard]] double exponent() const noexcept { return p_; }
    [[nodiscard]] double smoothing() const noexcept { return eps_; }
    [[nodiscard]] bool is_euclidean() const noexcept { return family_ == NormFamily::euclidean; }

    [[nodiscard]] double value(const Vector& xi) const;
    /// F, grad F and Hess F at xi != 0 (DomainError at the origin).
    [[nodiscard]] NormJet eval_jet(const Vector& xi) const;
    /// Hessian of F^2/2 at xi != 0: grad F grad F^T + F Hess F.
    [[nodiscard]] SquareMatrix half_square_hessian(const Vector& xi) const;

    [[nodiscard]] double dual_value(const Vector& x) const;
    /// F^o, grad F^o and Hess F^o at x != 0. Closed forms for euclidean and
    /// ellipsoid; for regularized_p the maximizer is found by damped Newton on
    /// the conjugate problem min F(eta)^2/2 - <eta, x>, whose solution is
    /// eta = F^o(x) grad F^o(x). Throws NumericError on non-convergence.
    [[nodiscard]] DualJet dual_jet(const Vector& x) const;

    /// kappa_n = |{F^o < 1}|; closed form for euclidean/ellipsoid, polar
    /// quadrature for regularized_p (n in {2,3}, else CapabilityError).
    [[nodiscard]] double wulff_volume() const;

    /// The polar norm as a Norm (euclidean and ellipsoid families only).
    [[nodiscard]] Norm dual_norm() const;

    [[nodiscard]] std::string describe() const;

private:
    Norm() = default;
    void check_argument(const Vector& v, const char* what) const;
    void finish_construction();
    [[nodiscard]] Vector dual_maximizer(const Vector& x) const;

    NormFamily family_ = NormFamily::euclidean;
    int n_ = 0;
    SquareMatrix m_;
    SquareMatrix m_inv_;
    double p_ = 2.0;
    double eps_ = 0.0;
    double kappa_ = -1.0;  // negative: unavailable for this dimension
};

}  // namespace wulffsym
