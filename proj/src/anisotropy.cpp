#include "wulffsym/anisotropy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wulffsym/error.hpp"
#include "wulffsym/quadrature.hpp"

namespace wulffsym {
namespace {

constexpr double kDualQuadraticTol = 1e-9;
constexpr double kDualStepTol = 1e-12;
// below this relative step length phi decreases by less than its roundoff, so
// the line search can no longer judge steps; Newton is undamped from there on
constexpr double kDualFullStep = 1e-3;
constexpr int kDualMaxIter = 100;

// Polar-coordinate quadrature of the star-shaped Wulff ball: in 2D the
// trapezoid rule with 2048 angles, in 3D a 128 x 256 Gauss-Legendre(cos) x
// uniform(azimuth) grid.
double numeric_wulff_volume(const Norm& f)
{
    const int n = f.dimension();
    if (n != 2 && n != 3) {
        throw CapabilityError("numeric Wulff volume supports n in {2,3} only");
    }
    const DirectionSet dirs = n == 2 ? direction_set_2d(2048) : direction_set_3d(128, 256);
    double total = 0.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const double r = 1.0 / f.dual_value(dirs.directions[i]);
        total += dirs.weights[i] * std::pow(r, n);
    }
    return total / n;
}

}  // namespace

std::string to_string(NormFamily family)
{
    switch (family) {
    case NormFamily::euclidean:
        return "euclidean";
    case NormFamily::ellipsoid:
        return "ellipsoid";
    case NormFamily::regularized_p:
        return "regularized_p";
    }
    return "unknown";
}

NormFamily parse_norm_family(std::string_view name)
{
    if (name == "euclidean") {
        return NormFamily::euclidean;
    }
    if (name == "ellipsoid") {
        return NormFamily::ellipsoid;
    }
    if (name == "regularized_p") {
        return NormFamily::regularized_p;
    }
    throw DomainError("unknown norm family '" + std::string(name) + "'");
}

double unit_ball_volume(int n)
{
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

Norm Norm::euclidean(int n)
{
    if (n < 1) {
        throw DomainError("norm dimension must be >= 1");
    }
    Norm f;
    f.family_ = NormFamily::euclidean;
    f.n_ = n;
    f.m_ = SquareMatrix::Identity(n, n);
    f.m_inv_ = f.m_;
    f.finish_construction();
    return f;
}

Norm Norm::ellipsoid(const SquareMatrix& m)
{
    if (m.rows() < 1 || m.rows() != m.cols() || !m.allFinite()) {
        throw DomainError("ellipsoid norm needs a finite square matrix");
    }
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + m.cwiseAbs().maxCoeff())) {
        throw DomainError("ellipsoid norm matrix must be symmetric");
    }
    Eigen::LLT<SquareMatrix> llt(m);
    if (llt.info() != Eigen::Success) {
        throw DomainError("ellipsoid norm matrix must be positive definite");
    }
    Norm f;
    f.family_ = NormFamily::ellipsoid;
    f.n_ = static_cast<int>(m.rows());
    f.m_ = 0.5 * (m + m.transpose());
    f.m_inv_ = llt.solve(SquareMatrix::Identity(f.n_, f.n_));
    f.m_inv_ = 0.5 * (f.m_inv_ + f.m_inv_.transpose()).eval();
    f.finish_construction();
    return f;
}

Norm Norm::regularized_p(int n, double p, double epsilon)
{
    if (n < 1) {
        throw DomainError("norm dimension must be >= 1");
    }
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw DomainError("regularized_p exponent must lie in (1, inf)");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw DomainError("regularized_p smoothing must be > 0");
    }
    Norm f;
    f.family_ = NormFamily::regularized_p;
    f.n_ = n;
    f.p_ = p;
    f.eps_ = epsilon;
    f.finish_construction();
    return f;
}

void Norm::finish_construction()
{
    switch (family_) {
    case NormFamily::euclidean:
        kappa_ = unit_ball_volume(n_);
        break;
    case NormFamily::ellipsoid:
        kappa_ = unit_ball_volume(n_) * std::sqrt(m_.determinant());
        break;
    case NormFamily::regularized_p:
        kappa_ = (n_ == 2 || n_ == 3) ? numeric_wulff_volume(*this) : -1.0;
        break;
    }
}

void Norm::check_argument(const Vector& v, const char* what) const
{
    if (v.size() != n_) {
        throw DomainError(std::string(what) + ": dimension mismatch");
    }
    if (!v.allFinite()) {
        throw DomainError(std::string(what) + ": non-finite argument");
    }
    if (v.squaredNorm() == 0.0) {
        throw DomainError(std::string(what) + ": norm is not differentiable at the origin");
    }
}

double Norm::value(const Vector& xi) const
{
    switch (family_) {
    case NormFamily::euclidean:
        return xi.norm();
    case NormFamily::ellipsoid:
        return std::sqrt(xi.dot(m_ * xi));
    case NormFamily::regularized_p: {
        const double s = xi.squaredNorm();
        if (s == 0.0) {
            return 0.0;
        }
        double g = 0.0;
        for (int i = 0; i < n_; ++i) {
            g += std::pow(xi(i) * xi(i) + eps_ * s, 0.5 * p_);
        }
        return std::pow(g, 1.0 / p_);
    }
    }
    return 0.0;
}

NormJet Norm::eval_jet(const Vector& xi) const
{
    check_argument(xi, "eval_jet");
    NormJet jet;
    switch (family_) {
    case NormFamily::euclidean: {
        const double r = xi.norm();
        jet.value = r;
        jet.gradient = xi / r;
        jet.hessian = (SquareMatrix::Identity(n_, n_) - jet.gradient * jet.gradient.transpose()) / r;
        break;
    }
    case NormFamily::ellipsoid: {
        const Vector mx = m_ * xi;
        const double r = std::sqrt(xi.dot(mx));
        jet.value = r;
        jet.gradient = mx / r;
        jet.hessian = (m_ - jet.gradient * jet.gradient.transpose()) / r;
        break;
    }
    case NormFamily::regularized_p: {
        // G = sum w_i^{p/2}, w_i = xi_i^2 + eps |xi|^2, F = G^{1/p}
        const double s = xi.squaredNorm();
        Vector w(n_), a(n_), b(n_);
        double g = 0.0;
        for (int i = 0; i < n_; ++i) {
            w(i) = xi(i) * xi(i) + eps_ * s;
            a(i) = std::pow(w(i), 0.5 * p_ - 1.0);
            b(i) = (p_ - 2.0) * std::pow(w(i), 0.5 * p_ - 2.0);
            g += a(i) * w(i);
        }
        const double a_sum = a.sum();
        const double b_sum = b.sum();
        Vector dg(n_);
        SquareMatrix hg(n_, n_);
        for (int j = 0; j < n_; ++j) {
            dg(j) = p_ * xi(j) * (a(j) + eps_ * a_sum);
            for (int k = 0; k < n_; ++k) {
                double h = eps_ * xi(j) * xi(k) * (b(j) + b(k)) + eps_ * eps_ * b_sum * xi(j) * xi(k);
                if (j == k) {
                    h += a(j) + eps_ * a_sum + b(j) * xi(j) * xi(j);
                }
                hg(j, k) = p_ * h;
            }
        }
        const double f = std::pow(g, 1.0 / p_);
        const double c1 = f / (p_ * g);                                   // G^{1/p-1}/p
        const double c2 = (1.0 / p_) * (1.0 / p_ - 1.0) * f / (g * g);    // (1/p)(1/p-1)G^{1/p-2}
        jet.value = f;
        jet.gradient = c1 * dg;
        jet.hessian = c1 * hg + c2 * dg * dg.transpose();
        jet.hessian = 0.5 * (jet.hessian + jet.hessian.transpose()).eval();
        break;
    }
    }
    return jet;
}

SquareMatrix Norm::half_square_hessian(const Vector& xi) const
{
    if (family_ == NormFamily::euclidean) {
        check_argument(xi, "half_square_hessian");
        return SquareMatrix::Identity(n_, n_);
    }
    if (family_ == NormFamily::ellipsoid) {
        check_argument(xi, "half_square_hessian");
        return m_;
    }
    const NormJet jet = eval_jet(xi);
    return jet.gradient * jet.gradient.transpose() + jet.value * jet.hessian;
}

Vector Norm::dual_maximizer(const Vector& x) const
{
    // minimize phi(eta) = F(eta)^2/2 - <eta, x>; phi is strongly convex with
    // Hessian grad(F^2/2)'s Jacobian, and its minimizer is F^o(x) grad F^o(x).
    // start from the maximizer of the unregularized l^p norm: eta_i = sign(x_i)|x_i|^{q-1} ||x||_q^{2-q}
    const double q = p_ / (p_ - 1.0);
    Vector eta(n_);
    double norm_q = 0.0;
    for (int i = 0; i < n_; ++i) {
        norm_q += std::pow(std::abs(x[i]), q);
    }
    norm_q = std::pow(norm_q, 1.0 / q);
    for (int i = 0; i < n_; ++i) {
        eta[i] = std::copysign(std::pow(std::abs(x[i]), q - 1.0), x[i]) * std::pow(norm_q, 2.0 - q);
    }
    auto phi = [&](const Vector& e) {
        const double fe = value(e);
        return 0.5 * fe * fe - e.dot(x);
    };
    double residual = 0.0;
    for (int iter = 0; iter < kDualMaxIter; ++iter) {
        const NormJet jet = eval_jet(eta);
        const Vector grad = jet.value * jet.gradient - x;
        residual = grad.norm();
        const SquareMatrix hess = jet.gradient * jet.gradient.transpose() + jet.value * jet.hessian;
        const Vector step = hess.ldlt().solve(-grad);
        const double step_norm = step.norm();
        if (step_norm <= kDualQuadraticTol * eta.norm()) {
            // inside the quadratic basin: the next correction is below roundoff
            return eta + step;
        }
        if (step_norm <= kDualFullStep * eta.norm()) {
            eta += step;
            continue;
        }
        double lambda = 1.0;
        const double phi0 = 0.5 * jet.value * jet.value - eta.dot(x);
        const double slope = grad.dot(step);
        Vector trial = eta + step;
        while (phi(trial) > phi0 + 1e-4 * lambda * slope && lambda > 1e-8) {
            lambda *= 0.5;
            trial = eta + lambda * step;
        }
        eta = trial;
        if (lambda * step_norm <= kDualStepTol * eta.norm()) {
            return eta;
        }
    }
    std::ostringstream msg;
    msg << "dual norm maximization did not converge (gradient residual " << residual << ")";
    throw NumericError(msg.str());
}

double Norm::dual_value(const Vector& x) const
{
    switch (family_) {
    case NormFamily::euclidean:
        return x.norm();
    case NormFamily::ellipsoid:
        return std::sqrt(x.dot(m_inv_ * x));
    case NormFamily::regularized_p:
        if (x.squaredNorm() == 0.0) {
            return 0.0;
        }
        return value(dual_maximizer(x));
    }
    return 0.0;
}

DualJet Norm::dual_jet(const Vector& x) const
{
    check_argument(x, "dual_jet");
    DualJet jet;
    switch (family_) {
    case NormFamily::euclidean: {
        const double r = x.norm();
        jet.value = r;
        jet.gradient = x / r;
        jet.hessian = (SquareMatrix::Identity(n_, n_) - jet.gradient * jet.gradient.transpose()) / r;
        break;
    }
    case NormFamily::ellipsoid: {
        const Vector mx = m_inv_ * x;
        const double r = std::sqrt(x.dot(mx));
        jet.value = r;
        jet.gradient = mx / r;
        jet.hessian = (m_inv_ - jet.gradient * jet.gradient.transpose()) / r;
        break;
    }
    case NormFamily::regularized_p: {
        const Vector eta = dual_maximizer(x);
        const NormJet fj = eval_jet(eta);
        // Hess (F^o)^2/2 (x) = [Hess F^2/2 (eta)]^{-1}
        const SquareMatrix p = fj.gradient * fj.gradient.transpose() + fj.value * fj.hessian;
        SquareMatrix h2 = p.ldlt().solve(SquareMatrix::Identity(n_, n_));
        jet.value = fj.value;
        jet.gradient = eta / fj.value;
        jet.hessian = (h2 - jet.gradient * jet.gradient.transpose()) / jet.value;
        jet.hessian = 0.5 * (jet.hessian + jet.hessian.transpose()).eval();
        break;
    }
    }
    return jet;
}

double Norm::wulff_volume() const
{
    if (kappa_ < 0.0) {
        throw CapabilityError("Wulff volume of " + to_string(family_) + " needs n in {2,3}");
    }
    return kappa_;
}

Norm Norm::dual_norm() const
{
    switch (family_) {
    case NormFamily::euclidean:
        return *this;
    case NormFamily::ellipsoid:
        return Norm::ellipsoid(m_inv_);
    case NormFamily::regularized_p:
        break;
    }
    throw CapabilityError("dual of a regularized_p norm has no closed-form family");
}

std::string Norm::describe() const
{
    std::ostringstream out;
    out << to_string(family_) << "(n=" << n_;
    if (family_ == NormFamily::ellipsoid) {
        out << ", M=[";
        for (int i = 0; i < n_; ++i) {
            out << (i ? "; " : "");
            for (int j = 0; j < n_; ++j) {
                out << (j ? " " : "") << m_(i, j);
            }
        }
        out << "]";
    } else if (family_ == NormFamily::regularized_p) {
        out << ", p=" << p_ << ", eps=" << eps_;
    }
    out << ")";
    return out.str();
}

}  // namespace wulffsym
