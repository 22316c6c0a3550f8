#include "wulffsym/field.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "wulffsym/error.hpp"
#include "wulffsym/parallel.hpp"

namespace wulffsym {
namespace {

constexpr double kRootTol = 1e-12;

void require_spd(const SquareMatrix& q, const char* what)
{
    if (q.rows() < 1 || q.rows() != q.cols() || !q.allFinite()) {
        throw InputError(std::string(what) + ": matrix must be finite and square");
    }
    if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + q.cwiseAbs().maxCoeff())) {
        throw InputError(std::string(what) + ": matrix must be symmetric");
    }
    if (Eigen::LLT<SquareMatrix>(q).info() != Eigen::Success) {
        throw InputError(std::string(what) + ": matrix must be positive definite");
    }
}

// Hessian of F^o^2/2 at the origin where it extends continuously (euclidean,
// ellipsoid); zero otherwise. Only reached when a node lands exactly on the
// anchor.
SquareMatrix half_dual_square_hessian_at_origin(const Norm& f)
{
    const int n = f.dimension();
    switch (f.family()) {
    case NormFamily::euclidean:
        return SquareMatrix::Identity(n, n);
    case NormFamily::ellipsoid:
        return f.dual_norm().matrix();
    case NormFamily::regularized_p:
        break;
    }
    return SquareMatrix::Zero(n, n);
}

}  // namespace

Field::Field(std::string name, int dimension, JetFn jet, FirstOrderFn first_order, Vector anchor,
             double min_value)
    : name_(std::move(name)), n_(dimension), jet_(std::move(jet)), first_(std::move(first_order)),
      anchor_(std::move(anchor)), min_(min_value)
{
    if (n_ < 1 || anchor_.size() != n_) {
        throw InputError("field: anchor dimension mismatch");
    }
    if (!(min_ < 0.0)) {
        throw InputError("field: admissible fields need min u < 0 = max u");
    }
}

Field quadratic_ellipsoid(const SquareMatrix& q)
{
    require_spd(q, "quadratic_ellipsoid");
    const int n = static_cast<int>(q.rows());
    const SquareMatrix qs = 0.5 * (q + q.transpose());
    auto jet = [qs](const Vector& x) {
        FieldJet j;
        j.gradient = qs * x;
        j.value = 0.5 * (x.dot(j.gradient) - 1.0);
        j.hessian = qs;
        return j;
    };
    auto first = [qs](const Vector& x) {
        FieldFirstOrder j;
        j.gradient = qs * x;
        j.value = 0.5 * (x.dot(j.gradient) - 1.0);
        return j;
    };
    Field u("quadratic_ellipsoid", n, jet, first, Vector::Zero(n), -0.5);
    u.set_ray_solver([qs](const Vector& w, double t) { return std::sqrt((2.0 * t + 1.0) / w.dot(qs * w)); });
    return u;
}

Field radial_power(const Norm& f, double exponent, double radius)
{
    if (!(exponent >= 2.0) || !std::isfinite(exponent)) {
        throw InputError("radial_power: exponent must be >= 2");
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw InputError("radial_power: radius must be > 0");
    }
    const int n = f.dimension();
    const double a = exponent;
    const double offset = std::pow(radius, a) / a;
    const SquareMatrix origin_hessian =
        a == 2.0 ? half_dual_square_hessian_at_origin(f) : SquareMatrix::Zero(n, n);
    auto jet = [f, a, offset, origin_hessian, n](const Vector& x) {
        FieldJet j;
        if (x.squaredNorm() == 0.0) {
            j.value = -offset;
            j.gradient = Vector::Zero(n);
            j.hessian = origin_hessian;
            return j;
        }
        const DualJet d = f.dual_jet(x);
        const double r = d.value;
        const double v1 = std::pow(r, a - 1.0);
        const double v2 = (a - 1.0) * std::pow(r, a - 2.0);
        j.value = std::pow(r, a) / a - offset;
        j.gradient = v1 * d.gradient;
        j.hessian = v2 * d.gradient * d.gradient.transpose() + v1 * d.hessian;
        return j;
    };
    auto first = [f, a, offset, n](const Vector& x) {
        FieldFirstOrder j;
        if (x.squaredNorm() == 0.0) {
            j.value = -offset;
            j.gradient = Vector::Zero(n);
            return j;
        }
        const DualJet d = f.dual_jet(x);
        j.value = std::pow(d.value, a) / a - offset;
        j.gradient = std::pow(d.value, a - 1.0) * d.gradient;
        return j;
    };
    std::ostringstream name;
    name << "radial_power(a=" << a << ", R=" << radius << ")";
    Field u(name.str(), n, jet, first, Vector::Zero(n), -offset);
    // F^o(s w) = s F^o(w)
    u.set_ray_solver([f, a, offset](const Vector& w, double t) {
        return std::pow(a * (t + offset), 1.0 / a) / f.dual_value(w);
    });
    return u;
}

Field perturbed_radial(const Norm& f, double epsilon, const SquareMatrix& p)
{
    const int n = f.dimension();
    if (p.rows() != n || p.cols() != n || !p.allFinite()) {
        throw InputError("perturbed_radial: perturbation matrix must be n x n and finite");
    }
    if ((p - p.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + p.cwiseAbs().maxCoeff())) {
        throw InputError("perturbed_radial: perturbation matrix must be symmetric");
    }
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw InputError("perturbed_radial: epsilon must be >= 0");
    }
    const SquareMatrix ep = epsilon * 0.5 * (p + p.transpose());
    // Hess(F^o^2/2) is 0-homogeneous: sampling the unit sphere covers R^n \ {0}.
    const DirectionSet dirs = n == 2 ? direction_set_2d(720) : direction_set_3d(24, 48);
    double worst = std::numeric_limits<double>::infinity();
    for (const Vector& d : dirs.directions) {
        const DualJet dj = f.dual_jet(d);
        const SquareMatrix h = dj.gradient * dj.gradient.transpose() + dj.value * dj.hessian + ep;
        Eigen::SelfAdjointEigenSolver<SquareMatrix> eig(h, Eigen::EigenvaluesOnly);
        worst = std::min(worst, eig.eigenvalues().minCoeff());
    }
    if (!(worst > 1e-6)) {
        std::ostringstream msg;
        msg << "perturbed_radial: perturbation destroys convexity (min Hessian eigenvalue " << worst
            << ")";
        throw InputError(msg.str());
    }
    const SquareMatrix origin_hessian = half_dual_square_hessian_at_origin(f) + ep;
    auto jet = [f, ep, origin_hessian, n](const Vector& x) {
        FieldJet j;
        if (x.squaredNorm() == 0.0) {
            j.value = -0.5;
            j.gradient = Vector::Zero(n);
            j.hessian = origin_hessian;
            return j;
        }
        const DualJet d = f.dual_jet(x);
        const Vector px = ep * x;
        j.value = 0.5 * d.value * d.value + 0.5 * x.dot(px) - 0.5;
        j.gradient = d.value * d.gradient + px;
        j.hessian = d.gradient * d.gradient.transpose() + d.value * d.hessian + ep;
        return j;
    };
    auto first = [f, ep, n](const Vector& x) {
        FieldFirstOrder j;
        if (x.squaredNorm() == 0.0) {
            j.value = -0.5;
            j.gradient = Vector::Zero(n);
            return j;
        }
        const DualJet d = f.dual_jet(x);
        const Vector px = ep * x;
        j.value = 0.5 * d.value * d.value + 0.5 * x.dot(px) - 0.5;
        j.gradient = d.value * d.gradient + px;
        return j;
    };
    std::ostringstream name;
    name << "perturbed_radial(eps=" << epsilon << ")";
    Field u(name.str(), n, jet, first, Vector::Zero(n), -0.5);
    // u is a 2-homogeneous quadratic form in s along each ray, shifted by -1/2
    u.set_ray_solver([f, ep](const Vector& w, double t) {
        const double r = f.dual_value(w);
        return std::sqrt((2.0 * t + 1.0) / (r * r + w.dot(ep * w)));
    });
    return u;
}

double ray_root(const Field& u, const Vector& dir, double t, double hint)
{
    if (!(t > u.min_value())) {
        throw DomainError("ray_root: level must exceed the field minimum");
    }
    if (u.has_ray_solver()) {
        const double s = u.ray_distance(dir, t);
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw DomainError("ray_root: level not reached along ray");
        }
        return s;
    }
    const Vector& x0 = u.anchor();
    auto eval = [&](double s) { return u.first_order(x0 + s * dir); };

    double lo = 0.0;
    double hi = hint > 0.0 ? hint : 1.0;
    FieldFirstOrder at_hi = eval(hi);
    int expansions = 0;
    while (at_hi.value - t < 0.0) {
        lo = hi;
        hi *= 2.0;
        at_hi = eval(hi);
        if (++expansions > 64) {
            throw DomainError("ray_root: level not bracketed along ray");
        }
    }
    // Newton from the upper bracket end; u is nondecreasing along rays.
    double s = hi;
    for (int iter = 0; iter < 300; ++iter) {
        const FieldFirstOrder j = eval(s);
        const double fs = j.value - t;
        if (std::abs(fs) < kRootTol) {
            return s;
        }
        if (fs < 0.0) {
            lo = s;
        } else {
            hi = s;
        }
        const double slope = j.gradient.dot(dir);
        double next = slope > 0.0 ? s - fs / slope : -1.0;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (hi - lo <= 4e-16 * hi) {
            return next;
        }
        s = next;
    }
    throw NumericError("ray_root: root finding did not converge");
}

VolumeResolution default_volume_resolution(int n)
{
    if (n == 2) {
        return VolumeResolution{RayResolution{512, 0}, 48};
    }
    return VolumeResolution{RayResolution{64, 32}, 32};
}

double VolumeGrid::volume() const
{
    return stable_sum(weights);
}

double VolumeGrid::integrate(const std::function<double(const Vector&)>& g) const
{
    std::vector<double> terms(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        terms[i] = weights[i] * g(points[i]);
    }
    return stable_sum(terms);
}

VolumeGrid build_volume_grid(const Field& u, const VolumeResolution& res, double level)
{
    const int n = u.dimension();
    const DirectionSet dirs = direction_set(n, res.rays);
    std::vector<double> radii(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t i) { radii[i] = ray_root(u, dirs.directions[i], level); });
    const GaussRule rule = gauss_legendre(res.radial_nodes, 0.0, 1.0);
    VolumeGrid grid;
    grid.dimension = n;
    grid.points.reserve(dirs.size() * rule.nodes.size());
    grid.weights.reserve(dirs.size() * rule.nodes.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const double sb = radii[i];
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double s = sb * rule.nodes[q];
            grid.points.push_back(u.anchor() + s * dirs.directions[i]);
            grid.weights.push_back(dirs.weights[i] * rule.weights[q] * sb * std::pow(s, n - 1));
        }
    }
    return grid;
}

}  // namespace wulffsym
