#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wulffsym/anisotropy.hpp"
#include "wulffsym/quadrature.hpp"
#include "wulffsym/types.hpp"

namespace wulffsym {

/// Value, gradient and (symmetric) Hessian of a scalar field at a point.
struct FieldJet {
    double value = 0.0;
    Vector gradient;
    SquareMatrix hessian;
};

struct FieldFirstOrder {
    double value = 0.0;
    Vector gradient;
};

/// A quasi-convex C^2 function u on a bounded convex domain Omega = {u < 0}
/// with u = 0 on the boundary. The anchor is the interior minimum point; every
/// ray from the anchor crosses each level set {u = t}, m < t <= 0, once.
/// Evaluators must be safe for concurrent read-only use.
class Field {
public:
    using JetFn = std::function<FieldJet(const Vector&)>;
    using FirstOrderFn = std::function<FieldFirstOrder(const Vector&)>;
    /// Optional closed-form distance s(w, t) from the anchor to {u = t} along the unit direction w.
    using RayFn = std::function<double(const Vector&, double)>;

    Field(std::string name, int dimension, JetFn jet, FirstOrderFn first_order, Vector anchor,
          double min_value);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] int dimension() const noexcept { return n_; }
    [[nodiscard]] const Vector& anchor() const noexcept { return anchor_; }
    /// m = min u (attained at the anchor).
    [[nodiscard]] double min_value() const noexcept { return min_; }
    /// M = max u over the closed domain; always 0 for admissible fields.
    [[nodiscard]] double max_value() const noexcept { return 0.0; }

    [[nodiscard]] FieldJet jet(const Vector& x) const { return jet_(x); }
    [[nodiscard]] FieldFirstOrder first_order(const Vector& x) const { return first_(x); }
    [[nodiscard]] double value(const Vector& x) const { return first_(x).value; }

    void set_ray_solver(RayFn ray) { ray_ = std::move(ray); }
    [[nodiscard]] bool has_ray_solver() const noexcept { return static_cast<bool>(ray_); }
    [[nodiscard]] double ray_distance(const Vector& dir, double t) const { return ray_(dir, t); }

private:
    std::string name_;
    int n_;
    JetFn jet_;
    FirstOrderFn first_;
    RayFn ray_;
    Vector anchor_;
    double min_;
};

/// u = (x^T Q x - 1)/2 for symmetric positive definite Q.
[[nodiscard]] Field quadratic_ellipsoid(const SquareMatrix& q);

/// u = (F^o(x)^a - R^a)/a on the Wulff ball of radius R, a >= 2.
[[nodiscard]] Field radial_power(const Norm& f, double exponent, double radius = 1.0);

/// u = F^o(x)^2/2 + eps x^T P x / 2 - 1/2. P symmetric; the perturbation is
/// rejected (InputError) unless Hess(F^o^2/2) + eps P stays positive definite
/// on sampled directions.
[[nodiscard]] Field perturbed_radial(const Norm& f, double epsilon, const SquareMatrix& p);

/// Distance s > 0 along the unit direction `dir` from the anchor with
/// u(anchor + s dir) = t, to |u - t| < 1e-12 (bracketing + safeguarded Newton).
/// `hint` > 0 seeds the bracket. DomainError if t <= m or no bracket is found.
[[nodiscard]] double ray_root(const Field& u, const Vector& dir, double t, double hint = 0.0);

/// Resolution of the star-shaped volume quadrature: a direction set from the
/// anchor times Gauss-Legendre nodes along each ray.
struct VolumeResolution {
    RayResolution rays;
    int radial_nodes = 48;
};

[[nodiscard]] VolumeResolution default_volume_resolution(int n);

/// Quadrature nodes for integrals over the sublevel set {u < level}.
struct VolumeGrid {
    int dimension = 0;
    std::vector<Vector> points;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
    [[nodiscard]] double volume() const;
    /// sum_i w_i g(x_i) in node order.
    [[nodiscard]] double integrate(const std::function<double(const Vector&)>& g) const;
};

/// Polar quadrature about the anchor: integral = sum over directions w_dir
/// int_0^{s(dir)} g(x0 + s dir) s^{n-1} ds, with s(dir) from ray_root.
[[nodiscard]] VolumeGrid build_volume_grid(const Field& u, const VolumeResolution& res,
                                           double level = 0.0);

}  // namespace wulffsym
