#pragma once

#include <functional>
#include <vector>

#include "wulffsym/field.hpp"
#include "wulffsym/profile.hpp"
#include "wulffsym/quadrature.hpp"

namespace wulffsym {

/// S_k of the anisotropic radial function u = v(F^o(x)) at F^o(x) = r > 0:
/// C(n-1,k-1) v'' (v'/r)^{k-1} + C(n-1,k)(v'/r)^k. The value does not depend on F.
[[nodiscard]] double radial_sk(double dv, double ddv, double r, int n, int k);

/// The limit of radial_sk at r = 0 for smooth v with v'(0) = 0: C(n,k) v''(0)^k.
[[nodiscard]] double radial_sk_origin(double ddv0, int n, int k);

/// kappa_n C(n,k) int_0^{r0} r^{n-k} v'(r)^{k+1} dr. Requires v(r0) = 0 and v'(0) = 0.
[[nodiscard]] double radial_hessian_integral(const MonotoneProfile& v, double r0, int n, int k,
                                             double kappa_n);

/// n kappa_n C(n-1,k-1) int_0^{r0} r^{n-k} v'(r)^p dr, the radial form of I_{k,p,F}.
[[nodiscard]] double radial_generalized_integral(const MonotoneProfile& v, double r0, int n, int k,
                                                 double p, double kappa_n);

/// n kappa_n int_0^{r0} |v(r)|^p r^{n-1} dr = int over the Wulff ball of |v(F^o)|^p.
[[nodiscard]] double radial_power_integral(const MonotoneProfile& v, double r0, int n, double p,
                                           double kappa_n);

struct RadialSolution {
    int dimension = 0;
    int order = 0;
    double outer_radius = 0.0;
    std::vector<double> radii;   // uniform grid on [0, R]
    std::vector<double> values;  // v
    std::vector<double> slopes;  // v', exact given the inner integral
    MonotoneProfile profile;     // v with Hermite data (increasing)
    int clipped = 0;             // negative round-off clipped before the k-th root
};

/// Radially symmetric solution of S_{k,F}[v(F^o)] = f_star(F^o) in the Wulff ball of
/// radius R with v = 0 on its boundary:
///   v(r) = -(n/C(n,k))^{1/k} int_r^R (s^{-(n-k)} int_0^s f_star tau^{n-1} dtau)^{1/k} ds.
/// f_star must be nonnegative and decreasing; it is taken as 0 beyond its last node.
[[nodiscard]] RadialSolution solve_radial(const MonotoneProfile& f_star, double outer_radius, int n,
                                          int k, int nodes = 4096);

/// max over interior grid nodes of |S_k[v] - f| / (1 + |f|), with v'' from
/// centered differences of the tabulated slopes. Nodes within `margin` grid
/// steps of either end, and of the source support edge, are excluded.
[[nodiscard]] double back_substitution_residual(const RadialSolution& sol,
                                                const MonotoneProfile& f_star, int margin = 2);

struct RearrangementResolution {
    RayResolution rays{512, 0};
    int shells = 256;  // stratified samples per ray, equal volume
    int nodes = 1024;  // output profile nodes on [0, zeta_0]
};

[[nodiscard]] RearrangementResolution default_rearrangement_resolution(int n);

/// Anisotropic decreasing rearrangement f_0^* of a nonnegative f over Omega = {u < 0}:
/// the decreasing function with |{f_0^*(F^o) > s}| = |{f > s}|. Built by sort-and-match
/// of f on an equal-volume stratified grid. The result lives on [0, zeta_0], zeta_0 =
/// (|Omega| / kappa_n)^{1/n}. Throws InputError on negative samples.
[[nodiscard]] MonotoneProfile rearrange(const std::function<double(const Vector&)>& f,
                                        const Field& u, double kappa_n,
                                        const RearrangementResolution& res);

}  // namespace wulffsym
