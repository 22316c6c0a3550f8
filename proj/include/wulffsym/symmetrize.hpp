#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "wulffsym/anisotropy.hpp"
#include "wulffsym/field.hpp"
#include "wulffsym/field_ops.hpp"
#include "wulffsym/profile.hpp"
#include "wulffsym/radial.hpp"

namespace wulffsym {

struct SymmetrizeOptions {
    int levels = 200;              // uniform levels in (m + delta|m|, 0]
    double bottom_offset = 1e-3;   // delta
    RayResolution rays;            // per-level sampling
    VolumeResolution volume;       // direct volume integrals
    LevelGrid coarea;              // cross-check of the Hessian integral
    RearrangementResolution rearrangement;
    int radial_nodes = 4096;       // solve_radial grid
    int cap_nodes = 32;            // nodes of the bottom cap of rho
};

[[nodiscard]] SymmetrizeOptions default_symmetrize_options(int n);

/// Quantities recorded at one level t of the sweep.
struct LevelRecord {
    double level = 0.0;
    std::vector<double> zeta;       // zeta_j(Omega_t), j = 0..n-1
    std::vector<double> zeta_rate;  // d zeta_j / dt from the Reilly formula
    std::vector<double> energy;     // energy[k-1] = (1/k) int S_{k-1}(kappa_F) F(grad u)^k F(nu) dH, k = 1..n
    double af_min_margin = 0.0;     // min over l < k of zeta_k - zeta_l
};

struct SymmetrizationResult {
    int order = 1;  // k: uses zeta_{k-1}
    int dimension = 0;
    double kappa_n = 0.0;
    double min_value = 0.0;     // m = rho(0)
    double outer_radius = 0.0;  // R = zeta_{k-1}(Omega)
    MonotoneProfile zeta_profile;  // t -> zeta_{k-1}(Omega_t)
    MonotoneProfile rho;           // r -> u*(x) at F^o(x) = r, on [0, R]
    double cap_radius = 0.0;       // rho = m + alpha r^beta on [0, cap_radius]
    double cap_exponent = 0.0;     // beta
    int levels_skipped = 0;
};

struct MarginReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double cross_check = 0.0;  // independent evaluation of lhs (co-area), 0 if unused
};

struct LpComparison {
    double p = 0.0;    // infinity for the sup norm
    double lhs = 0.0;  // int_Omega |u|^p  (or max |u|)
    double rhs = 0.0;  // int_{Omega*} |u*|^p  (or max |u*|)
};

struct ComparisonResult {
    std::vector<double> radii;
    std::vector<double> margin;  // rho(r) - v(r)
    double min_margin = 0.0;
    double argmin = 0.0;
    double outer_radius = 0.0;
    RadialSolution solution;
    MonotoneProfile rearranged;
    double max_precondition_excess = 0.0;  // max of S_k[u] - f on the verification grid
};

struct ChainReport {
    std::vector<double> levels;
    std::vector<double> lhs;  // (1/k) int S_{k-1} F(grad u)^k F(nu) dH
    std::vector<double> rhs;  // kappa_n C(n,k) zeta^{n-k} / (d zeta/dt)^k
    double min_relative_margin = 0.0;
};

/// Sharp constant C(n,k,p,F) of ||u||_{L^q}^p <= C I_{k,p,F}[u], q = np/(n-k+1-p),
/// for 1 <= p < n-k+1. Uses 0^0 = 1 at p = 1.
[[nodiscard]] double sobolev_constant(int n, int k, double p, double kappa_n);

/// Symmetrization harness for one (norm, field) pair. The level sweep and the
/// volume grid are computed once and shared by every query. Not thread-safe.
class Symmetrizer {
public:
    Symmetrizer(Norm f, Field u, SymmetrizeOptions options);

    [[nodiscard]] const Norm& norm() const noexcept { return f_; }
    [[nodiscard]] const Field& field() const noexcept { return u_; }
    [[nodiscard]] const SymmetrizeOptions& options() const noexcept { return opt_; }
    [[nodiscard]] int dimension() const noexcept { return u_.dimension(); }

    /// Level records of the sweep, ordered by increasing t (degenerate levels omitted).
    const std::vector<LevelRecord>& sweep();
    [[nodiscard]] int levels_skipped();
    const VolumeGrid& volume_grid();

    /// t -> zeta_{k-1}(Omega_t); ModelError if it decreases by more than 1e-8.
    MonotoneProfile zeta_profile(int k);
    const SymmetrizationResult& symmetrand(int k);

    MarginReport ps_margin(int k);
    MarginReport ps_margin_p(int k, double p);
    LpComparison lp_compare(int k, double p);
    MarginReport sobolev_margin(int k, double p);
    ComparisonResult comparison_margin(const std::function<double(const Vector&)>& source, int k);
    ChainReport chain_inequality(int k);

private:
    void check_order(int k) const;
    double kappa();

    Norm f_;
    Field u_;
    SymmetrizeOptions opt_;
    std::optional<std::vector<LevelRecord>> sweep_;
    int skipped_ = 0;
    std::optional<VolumeGrid> grid_;
    std::map<int, SymmetrizationResult> results_;
};

// Convenience wrappers with default options.
[[nodiscard]] MonotoneProfile zeta_profile(const Norm& f, const Field& u, int k, int level_count);
[[nodiscard]] SymmetrizationResult symmetrand(const Norm& f, const Field& u, int k);
[[nodiscard]] MarginReport ps_margin(const Norm& f, const Field& u, int k);
[[nodiscard]] MarginReport ps_margin_p(const Norm& f, const Field& u, int k, double p);
[[nodiscard]] LpComparison lp_compare(const Norm& f, const Field& u, int k, double p);
[[nodiscard]] MarginReport sobolev_margin(const Norm& f, const Field& u, int k, double p);
[[nodiscard]] ComparisonResult comparison_margin(const Norm& f, const Field& u,
                                                 const std::function<double(const Vector&)>& source,
                                                 int k);

}  // namespace wulffsym
