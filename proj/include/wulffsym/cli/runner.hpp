#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wulffsym/anisotropy.hpp"
#include "wulffsym/cli/config.hpp"
#include "wulffsym/cli/report.hpp"
#include "wulffsym/field.hpp"
#include "wulffsym/symmetrize.hpp"

namespace wulffsym::cli {

/// A (norm, field) pair under test plus what is known about it in closed form.
struct Subject {
    std::string label;
    Norm norm;
    Field field;
    SymmetrizeOptions options;
    std::string preset;      // quadratic_ellipsoid | radial_power | perturbed_radial
    bool radial = false;     // anisotropic radial on a Wulff ball of `norm`
    double radius = 0.0;     // Wulff-ball radius when radial
    double exponent = 2.0;   // a of (F^o^a - R^a)/a when radial; S_k[u] is constant only for a = 2
    // Resolution of the single-level tasks (identities, mixedvol, af). These
    // touch a handful of levels, so they can afford finer grids than the sweep.
    RayResolution probe_rays;
    VolumeResolution probe_volume;
};

[[nodiscard]] Subject subject_from_config(const ExperimentConfig& config);

// Task harnesses. Each returns a table whose rows carry their own verdicts;
// library errors inside a task become failing rows, never exceptions.
[[nodiscard]] TaskReport task_invariants(std::uint64_t seed, int samples = 1000);
[[nodiscard]] TaskReport task_identities(const Subject& s, const std::vector<int>& orders,
                                         std::uint64_t seed);
[[nodiscard]] TaskReport task_mixedvol(const Subject& s, const std::vector<double>& radii);
[[nodiscard]] TaskReport task_af(const Subject& s);
[[nodiscard]] TaskReport task_symmetrize(Symmetrizer& sym, const Subject& s,
                                         const std::vector<int>& orders,
                                         const std::vector<double>& exponents);
[[nodiscard]] TaskReport task_polya_szego(Symmetrizer& sym, const Subject& s,
                                          const std::vector<int>& orders,
                                          const std::vector<double>& exponents);
[[nodiscard]] TaskReport task_compare(Symmetrizer& sym, const Subject& s,
                                      const std::vector<int>& orders, const SourceSpec& source);
[[nodiscard]] TaskReport task_sobolev(Symmetrizer& sym, const Subject& s,
                                      const std::vector<int>& orders,
                                      const std::vector<double>& exponents);

/// Runs the configured tasks in declared order. No files are written.
[[nodiscard]] Report run(const ExperimentConfig& config);

/// The regression corpus sweep behind `wulffsym check`: every corpus case in
/// the requested dimensions through every field-level task, all orders.
[[nodiscard]] Report run_check(const std::vector<int>& dimensions, std::uint64_t seed,
                               bool verbose = false);

}  // namespace wulffsym::cli
