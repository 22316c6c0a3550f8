#pragma once

#include <string>
#include <vector>

#include "wulffsym/anisotropy.hpp"
#include "wulffsym/field.hpp"
#include "wulffsym/symmetrize.hpp"

namespace wulffsym {

/// Field preset catalogue shared by the CLI and the regression corpus.
struct PresetInfo {
    std::string name;
    std::string summary;
    std::string params;  // accepted parameter keys and defaults
};

[[nodiscard]] const std::vector<PresetInfo>& preset_catalogue();

/// Norms of the regression corpus in dimension n: euclidean, a non-diagonal
/// ellipsoid, and regularized_p with p = 3 (eps = 1e-2 in 2D, 5e-2 in 3D; the
/// 3D value keeps the angular features resolvable by a desk-scale ray grid).
[[nodiscard]] std::vector<Norm> corpus_norms(int n);

/// One (norm, field) pair of the corpus. `radial` marks fields that are
/// anisotropic radial functions on a Wulff ball of their own norm.
struct CorpusCase {
    std::string name;
    Norm norm;
    Field field;
    bool radial = false;
    SymmetrizeOptions options;
};

/// 5 fields (disc, ellipse, wulff_ball, radial_power a=4, perturbed) x 3 norms, in dimension n.
[[nodiscard]] std::vector<CorpusCase> corpus(int n);

/// Resolutions used for corpus-wide sweeps: coarse for the closed-form norms,
/// finer for regularized_p whose jets vary on short angular scales.
[[nodiscard]] SymmetrizeOptions corpus_options(const Norm& f);

/// Perturbation matrix used by the `perturbed` corpus field.
[[nodiscard]] SquareMatrix corpus_perturbation(int n);

}  // namespace wulffsym
