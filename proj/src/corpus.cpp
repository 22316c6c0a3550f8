#include "wulffsym/corpus.hpp"

#include "wulffsym/error.hpp"

namespace wulffsym {

const std::vector<PresetInfo>& preset_catalogue()
{
    static const std::vector<PresetInfo> presets = {
        {"quadratic_ellipsoid", "u = (x^T Q x - 1)/2 on the ellipsoid {x^T Q x < 1}",
         "Q: SPD matrix (default identity); or semiaxes: list of positive reals"},
        {"radial_power", "u = (F^o(x)^a - R^a)/a on the Wulff ball of radius R",
         "a >= 2 (default 2), R > 0 (default 1)"},
        {"perturbed_radial", "u = F^o(x)^2/2 + eps x^T P x/2 - 1/2, convexity validated",
         "eps >= 0 (default 0.2), P: symmetric matrix (default corpus perturbation)"},
    };
    return presets;
}

std::vector<Norm> corpus_norms(int n)
{
    if (n != 2 && n != 3) {
        throw CapabilityError("corpus: dimension must be 2 or 3");
    }
    SquareMatrix m(n, n);
    if (n == 2) {
        m << 2.0, 0.5, 0.5, 1.0;
    } else {
        m << 2.0, 0.3, 0.0, 0.3, 1.0, 0.2, 0.0, 0.2, 1.5;
    }
    return {Norm::euclidean(n), Norm::ellipsoid(m), Norm::regularized_p(n, 3.0, n == 2 ? 1e-2 : 5e-2)};
}

SquareMatrix corpus_perturbation(int n)
{
    SquareMatrix p = SquareMatrix::Zero(n, n);
    p(0, 0) = 1.0;
    p(1, 1) = -0.5;
    p(0, 1) = p(1, 0) = 0.3;
    if (n == 3) {
        p(2, 2) = 0.25;
    }
    return p;
}

std::vector<CorpusCase> corpus(int n)
{
    std::vector<CorpusCase> out;
    SquareMatrix ellipse = SquareMatrix::Identity(n, n);
    ellipse(0, 0) = 0.25;
    for (const Norm& f : corpus_norms(n)) {
        const std::string tag = to_string(f.family()) + "/";
        const SymmetrizeOptions opt = corpus_options(f);
        out.push_back({tag + "disc", f, quadratic_ellipsoid(SquareMatrix::Identity(n, n)),
                       f.is_euclidean(), opt});
        out.push_back({tag + "ellipse", f, quadratic_ellipsoid(ellipse), false, opt});
        out.push_back({tag + "wulff_ball", f, radial_power(f, 2.0), true, opt});
        out.push_back({tag + "radial_power4", f, radial_power(f, 4.0), true, opt});
        out.push_back({tag + "perturbed", f, perturbed_radial(f, 0.2, corpus_perturbation(n)), false, opt});
    }
    return out;
}

SymmetrizeOptions corpus_options(const Norm& f)
{
    const int n = f.dimension();
    const bool fine = f.family() == NormFamily::regularized_p;
    SymmetrizeOptions opt = default_symmetrize_options(n);
    opt.radial_nodes = 1024;
    if (n == 2) {
        const RayResolution rays{fine ? 1024 : 256, 0};
        opt.rays = rays;
        opt.volume = VolumeResolution{rays, 48};
        opt.coarea.rays = rays;
        opt.coarea.count = 32;
        opt.rearrangement.rays = RayResolution{fine ? 512 : 256, 0};
        opt.rearrangement.shells = 128;
    } else {
        // the 2:1:1 ellipse needs ~48 azimuths before the curvature integrals settle
        const RayResolution rays = fine ? RayResolution{64, 32} : RayResolution{48, 24};
        opt.rays = rays;
        opt.volume = VolumeResolution{fine ? RayResolution{96, 48} : RayResolution{64, 32}, 16};
        opt.coarea.rays = rays;
        opt.coarea.count = 24;
        opt.rearrangement.rays = rays;
        opt.rearrangement.shells = 64;
    }
    return opt;
}

}  // namespace wulffsym
