#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wulffsym/anisotropy.hpp"
#include "wulffsym/field.hpp"
#include "wulffsym/symmetrize.hpp"

namespace wulffsym::cli {

struct NormSpec {
    NormFamily family = NormFamily::euclidean;
    int dimension = 2;
    std::optional<SquareMatrix> matrix;  // ellipsoid
    double p = 3.0;                      // regularized_p
    double epsilon = 1e-2;               // regularized_p
};

struct FieldSpec {
    std::string preset = "quadratic_ellipsoid";
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
};

struct GridSpec {
    std::optional<int> levels;
    std::optional<int> rays;  // 3D: azimuth count, polar = rays / 2
    std::optional<int> radial_nodes;
    std::optional<int> volume_panels;  // radial Gauss nodes per ray of the volume rule
};

struct SourceSpec {
    enum class Kind { operator_field, constant } kind = Kind::operator_field;
    double value = 1.0;   // constant source
    double factor = 1.0;  // f = factor * S_k[u]
};

inline const std::vector<std::string> kTaskNames = {
    "invariants", "identities", "mixedvol", "af", "symmetrize", "polya_szego", "compare", "sobolev"};

struct ExperimentConfig {
    NormSpec norm;
    FieldSpec field;
    std::vector<int> orders{1};
    std::vector<double> exponents{2.0};
    GridSpec grids;
    std::vector<std::string> tasks;
    std::string output_directory = "wulffsym_out";
    std::vector<std::string> formats{"csv", "json"};
    std::uint64_t seed = 42;
    std::vector<double> radii;
    SourceSpec source;
    nlohmann::ordered_json echo;  // normalized config written back into reports
};

/// Parses and validates a config document; throws ConfigError with a
/// path-qualified message. Unknown keys are rejected at every level.
[[nodiscard]] ExperimentConfig parse_config(const nlohmann::ordered_json& doc);
[[nodiscard]] ExperimentConfig load_config(const std::string& path);

[[nodiscard]] Norm build_norm(const NormSpec& spec);
[[nodiscard]] Field build_field(const FieldSpec& spec, const Norm& norm);
[[nodiscard]] SymmetrizeOptions build_options(const ExperimentConfig& config);

}  // namespace wulffsym::cli
