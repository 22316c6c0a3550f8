#include "wulffsym/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "wulffsym/corpus.hpp"
#include "wulffsym/error.hpp"

namespace wulffsym::cli {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw ConfigError(path + ": " + what);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object()) {
        fail(path, "expected an object");
    }
    for (const auto& item : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return item.key() == k; });
        if (!known) {
            fail(path, "unknown key '" + item.key() + "'");
        }
    }
}

double number(const json& v, const std::string& path)
{
    if (!v.is_number()) {
        fail(path, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        fail(path, "must be finite");
    }
    return x;
}

int positive_int(const json& v, const std::string& path)
{
    if (!v.is_number_integer() || v.get<long long>() <= 0 || v.get<long long>() > 1'000'000) {
        fail(path, "expected a positive integer");
    }
    return v.get<int>();
}

std::string text(const json& v, const std::string& path)
{
    if (!v.is_string()) {
        fail(path, "expected a string");
    }
    return v.get<std::string>();
}

SquareMatrix matrix(const json& v, int n, const std::string& path)
{
    if (!v.is_array() || static_cast<int>(v.size()) != n) {
        fail(path, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " array of rows");
    }
    SquareMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = v[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            fail(path + "[" + std::to_string(i) + "]", "row must have " + std::to_string(n) + " entries");
        }
        for (int j = 0; j < n; ++j) {
            m(i, j) = number(row[static_cast<std::size_t>(j)],
                             path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
        }
    }
    return m;
}

json matrix_json(const SquareMatrix& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(row);
    }
    return rows;
}

NormSpec parse_norm(const json& v)
{
    only_keys(v, "norm", {"family", "dimension", "matrix", "p", "epsilon"});
    NormSpec spec;
    if (!v.contains("family")) {
        fail("norm.family", "required");
    }
    try {
        spec.family = parse_norm_family(text(v["family"], "norm.family"));
    } catch (const DomainError& e) {
        fail("norm.family", e.what());
    }
    if (v.contains("dimension")) {
        spec.dimension = positive_int(v["dimension"], "norm.dimension");
    }
    if (spec.dimension < 2 || spec.dimension > 3) {
        fail("norm.dimension", "supported dimensions are 2 and 3");
    }
    const bool ellipsoid = spec.family == NormFamily::ellipsoid;
    const bool regularized = spec.family == NormFamily::regularized_p;
    if (v.contains("matrix")) {
        if (!ellipsoid) {
            fail("norm.matrix", "only valid for the ellipsoid family");
        }
        spec.matrix = matrix(v["matrix"], spec.dimension, "norm.matrix");
    } else if (ellipsoid) {
        fail("norm.matrix", "required for the ellipsoid family");
    }
    if (v.contains("p")) {
        if (!regularized) {
            fail("norm.p", "only valid for the regularized_p family");
        }
        spec.p = number(v["p"], "norm.p");
    }
    if (v.contains("epsilon")) {
        if (!regularized) {
            fail("norm.epsilon", "only valid for the regularized_p family");
        }
        spec.epsilon = number(v["epsilon"], "norm.epsilon");
    }
    return spec;
}

FieldSpec parse_field(const json& v)
{
    only_keys(v, "field", {"preset", "params"});
    FieldSpec spec;
    if (!v.contains("preset")) {
        fail("field.preset", "required");
    }
    spec.preset = text(v["preset"], "field.preset");
    const auto& cat = preset_catalogue();
    if (std::none_of(cat.begin(), cat.end(), [&](const PresetInfo& p) { return p.name == spec.preset; })) {
        fail("field.preset", "unknown preset '" + spec.preset + "' (see `wulffsym presets`)");
    }
    if (v.contains("params")) {
        spec.params = v["params"];
        if (spec.preset == "quadratic_ellipsoid") {
            only_keys(spec.params, "field.params", {"Q", "semiaxes"});
            if (spec.params.contains("Q") && spec.params.contains("semiaxes")) {
                fail("field.params", "give either Q or semiaxes, not both");
            }
        } else if (spec.preset == "radial_power") {
            only_keys(spec.params, "field.params", {"a", "R"});
        } else {
            only_keys(spec.params, "field.params", {"eps", "P"});
        }
    }
    return spec;
}

}  // namespace

Norm build_norm(const NormSpec& spec)
{
    switch (spec.family) {
    case NormFamily::euclidean:
        return Norm::euclidean(spec.dimension);
    case NormFamily::ellipsoid:
        return Norm::ellipsoid(*spec.matrix);
    case NormFamily::regularized_p:
        return Norm::regularized_p(spec.dimension, spec.p, spec.epsilon);
    }
    throw ConfigError("norm: unsupported family");
}

Field build_field(const FieldSpec& spec, const Norm& norm)
{
    const int n = norm.dimension();
    const json& p = spec.params;
    if (spec.preset == "quadratic_ellipsoid") {
        SquareMatrix q = SquareMatrix::Identity(n, n);
        if (p.contains("Q")) {
            q = matrix(p["Q"], n, "field.params.Q");
        } else if (p.contains("semiaxes")) {
            const json& axes = p["semiaxes"];
            if (!axes.is_array() || static_cast<int>(axes.size()) != n) {
                fail("field.params.semiaxes", "expected " + std::to_string(n) + " positive numbers");
            }
            for (int i = 0; i < n; ++i) {
                const double a = number(axes[static_cast<std::size_t>(i)], "field.params.semiaxes");
                if (!(a > 0.0)) {
                    fail("field.params.semiaxes", "semiaxes must be positive");
                }
                q(i, i) = 1.0 / (a * a);
            }
        }
        return quadratic_ellipsoid(q);
    }
    if (spec.preset == "radial_power") {
        const double a = p.contains("a") ? number(p["a"], "field.params.a") : 2.0;
        const double r = p.contains("R") ? number(p["R"], "field.params.R") : 1.0;
        return radial_power(norm, a, r);
    }
    const double eps = p.contains("eps") ? number(p["eps"], "field.params.eps") : 0.2;
    const SquareMatrix pm = p.contains("P") ? matrix(p["P"], n, "field.params.P") : corpus_perturbation(n);
    return perturbed_radial(norm, eps, pm);
}

SymmetrizeOptions build_options(const ExperimentConfig& config)
{
    const int n = config.norm.dimension;
    SymmetrizeOptions opt = default_symmetrize_options(n);
    const GridSpec& g = config.grids;
    if (g.levels) {
        opt.levels = *g.levels;
    }
    if (g.rays) {
        const RayResolution rays = n == 2 ? RayResolution{*g.rays, 0}
                                          : RayResolution{*g.rays, std::max(2, *g.rays / 2)};
        opt.rays = rays;
        opt.volume.rays = rays;
        opt.coarea.rays = rays;
        opt.rearrangement.rays = rays;
    }
    if (g.radial_nodes) {
        opt.radial_nodes = *g.radial_nodes;
    }
    if (g.volume_panels) {
        opt.volume.radial_nodes = *g.volume_panels;
    }
    return opt;
}

ExperimentConfig parse_config(const json& doc)
{
    only_keys(doc, "config", {"norm", "field", "orders", "exponents", "grids", "tasks", "output",
                              "seed", "radii", "source"});
    ExperimentConfig cfg;
    if (!doc.contains("norm")) {
        fail("norm", "required");
    }
    cfg.norm = parse_norm(doc["norm"]);
    const int n = cfg.norm.dimension;
    if (doc.contains("field")) {
        cfg.field = parse_field(doc["field"]);
    }
    if (doc.contains("orders")) {
        const json& v = doc["orders"];
        if (!v.is_array() || v.empty()) {
            fail("orders", "expected a nonempty array");
        }
        cfg.orders.clear();
        for (const json& k : v) {
            const int order = positive_int(k, "orders[]");
            if (order > n) {
                fail("orders[]", "order k=" + std::to_string(order) + " exceeds the dimension");
            }
            cfg.orders.push_back(order);
        }
    }
    if (doc.contains("exponents")) {
        const json& v = doc["exponents"];
        if (!v.is_array() || v.empty()) {
            fail("exponents", "expected a nonempty array");
        }
        cfg.exponents.clear();
        for (const json& p : v) {
            const double e = number(p, "exponents[]");
            if (!(e >= 1.0)) {
                fail("exponents[]", "exponents must be >= 1");
            }
            cfg.exponents.push_back(e);
        }
    }
    if (doc.contains("grids")) {
        const json& g = doc["grids"];
        only_keys(g, "grids", {"levels", "rays", "radial_nodes", "volume_panels"});
        if (g.contains("levels")) {
            cfg.grids.levels = positive_int(g["levels"], "grids.levels");
            if (*cfg.grids.levels < 4) {
                fail("grids.levels", "need at least 4 levels");
            }
        }
        if (g.contains("rays")) {
            cfg.grids.rays = positive_int(g["rays"], "grids.rays");
            if (*cfg.grids.rays < 8) {
                fail("grids.rays", "need at least 8 rays");
            }
        }
        if (g.contains("radial_nodes")) {
            cfg.grids.radial_nodes = positive_int(g["radial_nodes"], "grids.radial_nodes");
            if (*cfg.grids.radial_nodes < 8) {
                fail("grids.radial_nodes", "need at least 8 nodes");
            }
        }
        if (g.contains("volume_panels")) {
            cfg.grids.volume_panels = positive_int(g["volume_panels"], "grids.volume_panels");
        }
    }
    if (!doc.contains("tasks") || !doc["tasks"].is_array() || doc["tasks"].empty()) {
        fail("tasks", "expected a nonempty array of task names");
    }
    std::set<std::string> seen;
    for (const json& t : doc["tasks"]) {
        const std::string name = text(t, "tasks[]");
        if (std::find(kTaskNames.begin(), kTaskNames.end(), name) == kTaskNames.end()) {
            fail("tasks[]", "unknown task '" + name + "'");
        }
        if (!seen.insert(name).second) {
            fail("tasks[]", "duplicate task '" + name + "'");
        }
        cfg.tasks.push_back(name);
    }
    if (doc.contains("output")) {
        const json& o = doc["output"];
        only_keys(o, "output", {"directory", "formats"});
        if (o.contains("directory")) {
            cfg.output_directory = text(o["directory"], "output.directory");
            if (cfg.output_directory.empty()) {
                fail("output.directory", "must not be empty");
            }
        }
        if (o.contains("formats")) {
            const json& f = o["formats"];
            if (!f.is_array() || f.empty()) {
                fail("output.formats", "expected a nonempty array");
            }
            cfg.formats.clear();
            for (const json& x : f) {
                const std::string fmt = text(x, "output.formats[]");
                if (fmt != "csv" && fmt != "json") {
                    fail("output.formats[]", "unknown format '" + fmt + "' (csv, json)");
                }
                if (std::find(cfg.formats.begin(), cfg.formats.end(), fmt) == cfg.formats.end()) {
                    cfg.formats.push_back(fmt);
                }
            }
        }
    }
    if (doc.contains("seed")) {
        const json& s = doc["seed"];
        if (!s.is_number_integer() || s.get<long long>() < 0) {
            fail("seed", "expected a nonnegative integer");
        }
        cfg.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("radii")) {
        const json& r = doc["radii"];
        if (!r.is_array()) {
            fail("radii", "expected an array");
        }
        for (const json& x : r) {
            const double v = number(x, "radii[]");
            if (!(v > 0.0)) {
                fail("radii[]", "radii must be positive");
            }
            cfg.radii.push_back(v);
        }
    }
    if (doc.contains("source")) {
        const json& s = doc["source"];
        only_keys(s, "source", {"type", "value", "factor"});
        const std::string type = s.contains("type") ? text(s["type"], "source.type") : "operator";
        if (type == "constant") {
            cfg.source.kind = SourceSpec::Kind::constant;
            if (!s.contains("value")) {
                fail("source.value", "required for a constant source");
            }
            if (s.contains("factor")) {
                fail("source.factor", "only valid for an operator source");
            }
            cfg.source.value = number(s["value"], "source.value");
            if (!(cfg.source.value >= 0.0)) {
                fail("source.value", "must be nonnegative");
            }
        } else if (type == "operator") {
            if (s.contains("value")) {
                fail("source.value", "only valid for a constant source");
            }
            if (s.contains("factor")) {
                cfg.source.factor = number(s["factor"], "source.factor");
                if (!(cfg.source.factor > 0.0)) {
                    fail("source.factor", "must be positive");
                }
            }
        } else {
            fail("source.type", "expected 'constant' or 'operator'");
        }
    }

    // build once so that bad matrices or parameters surface as config errors
    try {
        const Norm f = build_norm(cfg.norm);
        (void)build_field(cfg.field, f);
        (void)build_options(cfg);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid norm/field parameters: ") + e.what());
    }

    json echo;
    echo["norm"] = {{"family", to_string(cfg.norm.family)}, {"dimension", n}};
    if (cfg.norm.matrix) {
        echo["norm"]["matrix"] = matrix_json(*cfg.norm.matrix);
    }
    if (cfg.norm.family == NormFamily::regularized_p) {
        echo["norm"]["p"] = cfg.norm.p;
        echo["norm"]["epsilon"] = cfg.norm.epsilon;
    }
    echo["field"] = {{"preset", cfg.field.preset}, {"params", cfg.field.params}};
    echo["orders"] = cfg.orders;
    echo["exponents"] = cfg.exponents;
    const SymmetrizeOptions opt = build_options(cfg);
    echo["grids"] = {{"levels", opt.levels},
                     {"rays", opt.rays.azimuth},
                     {"radial_nodes", opt.radial_nodes},
                     {"volume_panels", opt.volume.radial_nodes}};
    echo["tasks"] = cfg.tasks;
    echo["output"] = {{"directory", cfg.output_directory}, {"formats", cfg.formats}};
    echo["seed"] = cfg.seed;
    echo["radii"] = cfg.radii;
    if (cfg.source.kind == SourceSpec::Kind::constant) {
        echo["source"] = {{"type", "constant"}, {"value", cfg.source.value}};
    } else {
        echo["source"] = {{"type", "operator"}, {"factor", cfg.source.factor}};
    }
    cfg.echo = std::move(echo);
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

}  // namespace wulffsym::cli
