#include <cmath>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "wulffsym/cli/config.hpp"
#include "wulffsym/cli/report.hpp"
#include "wulffsym/cli/runner.hpp"
#include "wulffsym/error.hpp"

using namespace wulffsym;
using namespace wulffsym::cli;
using json = nlohmann::ordered_json;

namespace {

json ellipse_doc()
{
    return json::parse(R"({
        "norm": {"family": "euclidean", "dimension": 2},
        "field": {"preset": "quadratic_ellipsoid", "params": {"semiaxes": [2, 1]}},
        "orders": [1, 2],
        "tasks": ["mixedvol", "af", "symmetrize", "polya_szego"],
        "radii": [1]
    })");
}

std::string config_error(const json& doc)
{
    try {
        (void)parse_config(doc);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("config parsing")
{
    const ExperimentConfig cfg = parse_config(ellipse_doc());
    CHECK(cfg.norm.family == NormFamily::euclidean);
    CHECK(cfg.orders == std::vector<int>{1, 2});
    CHECK(cfg.seed == 42);
    CHECK(cfg.formats == std::vector<std::string>{"csv", "json"});
    const Field u = build_field(cfg.field, build_norm(cfg.norm));
    CHECK(u.min_value() == -0.5);

    json d = ellipse_doc();
    d["colour"] = 1;
    CHECK(config_error(d).find("colour") != std::string::npos);
    d = ellipse_doc();
    d["norm"]["radius"] = 1;
    CHECK(config_error(d).find("norm") != std::string::npos);
    d = ellipse_doc();
    d["tasks"] = json::array({"mixedvol", "mixedvol"});
    CHECK(config_error(d).find("duplicate") != std::string::npos);
    d = ellipse_doc();
    d["tasks"] = json::array({"teleport"});
    CHECK_FALSE(config_error(d).empty());
    d = ellipse_doc();
    d["orders"] = json::array({3});
    CHECK_FALSE(config_error(d).empty());
    d = ellipse_doc();
    d["field"]["params"]["Q"] = json::array({json::array({1, 0}), json::array({0, 1})});
    CHECK_FALSE(config_error(d).empty());
    d = ellipse_doc();
    d["output"] = json{{"formats", json::array({"xml"})}};
    CHECK(config_error(d).find("output.formats") != std::string::npos);
    d = ellipse_doc();
    d.erase("norm");
    CHECK(config_error(d).find("norm") != std::string::npos);
    d = ellipse_doc();
    d["source"] = json{{"type", "constant"}, {"value", -1}};
    CHECK_FALSE(config_error(d).empty());
}

TEST_CASE("number formatting and CSV layout")
{
    CHECK(format_number(kNone).empty());
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(-1e-20) == "-9.9999999999999995e-21");
    CHECK(std::stod(format_number(M_PI)) == M_PI);

    TaskReport t;
    t.task = "demo";
    Row r;
    r.item = "a, \"quoted\" item";
    r.k = 1;
    r.value = 2.0;
    r.pass = true;
    t.rows.push_back(r);
    const std::string csv = task_csv(t);
    CHECK(csv.rfind("task,item,k,p,lhs,rhs,value,reference,error,tolerance,pass,note\n", 0) == 0);
    CHECK(csv.find("demo,\"a, \"\"quoted\"\" item\",1,,,,2,,,,pass,") != std::string::npos);
    CHECK(t.pass());
    t.rows.push_back(Row{});
    CHECK_FALSE(t.pass());
}

TEST_CASE("runs are deterministic")
{
    const ExperimentConfig cfg = parse_config(ellipse_doc());
    const Report a = run(cfg);
    const Report b = run(cfg);
    CHECK(a.pass());
    CHECK(report_json(a, false).dump() == report_json(b, false).dump());
    const json doc = report_json(a, false);
    CHECK(doc.contains("config"));
    CHECK_FALSE(doc.dump().find("runtime") != std::string::npos);
}

TEST_CASE("invariants task")
{
    const TaskReport t = task_invariants(7, 50);
    CHECK(t.pass());
    CHECK(t.rows.size() > 10);
}
