#include "doctest.h"
#include "json.hpp"
#include "patchlab/errors.hpp"
#include "patchlab/instance.hpp"

using namespace patchlab;
using nlohmann::json;

namespace {

json base_instance(const std::string& task, json params, json gamma_groups = json::object(),
                   json systems = json::object()) {
    return {{"schema", "patchlab-instance/1"},
            {"groups", json::object()},
            {"gammaGroups", gamma_groups},
            {"systems", systems},
            {"task", task},
            {"params", params}};
}

}  // namespace

TEST_CASE("axioms on the inner crossed module of S3") {
    auto inst = base_instance("axioms", {{"gammaGroup", "A"}},
                              {{"A", {{"gamma", "C1"}, {"g", "S3"}}}});
    auto res = run_instance(inst, {});
    CHECK(res.report.at("payload").at("valid") == true);
    CHECK(res.check_ok);
}

TEST_CASE("classify-bitorsors counts Out(Z/3)") {
    auto inst = base_instance("classify-bitorsors", {{"gammaGroup", "A"}},
                              {{"A", {{"gamma", "C1"}, {"g", "C3"}}}});
    auto res = run_instance(inst, {});
    CHECK(res.report.at("payload").at("count") == 2);
}

TEST_CASE("malformed group tables are rejected with a witness") {
    auto inst = json{{"schema", "patchlab-instance/1"},
                     {"groups", {{"B", {{"kind", "table"}, {"order", 2}, {"mul", {0, 1, 1, 1}}}}}},
                     {"gammaGroups", {{"A", {{"gamma", "C1"}, {"g", "B"}}}}},
                     {"task", "classify-bitorsors"},
                     {"params", {{"gammaGroup", "A"}}}};
    CHECK_THROWS_AS(run_instance(inst, {}), ValidationError);
}

TEST_CASE("resource limits map to ResourceLimit") {
    auto inst = base_instance("classify-bitorsors", {{"gammaGroup", "A"}},
                              {{"A", {{"gamma", "C1"}, {"g", {{"kind", "symmetric"}, {"degree", 5}}}}}});
    CHECK_THROWS_AS(run_instance(inst, {}), ResourceLimit);
}

TEST_CASE("machine reports are byte-identical across runs") {
    auto systems = json{{"S", {{"kind", "catalog"}, {"name", "edge-v4-factors"}}}};
    auto gammas = json::object();
    auto inst = base_instance("mv", {{"system", "S"}, {"group", "C3"}}, gammas, systems);
    auto r1 = run_instance(inst, {});
    auto r2 = run_instance(inst, {});
    CHECK(r1.report.dump() == r2.report.dump());
    CHECK(r1.report.at("timing").is_null());
}

TEST_CASE("myles task reports exactness and feeds --check") {
    auto inst = base_instance("myles", {{"gammaGroup", "A"}},
                              {{"A",
                                {{"gamma", "C2"},
                                 {"g", "C3"},
                                 {"action",
                                  {{"generators", json::array({{{"sigma", 1}, {"images", {0, 2, 1}}}})}}}}}});
    auto res = run_instance(inst, {});
    CHECK(res.report.at("payload").at("exact") == true);
    CHECK(res.check_ok);
}

TEST_CASE("factorize round trip with verify-report") {
    auto systems = json{{"S", {{"kind", "catalog"}, {"name", "edge-trivial"}}}};
    auto inst = base_instance("factorize", {{"system", "S"}, {"group", "S3"}, {"edgeElements", {3}}},
                              json::object(), systems);
    auto res = run_instance(inst, {});
    CHECK_FALSE(res.report.at("payload").at("witness").is_null());
    std::string error;
    CHECK(verify_report(inst, res.report, {}, &error));

    // Tampered witnesses are rejected.
    auto tampered = res.report;
    auto w = tampered["payload"]["witness"].get<std::vector<int>>();
    w[0] = (w[0] + 1) % 6;
    tampered["payload"]["witness"] = w;
    bool ok = verify_report(inst, tampered, {}, &error);
    CHECK_FALSE(ok);
}

TEST_CASE("suite task aggregates theorem instances") {
    auto inst = base_instance("suite", {{"family", "finite"}});
    auto res = run_instance(inst, {});
    CHECK(res.report.at("payload").at("allImplicationsHold") == true);
    CHECK(res.report.at("payload").at("instances").size() > 0);
}

TEST_CASE("h2-band task") {
    auto inst = base_instance("h2-band", {{"gamma", "C2"},
                                          {"band", {{"g", "C2"}, {"kappa", {0, 0}}}}});
    auto res = run_instance(inst, {});
    CHECK(res.report.at("payload").at("fiberSize") == 2);
    CHECK(res.report.at("payload").at("simplyTransitive") == true);
}

TEST_CASE("local-global and bitorsor-factorize on a catalog system") {
    auto systems = json{{"S", {{"kind", "catalog"}, {"name", "edge-trivial"}}}};
    auto lg = base_instance("local-global", {{"system", "S"}, {"group", "C3"}}, json::object(),
                            systems);
    auto res = run_instance(lg, {});
    CHECK(res.check_ok);

    auto bf = base_instance("bitorsor-factorize",
                            {{"system", "S"}, {"group", "C3"}, {"edgeClasses", {1}}},
                            json::object(), systems);
    auto res2 = run_instance(bf, {});
    CHECK_FALSE(res2.report.at("payload").at("witness").is_null());
    std::string error;
    CHECK(verify_report(bf, res2.report, {}, &error));
}

TEST_CASE("center-algorithm task") {
    auto systems = json{{"S", {{"kind", "catalog"}, {"name", "edge-trivial"}}}};
    auto inst = base_instance(
        "center-algorithm",
        {{"system", "S"}, {"group", "C2xS3"}, {"z", {0, 6}}, {"edgeClasses", {0}}},
        json::object(), systems);
    auto res = run_instance(inst, {});
    CHECK(res.report.at("payload").at("verified") == true);
    std::string error;
    CHECK(verify_report(inst, res.report, {}, &error));
}

TEST_CASE("edge-op switch is honored and reported") {
    auto systems = json{{"S", {{"kind", "catalog"}, {"name", "edge-trivial"}}}};
    auto inst = base_instance("bitorsor-factorize",
                              {{"system", "S"}, {"group", "C3"}, {"edgeClasses", {1}},
                               {"edgeOp", "opposite"}},
                              json::object(), systems);
    auto res = run_instance(inst, {});
    CHECK(res.report.at("conventions").at("edgeOp") == "opposite");
    RunOptions opts;
    opts.edge_op = EdgeOp::Definition;
    opts.edge_op_set = true;
    auto res2 = run_instance(inst, opts);
    CHECK(res2.report.at("conventions").at("edgeOp") == "definition");
}
