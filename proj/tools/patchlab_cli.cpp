#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "patchlab/errors.hpp"
#include "patchlab/instance.hpp"

using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw patchlab::ValidationError("BadInstance", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw patchlab::ValidationError("BadInstance", std::string{"json parse error: "} + e.what());
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"patchlab: finite-model laboratory for torsor, bitorsor and gerbe patching"};
    std::string instance_path;
    std::string format = "table";
    std::string seed_suite;
    std::string edge_op = "definition";
    std::string verify_path;
    std::string output_path;
    bool check = false;
    int limit_order = 24;
    long long max_candidates = 4000000;

    app.add_option("instance", instance_path, "instance document (patchlab-instance/1 json)")
        ->required();
    app.add_flag("--check", check, "exit 1 when a paper implication fails");
    app.add_option("--format", format, "table | machine")->check(CLI::IsMember({"table", "machine"}));
    app.add_option("--seed-suite", seed_suite, "suite family override for task=suite");
    app.add_option("--limit-order", limit_order, "maximum group order");
    app.add_option("--max-candidates", max_candidates, "enumeration candidate bound");
    bool edge_op_given = false;
    app.add_option("--edge-op", edge_op, "definition | opposite")
        ->check(CLI::IsMember({"definition", "opposite"}))
        ->each([&](const std::string&) { edge_op_given = true; });
    app.add_option("--verify-report", verify_path, "re-validate the witnesses of a saved report");
    app.add_option("--output", output_path, "write the machine report to a file");

    CLI11_PARSE(app, argc, argv);

    patchlab::RunOptions opts;
    opts.check = check;
    opts.format = format;
    opts.seed_suite = seed_suite;
    opts.limit_order = limit_order;
    opts.max_candidates = max_candidates;
    opts.edge_op = edge_op == "opposite" ? patchlab::EdgeOp::Opposite : patchlab::EdgeOp::Definition;
    opts.edge_op_set = edge_op_given;

    try {
        auto instance = read_json_file(instance_path);

        if (!verify_path.empty()) {
            auto report = read_json_file(verify_path);
            std::string error;
            bool ok = patchlab::verify_report(instance, report, opts, &error);
            if (ok) {
                std::cout << "report verified: all witnesses re-validated\n";
                return 0;
            }
            std::cout << "report verification FAILED: " << error << "\n";
            return 1;
        }

        auto result = patchlab::run_instance(instance, opts);
        std::string machine = result.report.dump(2) + "\n";
        if (!output_path.empty()) {
            std::ofstream out(output_path);
            out << machine;
        }
        if (format == "machine")
            std::cout << machine;
        else
            std::cout << patchlab::render_table(result.report);
        if (check && !result.check_ok) return 1;
        return 0;
    } catch (const patchlab::ResourceLimit& e) {
        json err = {{"error", {{"code", e.code()}, {"message", e.what()}, {"witness", e.witness()}}}};
        std::cerr << err.dump(2) << "\n";
        return 3;
    } catch (const patchlab::Error& e) {
        json err = {{"error", {{"code", e.code()}, {"message", e.what()}, {"witness", e.witness()}}}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err = {{"error", {{"code", "Internal"}, {"message", e.what()}}}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
}
