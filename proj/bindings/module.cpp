#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"
#include "patchlab/catalog.hpp"
#include "patchlab/errors.hpp"
#include "patchlab/instance.hpp"

namespace py = pybind11;
using namespace patchlab;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null:
            return py::none();
        case json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case json::value_t::number_float:
            return py::float_(j.get<double>());
        case json::value_t::string:
            return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& v : j) out.append(json_to_py(v));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (const auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
            return out;
        }
        default:
            return py::none();
    }
}

GroupPtr group_by_name(const std::string& name) { return catalog_group(name); }

GammaGroup gamma_from_parts(const std::string& gamma, const std::string& g,
                            const std::map<int, std::vector<int>>& generator_images) {
    auto gam = catalog_group(gamma);
    auto grp = catalog_group(g);
    if (generator_images.empty()) return make_gamma_group_trivial(gam, grp);
    return make_gamma_group_on_generators(gam, grp, generator_images);
}

}  // namespace

PYBIND11_MODULE(_patchlab, m) {
    m.doc() = "Finite-model laboratory for torsor, bitorsor and gerbe patching";

    py::register_exception<ValidationError>(m, "ValidationError");
    py::register_exception<ResourceLimit>(m, "ResourceLimitError");
    py::register_exception<PreconditionFailed>(m, "PreconditionFailedError");

    py::class_<FiniteGroup>(m, "FiniteGroup")
        .def_readonly("order", &FiniteGroup::order)
        .def_readonly("identity", &FiniteGroup::identity)
        .def_readonly("name", &FiniteGroup::name)
        .def("op", &FiniteGroup::op)
        .def("inverse", &FiniteGroup::inverse)
        .def("element_order", &FiniteGroup::element_order)
        .def("is_abelian", &FiniteGroup::is_abelian)
        .def("__repr__", [](const FiniteGroup& g) {
            return "<FiniteGroup " + (g.name.empty() ? "order=" + std::to_string(g.order) : g.name) +
                   ">";
        });

    m.def("group", [](const std::string& name) { return *group_by_name(name); },
          "Look up a catalog group by name (C1..C12, V4, S3, D4, Q8, A4, ...)");
    m.def("group_names", [] {
        std::vector<std::string> names;
        for (const auto& g : group_catalog()) names.push_back(g.name);
        return names;
    });
    m.def("cyclic", &cyclic_group, py::arg("n"));
    m.def("symmetric", &symmetric_group, py::arg("degree"));
    m.def("dihedral", &dihedral_group, py::arg("n"));

    m.def("automorphism_count", [](const FiniteGroup& g) {
        return automorphism_group(make_group_ptr(g))->size();
    });
    m.def("center_order", [](const FiniteGroup& g) {
        return static_cast<int>(center(make_group_ptr(g)).elements.size());
    });
    m.def("is_complete", [](const FiniteGroup& g) {
        return patchlab::is_complete(make_group_ptr(g)).complete;
    });
    m.def("are_isomorphic", [](const FiniteGroup& a, const FiniteGroup& b) {
        return are_isomorphic_groups(a, b);
    });

    m.def(
        "bitorsor_class_count",
        [](const std::string& gamma, const std::string& g,
           const std::map<int, std::vector<int>>& action) {
            auto a = gamma_from_parts(gamma, g, action);
            return static_cast<int>(enumerate_bitorsors(a, a).size());
        },
        py::arg("gamma"), py::arg("g"), py::arg("action") = std::map<int, std::vector<int>>{},
        "Number of bitorsor isomorphism classes for a catalog pair");
    m.def(
        "h0_class_count",
        [](const std::string& gamma, const std::string& g,
           const std::map<int, std::vector<int>>& action) {
            auto a = gamma_from_parts(gamma, g, action);
            return h0_classes_inner(a).size();
        },
        py::arg("gamma"), py::arg("g"), py::arg("action") = std::map<int, std::vector<int>>{});
    m.def(
        "h1_crossed_class_count",
        [](const std::string& gamma, const std::string& g,
           const std::map<int, std::vector<int>>& action) {
            auto a = gamma_from_parts(gamma, g, action);
            return h1_crossed_classes(a).size();
        },
        py::arg("gamma"), py::arg("g"), py::arg("action") = std::map<int, std::vector<int>>{});
    m.def(
        "myles_exact",
        [](const std::string& gamma, const std::string& g,
           const std::map<int, std::vector<int>>& action) {
            auto a = gamma_from_parts(gamma, g, action);
            return myles_sequence(a).exact;
        },
        py::arg("gamma"), py::arg("g"), py::arg("action") = std::map<int, std::vector<int>>{});

    m.def("system_names", [] { return system_catalog_names(); });
    m.def("h0_orientation", &h0_orientation_name);

    m.def(
        "run",
        [](const std::string& instance_json, bool check, const std::string& edge_op) {
            RunOptions opts;
            opts.check = check;
            if (!edge_op.empty()) {
                opts.edge_op = edge_op == "opposite" ? EdgeOp::Opposite : EdgeOp::Definition;
                opts.edge_op_set = true;
            }
            auto result = run_instance(json::parse(instance_json), opts);
            py::dict out;
            out["report"] = json_to_py(result.report);
            out["check_ok"] = result.check_ok;
            return out;
        },
        py::arg("instance_json"), py::arg("check") = false, py::arg("edge_op") = "",
        "Run a patchlab-instance/1 document and return the report as a dict");
}
