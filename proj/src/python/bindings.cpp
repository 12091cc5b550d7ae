#include "kwise/construction.hpp"
#include "kwise/family_io.hpp"
#include "kwise/search.hpp"
#include "kwise/setcore.hpp"
#include "kwise/verifier.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace kwise;

namespace {

Family make_family(int n, std::vector<Mask> members) { return Family(Universe(n), std::move(members)); }

py::dict partition_dict(const BlockPartition& bp)
{
    py::dict d;
    d["n"] = bp.universe.size();
    d["blocks"] = bp.blocks;
    d["specials"] = bp.specials;
    return d;
}

BlockPartition partition_arg(const Family& f, int k, const std::optional<std::vector<Mask>>& blocks)
{
    if (blocks)
        return partition_from_blocks(f.universe(), *blocks);
    return make_partition({k, f.universe().size()});
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Maximal k-wise intersecting families: construction, verification and search";

    py::register_exception<UniverseTooLarge>(m, "UniverseTooLarge", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    py::class_<Family>(m, "Family")
        .def(py::init(&make_family), py::arg("n"), py::arg("members") = std::vector<Mask>{})
        .def_property_readonly("n", [](const Family& f) { return f.universe().size(); })
        .def_property_readonly("members", &Family::members)
        .def("__len__", &Family::size)
        .def("__contains__", &Family::contains)
        .def("__iter__", [](const Family& f) { return py::make_iterator(f.begin(), f.end()); },
             py::keep_alive<0, 1>())
        .def(py::self == py::self)
        .def("__repr__", [](const Family& f) {
            return "<Family n=" + std::to_string(f.universe().size()) + " size=" + std::to_string(f.size()) + ">";
        });

    m.def("parse_family", [](const std::string& text) {
        std::istringstream in(text);
        return read_family(in);
    });
    m.def("format_family", [](const Family& f) {
        std::ostringstream out;
        write_family(out, f);
        return out.str();
    });

    m.def("complement_family", &complement_family);
    m.def("is_downset", &is_downset);
    m.def("downset_closure", &downset_closure);
    m.def("maximal_elements", &maximal_elements);
    m.def("make_star", [](int n) { return make_star(Universe(n)); });
    m.def(
        "cover_table",
        [](const Family& f, int limit) {
            const CoverTable t(f, limit);
            std::vector<int> out;
            out.reserve(t.entries().size());
            for (std::uint8_t v : t.entries())
                out.push_back(v == CoverTable::none ? -1 : v);
            return out;
        },
        py::arg("family"), py::arg("limit"), "Per-mask minimum exact-union cover size; -1 if above limit.");
    m.def(
        "can_cover",
        [](const Family& f, Mask target, int j, const std::string& backend) {
            return can_cover(f, target, j, parse_backend(backend));
        },
        py::arg("family"), py::arg("target"), py::arg("j"), py::arg("backend") = "auto");

    m.def("make_partition", [](int k, int n) { return partition_dict(make_partition({k, n})); });
    m.def("build_f1", [](int k, int n, int i) { return build_f1(make_partition({k, n}), i); });
    m.def("build_f2", [](int k, int n, int i) { return build_f2(make_partition({k, n}), i); });
    m.def(
        "build_family",
        [](int k, int n) {
            ConstructedFamily c = build_family({k, n});
            return py::make_tuple(c.f, c.fbar);
        },
        "Returns (F, Fbar): the complement-world family and its direct-world complement.");
    m.def("expected_size", [](int k, int n) { return expected_size({k, n}); });

    py::class_<Verdict>(m, "Verdict")
        .def_readonly("ok", &Verdict::ok)
        .def_readonly("complement_downset", &Verdict::complement_downset)
        .def_property_readonly("kind",
                               [](const Verdict& v) -> std::optional<std::string> {
                                   if (v.not_kwise())
                                       return "cover";
                                   if (v.not_saturated())
                                       return "gap";
                                   return std::nullopt;
                               })
        .def_property_readonly("cover",
                               [](const Verdict& v) -> std::optional<std::vector<Mask>> {
                                   if (const auto* c = std::get_if<CoverWitness>(&v.witness))
                                       return c->members;
                                   return std::nullopt;
                               })
        .def_property_readonly("candidate", [](const Verdict& v) -> std::optional<Mask> {
            if (const auto* g = std::get_if<GapWitness>(&v.witness))
                return g->candidate;
            return std::nullopt;
        });

    m.def(
        "check_kwise",
        [](const Family& g, int k, const std::string& backend) {
            return check_kwise(g, k, {parse_backend(backend), 0});
        },
        py::arg("family"), py::arg("k"), py::arg("backend") = "auto", py::call_guard<py::gil_scoped_release>());
    m.def(
        "check_saturated",
        [](const Family& g, int k, const std::string& backend) {
            return check_saturated(g, k, {parse_backend(backend), 0});
        },
        py::arg("family"), py::arg("k"), py::arg("backend") = "auto", py::call_guard<py::gil_scoped_release>());
    m.def(
        "is_maximal_kwise",
        [](const Family& f, int k, const std::string& world, const std::string& backend) {
            return is_maximal_kwise(f, k, parse_world(world), {parse_backend(backend), 0});
        },
        py::arg("family"), py::arg("k"), py::arg("world") = "complement", py::arg("backend") = "auto",
        py::call_guard<py::gil_scoped_release>());
    m.def("verify_witness", &verify_witness, py::arg("verdict"), py::arg("family"), py::arg("k"));

    m.def("enumerate_downsets", [](int n) { return enumerate_downsets(Universe(n)); });
    m.def("oracle_min_size", [](int k, int n) {
        const OracleResult r = oracle_min_size(k, Universe(n));
        py::dict d;
        d["k"] = r.k;
        d["n"] = r.n;
        d["f"] = r.min_size;
        d["extremal_count"] = r.extremal_count;
        d["maximal_count"] = r.maximal_count;
        d["sample_extremal"] = r.sample_extremal;
        return d;
    });
    m.def(
        "greedy_saturate",
        [](const Family& g0, int k, std::uint64_t seed, const std::string& order) {
            return greedy_saturate(g0, k, seed, parse_order(order));
        },
        py::arg("start"), py::arg("k"), py::arg("seed"), py::arg("order") = "random",
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "cube_distance",
        [](const Family& f, int k, const std::optional<std::vector<Mask>>& blocks) {
            const CubeReport r = cube_distance(f, partition_arg(f, k, blocks));
            py::dict d;
            d["partition"] = partition_dict(r.partition);
            d["q_size"] = r.q_size;
            d["distance"] = r.distance;
            return d;
        },
        py::arg("family"), py::arg("k"), py::arg("blocks") = py::none());
    m.def(
        "size_table",
        [](int k_min, int k_max, int n_min, int n_max, int runs, std::uint64_t seed) {
            TableOptions o;
            o.k_min = k_min;
            o.k_max = k_max;
            o.n_min = n_min;
            o.n_max = n_max;
            o.runs = runs;
            o.seed = seed;
            py::list rows;
            for (const SizeRow& r : size_table(o)) {
                py::dict d;
                d["k"] = r.k;
                d["n"] = r.n;
                d["construction"] = r.construction;
                d["formula"] = r.formula;
                d["oracle"] = r.oracle;
                d["greedy_min"] = r.greedy_min;
                rows.append(d);
            }
            return rows;
        },
        py::arg("k_min"), py::arg("k_max"), py::arg("n_min"), py::arg("n_max"), py::arg("runs") = 3,
        py::arg("seed") = 1);
}
