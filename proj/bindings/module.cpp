#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "soliton/cartan.hpp"
#include "soliton/dressing.hpp"
#include "soliton/mkdv.hpp"
#include "soliton/reduction.hpp"
#include "soliton/toda.hpp"

namespace py = pybind11;
using namespace soliton;

namespace {

std::vector<DiffPoly> flow_images(int n_matrix, int flow)
{
    Algebra alg = make_sl(n_matrix);
    return mkdv_flow(alg, flow).derivation.images;
}

std::vector<DiffPoly> kdv_images(int n_matrix, int flow)
{
    Algebra alg = make_sl(n_matrix);
    return kdv_flow(alg, flow).images;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "exact-arithmetic engine for generalized mKdV/KdV hierarchies";

    py::class_<DiffPoly>(m, "DiffPoly")
        .def(py::init([](int rank) { return DiffPoly::zero(rank); }), py::arg("rank"))
        .def_static(
            "variable",
            [](int rank, int var, int der) { return DiffPoly::variable(rank, var, der); },
            py::arg("rank"), py::arg("var"), py::arg("der") = 0)
        .def_static(
            "constant",
            [](int rank, const std::string &c) {
                return DiffPoly::constant(rank, parse_rational(c));
            },
            py::arg("rank"), py::arg("value"))
        .def_static(
            "from_json",
            [](const std::string &text, int rank) { return DiffPoly::from_json(text, rank); },
            py::arg("json"), py::arg("rank"))
        .def_property_readonly("rank", &DiffPoly::rank)
        .def("is_zero", &DiffPoly::is_zero)
        .def("degree", &DiffPoly::degree)
        .def("d_z", [](const DiffPoly &p, int times) { return d_z(p, times); },
             py::arg("times") = 1)
        .def("partial", &DiffPoly::partial, py::arg("var"), py::arg("der"))
        .def("antiderivative", [](const DiffPoly &p) { return antiderivative(p); })
        .def("text", [](const DiffPoly &p, const std::string &v) { return p.to_text(v); },
             py::arg("letter") = "u")
        .def("latex", [](const DiffPoly &p, const std::string &v) { return p.to_latex(v); },
             py::arg("letter") = "u")
        .def("to_json", &DiffPoly::to_json)
        .def("__add__", [](const DiffPoly &a, const DiffPoly &b) { return a + b; })
        .def("__sub__", [](const DiffPoly &a, const DiffPoly &b) { return a - b; })
        .def("__neg__", [](const DiffPoly &a) { return -a; })
        .def("__mul__", [](const DiffPoly &a, const DiffPoly &b) { return a * b; })
        .def("__mul__",
             [](const DiffPoly &a, const std::string &c) { return a * parse_rational(c); })
        .def("__mul__", [](const DiffPoly &a, long c) { return a * Rational(c); })
        .def("__rmul__", [](const DiffPoly &a, long c) { return a * Rational(c); })
        .def("__eq__", [](const DiffPoly &a, const DiffPoly &b) { return a == b; })
        .def("__repr__", [](const DiffPoly &p) { return p.to_text(); });

    m.def("table_json", [](const std::string &name) { return cartan_to_json(cartan_data(name)); },
          py::arg("algebra"), "affine table row as a JSON string");
    m.def(
        "exponent_sequence",
        [](const std::string &name, int bound) {
            return exponent_sequence(cartan_data(name), bound);
        },
        py::arg("algebra"), py::arg("bound"));

    m.def("mkdv_flow", &flow_images, py::arg("n"), py::arg("flow"),
          "images of d_flow on the mKdV variables u_i for sl_n");
    m.def("kdv_flow", &kdv_images, py::arg("n"), py::arg("flow"),
          "images of d_flow on the KdV variables s_i for sl_n");
    m.def(
        "miura", [](int n) { return miura(make_sl(n)); }, py::arg("n"),
        "KdV variables as differential polynomials in the u_i");
    m.def(
        "screening",
        [](int n, int i, const DiffPoly &p) { return apply_screening(make_sl(n), i, p); },
        py::arg("n"), py::arg("i"), py::arg("poly"),
        "apply the i-th screening vector field");
    m.def(
        "conserved_density",
        [](int n, int m) {
            Algebra alg = make_sl(n);
            ConservedDensity cd = find_integrals(alg, m);
            Rational c = verify_hamiltonian(alg, m);
            return py::make_tuple(cd.density, rational_to_string(c));
        },
        py::arg("n"), py::arg("degree"),
        "Toda conserved density of the given degree and the scalar tying its "
        "hamiltonian field to the flow");
    m.def(
        "poisson_bracket",
        [](int n, const DiffPoly &left, const DiffPoly &right) {
            Algebra alg = make_sl(n);
            return poisson_bracket(alg, functional0(alg, left), functional0(alg, right))
                .representative;
        },
        py::arg("n"), py::arg("left"), py::arg("right"),
        "canonical representative of the bracket of two weight-zero functionals");
    m.def(
        "gamma_rank", [](int n) { return gamma_vectors(make_sl(n)).second; }, py::arg("n"));
    m.def(
        "dressing_matches_recursion",
        [](int n, int flow) {
            Algebra alg = make_sl(n);
            DressingOperator d = dressing_operator(alg, flow + 1);
            LoopElement conj = conjugated_generator(alg, d, flow);
            ZeroCurvatureSolution sol = solve_canonical(alg, flow, 1);
            for (int deg = -flow; deg <= std::min(1, d.cutoff - flow); ++deg)
                if (!(conj.component(deg) == sol.components.at(deg)))
                    return false;
            return true;
        },
        py::arg("n"), py::arg("flow"),
        "componentwise equality of the two constructions of K p_{-n} K^{-1}");
}
