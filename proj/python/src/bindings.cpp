#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hfa/config.hpp"
#include "hfa/derivation.hpp"
#include "hfa/fusion.hpp"
#include "hfa/liealg.hpp"
#include "hfa/plancherel.hpp"
#include "hfa/schrodinger.hpp"
#include "hfa/suites.hpp"

namespace py = pybind11;
using namespace hfa;

namespace {

std::string rational_str(const lie::Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::vector<std::string> vector_str(const lie::RVector& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(rational_str(x));
    return out;
}

py::dict record_dict(const CheckRecord& r) {
    py::dict d;
    d["suite"] = r.suite;
    d["check"] = r.check;
    d["value"] = r.value;
    d["relation"] = to_string(r.relation);
    d["tolerance"] = r.tolerance;
    d["pass"] = r.pass;
    d["wall_seconds"] = r.wall_seconds;
    d["diagnostics"] = r.numbers;
    d["notes"] = r.notes;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fourier analysis on the Heisenberg group: compiled core";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
    py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_ValueError);
    py::register_exception<UndefinedRelativeError>(m, "UndefinedRelativeError", PyExc_ValueError);
    py::register_exception<NotApplicableError>(m, "NotApplicableError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<GridSpec1D>(m, "GridSpec1D")
        .def(py::init<std::size_t, double>(), py::arg("n_points"), py::arg("half_width"))
        .def_property_readonly("n_points", &GridSpec1D::n_points)
        .def_property_readonly("half_width", &GridSpec1D::half_width)
        .def_property_readonly("spacing", &GridSpec1D::spacing)
        .def("nodes", &GridSpec1D::nodes);

    m.def("fractional_shift_op", &fractional_shift_op, py::arg("grid"), py::arg("x"));
    m.def("modulation_op", &modulation_op, py::arg("grid"), py::arg("beta"));
    m.def("schatten_norm", [](const LinOp& a, const std::string& p) {
        if (p == "1") return schatten_norm(a, Schatten::One);
        if (p == "2") return schatten_norm(a, Schatten::Two);
        if (p == "inf") return schatten_norm(a, Schatten::Infinity);
        throw py::value_error("p must be '1', '2' or 'inf'");
    }, py::arg("a"), py::arg("p"));

    py::class_<GroupElement>(m, "GroupElement")
        .def(py::init<double, double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("z") = 0.0)
        .def_readwrite("x", &GroupElement::x)
        .def_readwrite("y", &GroupElement::y)
        .def_readwrite("z", &GroupElement::z)
        .def("__mul__", [](const GroupElement& a, const GroupElement& b) { return mul(a, b); })
        .def("inverse", [](const GroupElement& a) { return inv(a); })
        .def("__eq__", [](const GroupElement& a, const GroupElement& b) { return a == b; })
        .def("__repr__", [](const GroupElement& g) {
            std::ostringstream os;
            os << "GroupElement(" << g.x << ", " << g.y << ", " << g.z << ")";
            return os.str();
        });

    py::class_<BoxGrid3D>(m, "BoxGrid3D")
        .def(py::init<std::array<double, 3>, std::array<std::size_t, 3>>(), py::arg("half_widths"), py::arg("counts"))
        .def_property_readonly("counts", &BoxGrid3D::counts)
        .def_property_readonly("half_widths", &BoxGrid3D::half_widths)
        .def("node", &BoxGrid3D::node, py::arg("axis"), py::arg("i"));

    py::class_<ClosedForm>(m, "ClosedForm")
        .def_static("gaussian",
                    [](std::array<double, 3> sigma, std::array<double, 3> center, double carrier) {
                        return ClosedForm::gaussian(sigma, center, carrier);
                    },
                    py::arg("sigma"), py::arg("center") = std::array<double, 3>{}, py::arg("z_carrier") = 0.0)
        .def_static("witness", &nonvanishing_witness, py::arg("sigma"))
        .def("__call__", &ClosedForm::operator(), py::arg("x"), py::arg("y"), py::arg("z"))
        .def("dz", &ClosedForm::dz)
        .def("__mul__", [](const ClosedForm& a, const ClosedForm& b) { return a * b; });

    py::class_<SampledFunction3D>(m, "SampledFunction3D")
        .def_static("sample", &SampledFunction3D::sample, py::arg("grid"), py::arg("f"))
        .def_property_readonly("grid", &SampledFunction3D::grid)
        .def_property_readonly("samples", &SampledFunction3D::samples)
        .def("l2_norm_squared", &SampledFunction3D::l2_norm_squared)
        .def("max_abs", &SampledFunction3D::max_abs)
        .def("__mul__", [](const SampledFunction3D& a, const SampledFunction3D& b) { return a * b; });

    py::class_<TGrid>(m, "TGrid")
        .def(py::init<double, int>(), py::arg("delta"), py::arg("k_max"))
        .def_property_readonly("delta", &TGrid::delta)
        .def_property_readonly("k_max", &TGrid::k_max)
        .def("nodes", &TGrid::nodes);

    py::class_<OperatorField>(m, "OperatorField")
        .def_property_readonly("tgrid", &OperatorField::tgrid)
        .def_property_readonly("dim", &OperatorField::dim)
        .def("__len__", &OperatorField::size)
        .def("__getitem__", [](const OperatorField& f, std::size_t s) {
            if (s >= f.size()) throw py::index_error();
            return f[s];
        })
        .def("at_k", &OperatorField::at_k, py::arg("k"));

    m.def("rep_matrix", &rep_matrix, py::arg("t"), py::arg("g"), py::arg("grid"));
    m.def("fourier_coefficient", &fourier_coefficient, py::arg("f"), py::arg("t"), py::arg("grid"));
    m.def("forward_field", &forward_field, py::arg("f"), py::arg("tgrid"), py::arg("grid"));
    m.def("inverse_transform", &inverse_transform, py::arg("field"), py::arg("g"), py::arg("grid"));
    m.def("a_norm", &a_norm);
    m.def("m_norm", &m_norm);
    m.def("plancherel_defect", py::overload_cast<const SampledFunction3D&, const TGrid&, const GridSpec1D&>(&plancherel_defect),
          py::arg("f"), py::arg("tgrid"), py::arg("grid"));

    m.def("intertwiner", [](double r, double s, const GridSpec1D& g) { return intertwiner(r, s, g).w; },
          py::arg("r"), py::arg("s"), py::arg("grid"));
    m.def("partial_trace_second", &partial_trace_second, py::arg("r"), py::arg("n"));
    m.def("theta1", py::overload_cast<const OperatorField&, const OperatorField&, int, int, const GridSpec1D&>(&theta1),
          py::arg("F"), py::arg("G"), py::arg("kr"), py::arg("ks"), py::arg("grid"));
    m.def("dual_convolution",
          [](const OperatorField& F, const OperatorField& G, const GridSpec1D& g, double pair_tolerance) {
              return dual_convolution(F, G, g, {pair_tolerance, -1.0}).field;
          },
          py::arg("F"), py::arg("G"), py::arg("grid"), py::arg("pair_tolerance") = 0.0);

    m.def("d_z", [](const SampledFunction3D& f) { return d_z(f).f; }, py::arg("f"));
    m.def("multiplier_defect", [](const SampledFunction3D& f, const TGrid& tg, const GridSpec1D& g) {
        return multiplier_defect(f, tg, g).defect;
    }, py::arg("f"), py::arg("tgrid"), py::arg("grid"));
    m.def("leibniz_defect", &leibniz_defect, py::arg("f"), py::arg("g"));

    m.def("lower_central_series_dims", [](const std::string& path) {
        std::vector<std::size_t> dims;
        for (const auto& c : lie::lower_central_series(lie::load_structure(path)).terms) dims.push_back(c.dim());
        return dims;
    }, py::arg("path"));
    m.def("find_h3", [](const std::string& path) {
        const auto L = lie::load_structure(path);
        const auto e = lie::find_h3(L);
        py::dict d;
        d["x"] = vector_str(e.x);
        d["y"] = vector_str(e.y);
        d["z"] = vector_str(e.z);
        d["valid"] = lie::satisfies_h3(L, e);
        return d;
    }, py::arg("path"), "Embedded h3 as exact rational strings.");

    m.def("suite_names", &suite_names);
    m.def("run_suite", [](const std::string& name, const std::map<std::string, std::string>& settings, bool refinement) {
        RunConfig cfg;
        for (const auto& [k, v] : settings) apply_setting(cfg, k, v);
        validate(cfg);
        Report rep;
        {
            py::gil_scoped_release release;
            rep = run_suite(name, cfg, SuiteOptions{refinement});
        }
        py::list out;
        for (const auto& r : rep.records()) out.append(record_dict(r));
        return out;
    }, py::arg("name"), py::arg("settings") = std::map<std::string, std::string>{}, py::arg("refinement") = true);
    m.def("default_config", [] { return dump(RunConfig{}); });
}
