#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commands.h"
#include "witness_forge/catalog.h"
#include "witness_forge/contraction.h"
#include "witness_forge/duality.h"
#include "witness_forge/indecomp.h"
#include "witness_forge/poscert.h"
#include "witness_forge/serialize.h"

namespace py = pybind11;
using namespace witness_forge;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using RArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

CMatrix to_cmatrix(const CArray &a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw std::invalid_argument("expected a square 2-D array");
    const auto n = static_cast<std::size_t>(a.shape(0));
    return CMatrix(n, std::vector<cplx>(a.data(), a.data() + n * n));
}

RealMatrix to_realmatrix(const RArray &a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
    const auto r = static_cast<std::size_t>(a.shape(0)), c = static_cast<std::size_t>(a.shape(1));
    return RealMatrix(r, c, std::vector<double>(a.data(), a.data() + r * c));
}

CArray from_cmatrix(const CMatrix &m) {
    const auto n = static_cast<py::ssize_t>(m.dim());
    CArray out({n, n});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

RArray from_realmatrix(const RealMatrix &m) {
    RArray out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

NamedMap named(const std::string &name, const std::vector<double> &params) { return build_catalog(name, params); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Positive maps, entanglement witnesses and indecomposability certificates.";

    m.def("run_cli", [](const std::vector<std::string> &args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs the command line; returns (exit_code, stdout, stderr).");

    m.def("catalog_names", [] {
        std::vector<std::string> names;
        for (const auto &e : catalog_entries()) names.push_back(e.name);
        return names;
    });
    m.def("map_json", [](const std::string &name, const std::vector<double> &params) {
        return to_json(named(name, params)).dump();
    }, py::arg("name"), py::arg("params") = std::vector<double>{});

    m.def("choi_matrix", [](const std::string &name, const std::vector<double> &params) {
        return from_cmatrix(jam(named(name, params).rep).matrix());
    }, py::arg("name"), py::arg("params") = std::vector<double>{}, "Sum_ij e_ij (x) phi(e_ij)");
    m.def("apply_map", [](const std::string &name, const std::vector<double> &params, const CArray &x) {
        return from_cmatrix(named(name, params).rep.apply(to_cmatrix(x)));
    }, py::arg("name"), py::arg("params"), py::arg("x"));
    m.def("pairing", [](const CArray &rho, const std::string &name, const std::vector<double> &params) {
        return pairing(HermMatrix(to_cmatrix(rho)), named(name, params).rep);
    }, py::arg("rho"), py::arg("name"), py::arg("params") = std::vector<double>{}, "Tr(jam(phi) rho)");

    m.def("certify", [](const std::string &name, const std::vector<double> &params) {
        const NamedMap nm = named(name, params);
        json out = json::object();
        out["positive"] = nm.gen ? to_json(certify_gen_positive(*nm.gen)) : to_json(positivity_probe(nm.rep));
        out["cp"] = to_json(nm.gen ? certify_cp(*nm.gen) : certify_cp_choi(nm.rep));
        out["ccp"] = to_json(certify_ccp(nm.rep));
        out["witness"] = to_json(is_entanglement_witness(jam(nm.rep), nm.rep.d()));
        return out.dump();
    }, py::arg("name"), py::arg("params") = std::vector<double>{});

    m.def("detect_cyclic", [](const std::vector<double> &alpha) {
        const CyclicSpec spec(alpha);
        return to_json(certify_indecomposable(cyclic_gen_b(spec), spec)).dump();
    }, py::arg("alpha"), "Indecomposability certificate for the circulant map with first row alpha.");
    m.def("detector_state", [](std::size_t d, double a) { return from_cmatrix(detector_state(d, a).rho.matrix()); },
          py::arg("d"), py::arg("a"));

    m.def("cd_value", [](const RArray &a, double c, const std::vector<double> &p) {
        const RealMatrix am = to_realmatrix(a);
        return cd_value(GenMap(am.rows(), am, c), SimplexPoint(p));
    }, py::arg("a"), py::arg("c"), py::arg("p"));
    m.def("char_poly_coeffs", [](const CArray &x) { return char_poly_coeffs(to_cmatrix(x)); });
    m.def("lambda_min", [](const CArray &x) { return lambda_min(HermMatrix(to_cmatrix(x))); });
    m.def("partial_transpose", [](const CArray &x, std::size_t d1, std::size_t d2) {
        return from_cmatrix(partial_transpose(to_cmatrix(x), Dims{d1, d2}, Subsystem::second));
    }, py::arg("x"), py::arg("d1"), py::arg("d2"));

    m.def("appendix_d3", [](double l1, double l2, double p1, double p2) {
        return from_realmatrix(appendix_d3(l1, l2, p1, p2).a());
    });
    m.def("rotation_family_a", [](const RArray &r, double lambda, std::size_t d) {
        return from_realmatrix(rotation_family_a(to_realmatrix(r), lambda, d).a());
    }, py::arg("r"), py::arg("lam"), py::arg("d"));

    m.def("terhal_witness", [] {
        return to_json(terhal_witness(tiles_upb(), canonical_max_entangled(3))).dump();
    });
}
