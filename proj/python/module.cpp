// Python bindings for the main operations: surface-group words and twists,
// the octagon hyperbolization, Toledo invariants, translation lengths, the
// parallel-set metric with its causal order, and orbit probes.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symplab/io.hpp"
#include "symplab/lab.hpp"

namespace py = pybind11;
using namespace symplab;

namespace {

words::Word to_word(const std::vector<int>& letters, int genus) {
    return words::Word(std::vector<words::Letter>(letters.begin(), letters.end()),
                       genus);
}

reps::MaximalRep make_rep(const std::string& kind, int n) {
    const Config cfg;
    const auto h = hyp::octagon_hyperbolization();
    if (kind == "diagonal")
        return reps::compose_rep(h, reps::diagonal_embedding(n), cfg);
    if (kind == "irreducible")
        return reps::compose_rep(h, reps::irreducible_embedding(n), cfg);
    throw std::invalid_argument("rep kind must be 'diagonal' or 'irreducible'");
}

}  // namespace

PYBIND11_MODULE(_symplab, m) {
    m.doc() = "symplectic representation laboratory";

    m.def("free_reduce", [](const std::vector<int>& letters, int genus) {
        std::vector<int> out;
        for (auto l : to_word(letters, genus).letters) out.push_back(l);
        return out;
    }, py::arg("letters"), py::arg("genus") = 2,
       "freely reduce a word given as signed generator indices");

    m.def("relator", [](int genus) {
        std::vector<int> out;
        for (auto l : words::Presentation(genus).relator().letters) out.push_back(l);
        return out;
    }, py::arg("genus") = 2);

    m.def("apply_twist", [](const std::string& label,
                            const std::vector<int>& letters, int power) {
        const auto w = words::apply_power(words::builtin_twist(2, label),
                                          to_word(letters, 2), power);
        return std::vector<int>(w.letters.begin(), w.letters.end());
    }, py::arg("label"), py::arg("letters"), py::arg("power") = 1,
       "apply a power of a built-in genus-2 Dehn twist");

    m.def("curve_system", [] {
        const auto cs = words::curve_system(2);
        std::vector<std::pair<std::string, std::vector<int>>> out;
        for (std::size_t i = 0; i < cs.curves.size(); ++i)
            out.push_back({cs.labels[i], std::vector<int>(cs.curves[i].letters.begin(),
                                                          cs.curves[i].letters.end())});
        return out;
    });

    m.def("octagon_generators", [] {
        const auto h = hyp::octagon_hyperbolization();
        std::vector<Eigen::Matrix2d> out(h.images.begin(), h.images.end());
        return out;
    }, "generator images of the genus-2 octagon hyperbolization");

    m.def("translation_length_h", [](const std::vector<int>& letters) {
        static const auto h = hyp::octagon_hyperbolization();
        return hyp::translation_length_h(h, to_word(letters, 2));
    }, py::arg("letters"));

    m.def("toledo", [](const std::string& kind, int n) {
        const Config cfg;
        return reps::toledo(make_rep(kind, n), cfg);
    }, py::arg("kind"), py::arg("n"),
       "Toledo invariant of the octagon composed with an embedding");

    m.def("milnor_wood_bound", [](int n, int genus) { return n * (2 * genus - 2); },
          py::arg("n"), py::arg("genus") = 2);

    m.def("is_maximal", [](const std::string& kind, int n) {
        const Config cfg;
        return reps::is_maximal(make_rep(kind, n), cfg);
    }, py::arg("kind"), py::arg("n"));

    m.def("translation_length_sp", [](const std::string& kind, int n,
                                      const std::vector<int>& letters) {
        const Config cfg;
        const auto t =
            reps::translation_length_sp(make_rep(kind, n), to_word(letters, 2), cfg);
        return py::make_tuple(t.value, t.lower_bound);
    }, py::arg("kind"), py::arg("n"), py::arg("letters"),
       "displacement infimum on the parallel set and its certified lower bound");

    m.def("d_y", [](const Matrix& z1, const Matrix& z2) {
        const Config cfg;
        return sp::d_y(sp::make_posdef(z1, cfg.tol), sp::make_posdef(z2, cfg.tol));
    }, py::arg("z1"), py::arg("z2"));

    m.def("d_proof", [](const Matrix& z1, const Matrix& z2) {
        const Config cfg;
        return sp::d_proof(sp::make_posdef(z1, cfg.tol), sp::make_posdef(z2, cfg.tol));
    });

    m.def("in_cone", [](const Matrix& z1, const Matrix& z2) {
        const Config cfg;
        return sp::in_cone(sp::make_posdef(z1, cfg.tol), sp::make_posdef(z2, cfg.tol));
    });

    m.def("causal_bound_check", [](const std::vector<Matrix>& samples) {
        const Config cfg;
        std::vector<sp::PosDefForm> forms;
        for (const auto& z : samples) forms.push_back(sp::make_posdef(z, cfg.tol));
        const auto r = sp::check_causal_bound(sp::make_causal_curve(std::move(forms)));
        py::dict out;
        out["length_literal"] = r.length_literal;
        out["bound_literal"] = r.bound_literal;
        out["length_proof"] = r.length_proof;
        out["bound_proof"] = r.bound_proof;
        out["pass"] = r.pass;
        return out;
    }, py::arg("samples"),
       "length vs n*d for a piecewise-linear causal curve, both conventions");

    m.def("orbit_sums", [](const std::string& kind, int n, const std::string& twist,
                           int kmax) {
        const Config cfg;
        const auto h = hyp::octagon_hyperbolization();
        const auto rho = make_rep(kind, n);
        const auto probe = lab::orbit_probe(
            rho,
            twist == "id" ? words::identity_automorphism(2)
                          : words::builtin_twist(2, twist),
            words::curve_system(2), kmax, cfg);
        return probe.sums;
    }, py::arg("kind"), py::arg("n"), py::arg("twist"), py::arg("kmax") = 10,
       "summed translation lengths along a twist orbit");

    m.attr("__version__") = "0.1.0";
}
