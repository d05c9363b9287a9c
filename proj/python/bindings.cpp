#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kirigami/analysis.hpp"
#include "kirigami/dataset_io.hpp"
#include "kirigami/evaluation.hpp"
#include "kirigami/export.hpp"
#include "kirigami/lattice.hpp"
#include "kirigami/samplers.hpp"

namespace py = pybind11;
using namespace kirigami;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

CutGrid grid_from(const Array& beta, double beta_max) {
    if (beta.ndim() != 2) throw std::invalid_argument("expected a 2D array of added rotations");
    const auto rows = static_cast<int>(beta.shape(0));
    const auto cols = static_cast<int>(beta.shape(1));
    return CutGrid(rows, cols, beta_max, std::vector<double>(beta.data(), beta.data() + beta.size()));
}

Array to_array(const SampleSet& set) {
    Array out({static_cast<py::ssize_t>(set.size()), static_cast<py::ssize_t>(set.rows()),
               static_cast<py::ssize_t>(set.cols())});
    double* p = out.mutable_data();
    for (const auto& g : set.samples)
        for (double v : g.values()) *p++ = v;
    return out;
}

SampleSet set_from(const Array& samples, double beta_max, const std::string& source, std::uint64_t seed) {
    if (samples.ndim() != 3) throw std::invalid_argument("expected a (count, rows, cols) array");
    SampleSet set;
    set.beta_max = beta_max;
    set.source = parse_source(source);
    set.seed = seed;
    const auto rows = static_cast<int>(samples.shape(1));
    const auto cols = static_cast<int>(samples.shape(2));
    const std::size_t cells = static_cast<std::size_t>(rows) * cols;
    for (py::ssize_t k = 0; k < samples.shape(0); ++k) {
        const double* p = samples.data() + k * cells;
        set.samples.emplace_back(rows, cols, beta_max, std::vector<double>(p, p + cells));
    }
    return set;
}

py::dict set_dict(const SampleSet& set) {
    py::dict d;
    d["beta"] = to_array(set);
    d["beta_max"] = set.beta_max;
    d["source"] = std::string(to_string(set.source));
    d["seed"] = set.seed;
    return d;
}

TwoCutFrame frame_named(const std::string& name) {
    if (name == "absolute") return TwoCutFrame::absolute();
    if (name == "lattice") return TwoCutFrame::lattice_pair();
    throw std::invalid_argument("frame must be 'absolute' or 'lattice'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kirigami cut-lattice geometry, samplers, design-space analysis and evaluation.";

    py::register_exception<DatasetError>(m, "DatasetError", PyExc_ValueError);

    m.def("base_angle", [](int i, int j) { return base_angle(LatticeSpec{}, i, j); }, py::arg("i"),
          py::arg("j"));
    m.def("wrap_angle", &wrap_angle, py::arg("degrees"));

    m.def(
        "count_intersections",
        [](const Array& beta, double beta_max) {
            const CutGrid g = grid_from(beta, beta_max);
            return count_intersections(LatticeSpec(g.rows(), g.cols()), g);
        },
        py::arg("beta"), py::arg("beta_max") = 90.0);
    m.def(
        "is_admissible",
        [](const Array& beta, double beta_max) {
            const CutGrid g = grid_from(beta, beta_max);
            return is_admissible(LatticeSpec(g.rows(), g.cols()), g);
        },
        py::arg("beta"), py::arg("beta_max") = 90.0);

    m.def(
        "generate_dataset",
        [](double beta_max, int count, int sweeps, std::uint64_t seed) {
            SampleSet s;
            {
                py::gil_scoped_release release;
                s = generate_dataset(LatticeSpec{}, beta_max, count, sweeps, seed);
            }
            return to_array(s);
        },
        py::arg("beta_max"), py::arg("count"), py::arg("sweeps") = kDefaultSweeps, py::arg("seed"));
    m.def(
        "uniform_set",
        [](double beta_max, int count, std::uint64_t seed) {
            return to_array(uniform_set(LatticeSpec{}, beta_max, count, seed));
        },
        py::arg("beta_max"), py::arg("count"), py::arg("seed"));

    m.def(
        "write_dataset",
        [](const std::string& path, const Array& samples, double beta_max, const std::string& source,
           std::uint64_t seed) { write_dataset(set_from(samples, beta_max, source, seed), path); },
        py::arg("path"), py::arg("samples"), py::arg("beta_max"), py::arg("source") = "external",
        py::arg("seed") = 0);
    m.def("read_dataset", [](const std::string& path) { return set_dict(read_dataset(path)); },
          py::arg("path"));

    m.def("euclidean_distance", [](const std::vector<double>& x, const std::vector<double>& y) {
        return euclidean_distance(x, y);
    });
    m.def(
        "pair_intersects",
        [](double a1, double a2, const std::string& frame) { return pair_intersects(a1, a2, frame_named(frame)); },
        py::arg("a1"), py::arg("a2"), py::arg("frame") = "absolute");
    m.def(
        "nonadmissible_fraction",
        [](double beta_max, int resolution, const std::string& frame) {
            return nonadmissible_fraction(build_two_cut_map(beta_max, resolution, frame_named(frame)));
        },
        py::arg("beta_max"), py::arg("resolution") = kDefaultMapResolution, py::arg("frame") = "lattice");
    m.def(
        "path_crossing_probability",
        [](double beta_max, std::uint64_t n_pairs, std::uint64_t seed, const std::string& frame, double step) {
            ProportionEstimate e;
            {
                py::gil_scoped_release release;
                e = path_crossing_probability(beta_max, n_pairs, frame_named(frame), seed, step);
            }
            return py::make_tuple(e.value, e.lower, e.upper);
        },
        py::arg("beta_max"), py::arg("n_pairs"), py::arg("seed"), py::arg("frame") = "lattice",
        py::arg("step") = kDefaultChordStep);
    m.def(
        "admissible_path",
        [](std::pair<double, double> a, std::pair<double, double> b, double beta_max, int resolution,
           const std::string& frame) {
            const TwoCutMap map = build_two_cut_map(beta_max, resolution, frame_named(frame));
            const PathResult p = admissible_path(map, {a.first, a.second}, {b.first, b.second});
            std::vector<std::pair<double, double>> pts;
            for (const auto& v : p.polyline) pts.emplace_back(v.first, v.second);
            return py::make_tuple(p.found, p.length, pts);
        },
        py::arg("a"), py::arg("b"), py::arg("beta_max") = 90.0, py::arg("resolution") = kDefaultMapResolution,
        py::arg("frame") = "absolute");

    m.def(
        "evaluate",
        [](const std::string& path, const std::string& reference, std::uint64_t baseline_samples,
           std::uint64_t seed) {
            const SampleSet set = read_dataset(path);
            const LatticeSpec spec(set.rows(), set.cols());
            std::optional<SampleSet> ref;
            if (!reference.empty()) ref = read_dataset(reference);
            EvalOptions opts;
            opts.baseline_samples = baseline_samples;
            opts.baselines = baseline_samples > 0;
            opts.seed = seed;
            return to_json(evaluate(spec, set, ref ? &*ref : nullptr, opts)).dump();
        },
        py::arg("path"), py::arg("reference") = "", py::arg("baseline_samples") = 0, py::arg("seed") = 0,
        "Evaluate a KGS1 file; returns the report as a JSON string.");
}
