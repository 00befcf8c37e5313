#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eig/harness.hpp"
#include "eig/mmio.hpp"
#include "eig/online.hpp"
#include "eig/power.hpp"
#include "eig/stream.hpp"
#include "eig/synth.hpp"

namespace py = pybind11;
using namespace eig;

namespace {

DataMatrix matrix_from_rows(const std::vector<Vec>& rows, std::size_t n_cols) {
    return DataMatrix::from_dense_rows(rows, n_cols);
}

py::dict shift_result_to_dict(const ShiftSearchResult& res) {
    py::dict out;
    out["lambda_bar"] = res.lambda_bar;
    out["lambda_tilde_1"] = res.lambda_tilde_1;
    out["lambda_tilde_2"] = res.lambda_tilde_2;
    out["gap_estimate"] = res.gap_estimate();
    out["iterations"] = res.iterations;
    return out;
}

} // namespace

PYBIND11_MODULE(_eig, m) {
    m.doc() = "Approximate top eigenvector of A^T A (offline rows) or E[aa^T] "
              "(sample stream) via the shifted-and-inverted power method";

    // translators run most-recently-registered first, so the derived
    // ParseError must be registered after the base Error
    py::register_exception<Error>(m, "EigError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<DataMatrix>(m, "DataMatrix",
                           "Sparse row matrix A; the operator of interest is "
                           "A^T A")
        .def(py::init(&matrix_from_rows), py::arg("rows"), py::arg("n_cols"))
        .def_static("load", &read_matrix_market_file, py::arg("path"),
                    "Read a Matrix Market coordinate real general file")
        .def("save", [](const DataMatrix& a, const std::string& path) {
                 write_matrix_market_file(path, a);
             }, py::arg("path"))
        .def_property_readonly("rows", &DataMatrix::rows)
        .def_property_readonly("cols", &DataMatrix::cols)
        .def_property_readonly("nnz", &DataMatrix::nnz)
        .def_property_readonly("frob_sq", &DataMatrix::frob_sq)
        .def("gram_apply", [](const DataMatrix& a, const Vec& x) {
                 return gram_apply(a, x);
             }, py::arg("x"), "Return A^T A x");

    py::class_<EigenResult>(m, "EigenResult")
        .def_readonly("vector", &EigenResult::vector)
        .def_readonly("rayleigh", &EigenResult::rayleigh)
        .def_readonly("alignment_lower_bound", &EigenResult::alignment_lower_bound)
        .def_readonly("shift_used", &EigenResult::shift_used)
        .def_readonly("lambda1_estimate", &EigenResult::lambda1_estimate)
        .def_readonly("gap_estimate", &EigenResult::gap_estimate)
        .def_readonly("accepted_count", &EigenResult::accepted_count)
        .def_readonly("rejected_count", &EigenResult::rejected_count)
        .def_readonly("converged", &EigenResult::converged)
        .def_readonly("samples_consumed", &EigenResult::samples_consumed)
        .def_readonly("diagnostics", &EigenResult::diagnostics);

    m.def("top_eigenvector",
          [](const DataMatrix& a, double epsilon, const std::string& solver,
             std::uint64_t seed) {
              PowerConfig cfg;
              cfg.target_epsilon = epsilon;
              cfg.solver_choice = solver;
              cfg.seed = seed;
              return top_eigenvector_offline(a, cfg);
          },
          py::arg("a"), py::arg("epsilon") = 1e-6, py::arg("solver") = "svrg",
          py::arg("seed") = 0,
          "Offline pipeline: shift search, burn-in, then robust warm "
          "iterations; solver is 'svrg', 'accelerated' or 'dense'");

    m.def("estimate_shift",
          [](const DataMatrix& a, double alpha, std::uint64_t seed) {
              ShiftSearchConfig cfg;
              cfg.alpha = alpha;
              DenseShiftedOracle oracle;
              Rng rng(seed);
              return shift_result_to_dict(estimate_shift(a, cfg, oracle, rng));
          },
          py::arg("a"), py::arg("alpha") = 200.0, py::arg("seed") = 0,
          "Shrinking shift search; returns lambda_bar in the band "
          "((1+gap/120) l1, (1+gap/8) l1]");

    m.def("synth_instance",
          [](std::size_t d, std::size_t n, double gap, std::uint64_t seed) {
              SynthSpec spec;
              spec.d = d;
              spec.n = n ? n : 2 * d;
              spec.spectrum = gapped_spectrum(d, gap);
              spec.seed = seed;
              return synth_instance(spec);
          },
          py::arg("d"), py::arg("n") = 0, py::arg("gap") = 0.5,
          py::arg("seed") = 0,
          "Random instance with lambda1 = 1 and lambda2 = 1 - gap");

    py::class_<SampleStream>(m, "SampleStream")
        .def("next", py::overload_cast<>(&SampleStream::next))
        .def_property_readonly("dim", &SampleStream::dim)
        .def_property_readonly("nvar_bound", &SampleStream::nvar_bound)
        .def_property_readonly("samples_drawn", &SampleStream::samples_drawn);

    py::class_<SpikeStream, SampleStream>(m, "SpikeStream")
        .def(py::init([](double lambda_s, Vec v_star, std::uint64_t seed) {
                 SpikeModelParams p;
                 p.lambda_s = lambda_s;
                 p.v_star = std::move(v_star);
                 p.seed = seed;
                 return SpikeStream(p);
             }),
             py::arg("lambda_s"), py::arg("v_star"), py::arg("seed") = 0)
        .def_property_readonly("lambda1", &SpikeStream::lambda1)
        .def_property_readonly("gap", &SpikeStream::gap);

    py::class_<ReplayStream, SampleStream>(m, "ReplayStream")
        .def_static("from_binary_file", &ReplayStream::from_binary_file,
                    py::arg("path"))
        .def_static("from_csv_file", &ReplayStream::from_csv_file,
                    py::arg("path"))
        .def_property_readonly("remaining", &ReplayStream::remaining);

    m.def("estimate_rayleigh",
          [](SampleStream& stream, const Vec& x, double eps, double p) {
              return estimate_rayleigh_online(stream, x, eps, p);
          },
          py::arg("stream"), py::arg("x"), py::arg("eps"), py::arg("p"),
          "Median-of-means estimate of x^T E[aa^T] x, accurate to eps*lambda1 "
          "with probability 1 - p");

    m.def("top_eigenvector_online",
          [](SampleStream& stream, const Vec& x0_warm, double lam,
             double lambda1_hat, double epsilon, double delta,
             std::optional<long long> sample_budget, std::uint64_t seed) {
              OnlinePowerConfig cfg;
              cfg.target_epsilon = epsilon;
              cfg.delta = delta;
              cfg.sample_budget = sample_budget;
              Rng rng(seed);
              return top_eigenvector_online(stream, x0_warm, lam, lambda1_hat,
                                            cfg, rng);
          },
          py::arg("stream"), py::arg("x0_warm"), py::arg("lam"),
          py::arg("lambda1_hat"), py::arg("epsilon") = 0.01,
          py::arg("delta") = 0.1, py::arg("sample_budget") = py::none(),
          py::arg("seed") = 0,
          "Streaming warm-start power method on E[aa^T]; x0_warm must already "
          "be well aligned with the top eigenvector");

    m.def("run_harness",
          [](const std::string& spec_json) {
              RunSpec spec = run_spec_from_json(nlohmann::json::parse(spec_json));
              return execute_run(spec).dump(2);
          },
          py::arg("spec_json"),
          "Execute a full CLI-equivalent run from a JSON spec string and "
          "return the result record as JSON");
}
