#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "erdoslab/barriers.hpp"
#include "erdoslab/consecutive.hpp"
#include "erdoslab/correlation.hpp"
#include "erdoslab/ctau.hpp"
#include "erdoslab/errors.hpp"
#include "erdoslab/llt.hpp"
#include "erdoslab/prime_constants.hpp"
#include "erdoslab/scan.hpp"
#include "erdoslab/sieve.hpp"
#include "erdoslab/smooth.hpp"

namespace py = pybind11;
using namespace erdoslab;

namespace {

MultiplicativeFn to_fn(const std::string& text) {
    const auto g = parse_multiplicative_fn(text);
    if (!g) throw std::invalid_argument("unknown multiplicative function '" + text + "'");
    return *g;
}

ArithFn to_arith(const std::string& name) {
    const auto f = parse_arith_fn(name);
    if (!f) throw std::invalid_argument("unknown function '" + name + "'");
    return *f;
}

}  // namespace

PYBIND11_MODULE(_erdoslab, m) {
    m.doc() = "Consecutive values of arithmetic functions: sieve, constants, models and scans";

    static py::exception<BudgetError> budget_error(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const BudgetError& e) {
            budget_error(e.what());
        }
    });

    py::enum_<ConstantKind>(m, "ConstantKind")
        .value("B1", ConstantKind::B1)
        .value("B2", ConstantKind::B2)
        .value("B3", ConstantKind::B3)
        .value("B4", ConstantKind::B4)
        .value("B5", ConstantKind::B5)
        .value("B6", ConstantKind::B6)
        .value("INV_P_SQ", ConstantKind::INV_P_SQ)
        .value("INV_PM1_SQ", ConstantKind::INV_PM1_SQ)
        .value("CTAU_C1", ConstantKind::CTAU_C1)
        .value("CTAU_C3", ConstantKind::CTAU_C3);
    py::enum_<SeriesKind>(m, "SeriesKind")
        .value("OMEGA_HALVES", SeriesKind::OMEGA_HALVES)
        .value("ERDOS_BORWEIN", SeriesKind::ERDOS_BORWEIN)
        .value("BIG_OMEGA_HALVES", SeriesKind::BIG_OMEGA_HALVES);
    py::enum_<ArithFn>(m, "ArithFn")
        .value("OMEGA", ArithFn::OMEGA)
        .value("BIG_OMEGA", ArithFn::BIG_OMEGA)
        .value("TAU", ArithFn::TAU);
    py::enum_<BpVariant>(m, "BpVariant")
        .value("BIG_OMEGA", BpVariant::BIG_OMEGA)
        .value("SMALL_OMEGA", BpVariant::SMALL_OMEGA);

    py::class_<FactorWindow>(m, "FactorWindow")
        .def_readonly("lo", &FactorWindow::lo)
        .def_readonly("hi", &FactorWindow::hi)
        .def_readonly("omega", &FactorWindow::omega)
        .def_readonly("big_omega", &FactorWindow::big_omega)
        .def_readonly("tau", &FactorWindow::tau)
        .def_readonly("lpf", &FactorWindow::lpf)
        .def("__len__", &FactorWindow::size);
    m.def("sieve_window", [](std::uint64_t lo, std::uint64_t hi) { return sieve_window(lo, hi); },
          py::arg("lo"), py::arg("hi"), "omega, Omega, tau and largest prime factor for lo <= n <= hi");
    m.def("factor", [](std::uint64_t n) { return factor(n).factors; }, py::arg("n"),
          "prime factorization as a list of (p, e)");

    py::class_<PrimeSumResult>(m, "PrimeSumResult")
        .def_readonly("value", &PrimeSumResult::value)
        .def_readonly("p_max", &PrimeSumResult::p_max)
        .def_readonly("tail_bound", &PrimeSumResult::tail_bound)
        .def_readonly("kind", &PrimeSumResult::kind);
    py::class_<SeriesResult>(m, "SeriesResult")
        .def_readonly("value", &SeriesResult::value)
        .def_readonly("n_terms", &SeriesResult::n_terms)
        .def_readonly("tail_bound", &SeriesResult::tail_bound)
        .def_readonly("kind", &SeriesResult::kind);
    m.def("constant", py::overload_cast<ConstantKind, std::uint64_t>(&constant), py::arg("kind"),
          py::arg("p_max"));
    m.def("all_constants", &all_constants, py::arg("p_max"));
    m.def("series", &series, py::arg("kind"), py::arg("n_terms") = 200);
    m.def("check_series_identity", &check_series_identity, py::arg("n"));

    py::class_<CtauEstimate>(m, "CtauEstimate")
        .def_readonly("point", &CtauEstimate::point)
        .def_readonly("mc_stderr", &CtauEstimate::mc_stderr)
        .def_readonly("tail_bound", &CtauEstimate::tail_bound)
        .def_readonly("p_max", &CtauEstimate::p_max)
        .def_readonly("samples", &CtauEstimate::samples)
        .def_readonly("seed", &CtauEstimate::seed);
    m.def(
        "ctau_monte_carlo",
        [](std::uint64_t p_max, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
            py::gil_scoped_release release;
            return ctau_monte_carlo(p_max, samples, seed, threads);
        },
        py::arg("p_max"), py::arg("samples"), py::arg("seed"), py::arg("threads") = 1);
    m.def("ctau_lower_c1", &ctau_lower_c1, py::arg("p_max"));
    m.def("ctau_lower_c3", &ctau_lower_c3, py::arg("p_max"));
    m.def("ctau_empirical", &ctau_empirical, py::arg("x"));
    m.def(
        "nu_match_upper",
        [](std::uint64_t x, const std::vector<std::uint32_t>& qs) { return nu_match_upper(x, qs); },
        py::arg("x"), py::arg("odd_primes"));

    py::class_<IntegerPMF>(m, "IntegerPMF")
        .def_readonly("offset", &IntegerPMF::offset)
        .def_readonly("mass", &IntegerPMF::mass)
        .def_readonly("truncated_mass", &IntegerPMF::truncated_mass)
        .def("at", &IntegerPMF::at)
        .def("total", &IntegerPMF::total)
        .def("mean", &IntegerPMF::mean)
        .def("variance", &IntegerPMF::variance);
    m.def(
        "sum_pmf", [](double w, double z, BpVariant v) { return sum_pmf(w, z, v); }, py::arg("w"),
        py::arg("z"), py::arg("variant") = BpVariant::BIG_OMEGA);
    m.def(
        "llt_deviation",
        [](double w, double z, BpVariant v) {
            const auto d = llt_deviation(w, z, v);
            return py::dict(py::arg("deviation") = d.deviation, py::arg("L") = d.L,
                            py::arg("peak") = d.peak, py::arg("argmax") = d.argmax);
        },
        py::arg("w"), py::arg("z"), py::arg("variant") = BpVariant::BIG_OMEGA);

    m.def("scan_grid", &scan_grid, py::arg("x_max"));
    m.def(
        "equal_density", [](const std::string& f, std::uint64_t x) { return equal_density(to_arith(f), x); },
        py::arg("f"), py::arg("x"));
    m.def(
        "density_scan",
        [](const std::string& f, const std::vector<std::uint64_t>& grid) {
            const ArithFn fn = to_arith(f);
            py::list out;
            for (const auto& r : density_scan(fn, grid, default_normalization(fn))) {
                out.append(py::dict(py::arg("x") = r.x, py::arg("count") = r.count,
                                    py::arg("density") = r.density,
                                    py::arg("normalized") = r.normalized ? py::object(py::float_(*r.normalized))
                                                                         : py::object(py::none()),
                                    py::arg("imputed_B") = r.imputed_B, py::arg("B_shift") = r.b_shift,
                                    py::arg("c") = r.c));
            }
            return out;
        },
        py::arg("f"), py::arg("grid"));
    m.def(
        "diff_histogram",
        [](const std::string& f, std::uint64_t x) { return diff_histogram(to_arith(f), x).counts; },
        py::arg("f"), py::arg("x"), "map m -> count");
    m.def(
        "moment_check",
        [](std::uint64_t x) {
            const auto c = moment_check(x);
            return py::dict(py::arg("mean_omega") = c.mean_omega, py::arg("mean_big_omega") = c.mean_big_omega,
                            py::arg("var_omega") = c.var_omega, py::arg("var_big_omega") = c.var_big_omega);
        },
        py::arg("x"));
    m.def(
        "neighbor_covariance",
        [](const std::string& f, std::uint64_t x) { return neighbor_covariance(to_arith(f), x); },
        py::arg("f"), py::arg("x"));

    m.def("dickman_rho", &dickman_rho, py::arg("u"), py::arg("step") = 1e-3);
    m.def("smooth_density", &smooth_density, py::arg("x"), py::arg("u"));
    m.def("pair_density", &pair_density, py::arg("x"), py::arg("u"), py::arg("v"));

    m.def(
        "two_point_correlation",
        [](const std::string& g1, const std::string& g2, std::uint64_t N, std::uint64_t W, std::uint64_t b,
           std::int64_t h1, std::int64_t h2, double delta) {
            return two_point_correlation(to_fn(g1), to_fn(g2), CorrelationQuery{N, W, b, h1, h2, delta});
        },
        py::arg("g1"), py::arg("g2"), py::arg("N"), py::arg("W") = 1, py::arg("b") = 1, py::arg("h1") = 0,
        py::arg("h2") = 1, py::arg("delta") = 0.0);
    m.def(
        "equidist_defect",
        [](const std::string& g, std::uint64_t N, double delta, std::uint64_t q_max) {
            return equidist_defect(to_fn(g), N, delta, q_max);
        },
        py::arg("g"), py::arg("N"), py::arg("delta"), py::arg("q_max"));
    m.def(
        "m_measure",
        [](const std::string& g, std::uint64_t X, std::size_t grid, std::uint64_t Q) {
            const auto r = m_measure(to_fn(g), X, grid, Q);
            return py::dict(py::arg("value") = r.value, py::arg("t") = r.t, py::arg("q") = r.q,
                            py::arg("character") = r.character, py::arg("grid_error_cap") = r.grid_error_cap);
        },
        py::arg("g"), py::arg("X"), py::arg("t_grid_size"), py::arg("Q"));

    m.def("omega_barriers", [](std::uint64_t x) { return omega_barriers(x).barriers; }, py::arg("x"));
    m.def("tau_k2_scan", [](std::uint64_t x) { return tau_k2_scan(x).barriers; }, py::arg("x"));
    m.def(
        "linear_profile",
        [](std::uint64_t x, std::uint64_t K) {
            const auto p = linear_profile(x, K);
            return py::dict(py::arg("best_C") = p.best_C, py::arg("argmin_n") = p.argmin_n,
                            py::arg("num") = p.num, py::arg("den") = p.den);
        },
        py::arg("x"), py::arg("K"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& argv) {
            std::ostringstream out, err;
            const int code = cli::run(argv, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("argv"), "Run a CLI subcommand in-process; returns (exit_code, stdout, stderr).");
}
