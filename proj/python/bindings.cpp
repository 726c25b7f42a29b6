#include "mincollector/asymptotics.hpp"
#include "mincollector/constants.hpp"
#include "mincollector/errors.hpp"
#include "mincollector/exact_moments.hpp"
#include "mincollector/simulation.hpp"
#include "mincollector/stirling.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace mincollector;

namespace {

// Big values cross the boundary as (float, decimal string) so callers can
// feed the string to mpmath or Decimal without losing digits.
py::dict number(const BigFloat& x) {
    py::dict d;
    d["value"] = x.to_double();
    d["decimal"] = x.to_string();
    return d;
}

py::tuple fraction(const mpq_class& q) {
    return py::make_tuple(py::int_(py::str(q.get_num().get_str())), py::int_(py::str(q.get_den().get_str())));
}

ArithmeticMode parse_mode(const std::string& mode) {
    if (mode == "auto") return ArithmeticMode::automatic;
    if (mode == "exact") return ArithmeticMode::exact_rational;
    if (mode == "float") return ArithmeticMode::high_precision;
    throw DomainError("mode must be 'auto', 'exact' or 'float'");
}

py::dict moments(unsigned n, unsigned p, double eps, bool second, const std::string& mode, long bits,
                 std::uint64_t budget) {
    MomentOptions options;
    options.epsilon = eps;
    options.mode = parse_mode(mode);
    options.bits = bits;
    options.work_budget = budget;
    const MomentResult r = second ? exact_second_moment(n, p, options) : exact_mean(n, p, options);
    py::dict d;
    d["N"] = r.species;
    d["p"] = r.collectors;
    d["mode"] = std::string(to_string(r.mode));
    d["precision_bits"] = static_cast<long>(r.bits);
    d["terms_used"] = r.terms_used;
    d["truncation_bound"] = r.truncation_bound;
    d["mean"] = number(r.mean);
    if (r.second_moment) {
        d["second_moment"] = number(*r.second_moment);
        d["variance"] = number(*r.variance);
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact, asymptotic and simulated moments of the minimum of p coupon collectors";
    m.attr("__version__") = MINCOLLECTOR_VERSION;

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);
    py::register_exception<WorkBudgetError>(m, "WorkBudgetError", PyExc_RuntimeError);

    m.def("exact_mean", [](unsigned n, unsigned p, double eps, const std::string& mode, long bits, std::uint64_t budget) {
        return moments(n, p, eps, false, mode, bits, budget);
    }, py::arg("N"), py::arg("p"), py::arg("eps") = 1e-12, py::arg("mode") = "auto", py::arg("bits") = kDefaultBits,
          py::arg("budget") = kDefaultWorkBudget);

    m.def("exact_second_moment", [](unsigned n, unsigned p, double eps, const std::string& mode, long bits,
                                    std::uint64_t budget) { return moments(n, p, eps, true, mode, bits, budget); },
          py::arg("N"), py::arg("p"), py::arg("eps") = 1e-12, py::arg("mode") = "auto", py::arg("bits") = kDefaultBits,
          py::arg("budget") = kDefaultWorkBudget);

    m.def("pair_closed_form_mean", [](unsigned n, std::uint64_t budget) { return fraction(pair_closed_form_mean(n, budget)); },
          py::arg("N"), py::arg("budget") = kDefaultWorkBudget, "Exact p = 2 mean as (numerator, denominator)");

    m.def("completion_cdf", [](unsigned n, std::uint64_t k) { return fraction(completion_cdf(n, k)); }, py::arg("N"),
          py::arg("k"), "P{T <= k} as (numerator, denominator)");

    m.def("stirling2", [](std::uint64_t k, unsigned n) {
        if (n == 0 || n > k) throw DomainError("need 1 <= N <= k");
        return py::int_(py::str(stirling_column(n, k).values().back().get_str()));
    }, py::arg("k"), py::arg("N"));

    py::enum_<MomentOrder>(m, "MomentOrder").value("first", MomentOrder::first).value("second", MomentOrder::second);

    m.def("truncation_index", &truncation_index, py::arg("N"), py::arg("p"), py::arg("eps"),
          py::arg("order") = MomentOrder::first);

    m.def("constants", [](unsigned p, long bits) {
        const CollectorConstants k = constants(p, bits);
        py::dict d;
        d["p"] = k.collectors;
        d["c"] = number(k.c);
        d["w"] = number(k.w);
        d["a"] = number(k.a);
        d["precision_bits"] = static_cast<long>(k.precision_bits);
        d["error_estimate"] = k.error_estimate;
        return d;
    }, py::arg("p"), py::arg("bits") = kDefaultBits);

    m.def("conjecture_scan", [](unsigned p_max, long bits) {
        const ScanReport scan = conjecture_scan(p_max, bits);
        py::list a;
        for (const ScanEntry& e : scan.entries) a.append(e.a.to_double());
        py::dict d;
        d["a"] = a;
        d["nonpositive"] = scan.nonpositive;
        d["not_decreasing"] = scan.not_decreasing;
        d["diagnostic_violations"] = scan.diagnostic_violations;
        d["precision_flags"] = scan.precision_flags;
        d["clean"] = scan.clean();
        return d;
    }, py::arg("p_max"), py::arg("bits") = kDefaultBits);

    m.def("estimate", [](unsigned n, unsigned p) {
        const AsymptoticEstimate e = estimate(n, p);
        py::dict d;
        d["mean"] = number(e.mean);
        d["second_moment"] = number(e.second_moment);
        d["variance"] = number(e.variance);
        return d;
    }, py::arg("N"), py::arg("p"));

    m.def("threshold_c_N", &threshold_c_N, py::arg("N"));

    m.def("simulate", [](unsigned n, unsigned p, std::uint64_t reps, std::uint64_t seed, const std::string& sampler) {
        SamplerMode mode = SamplerMode::inverse_transform;
        if (sampler == "bernoulli")
            mode = SamplerMode::bernoulli_loop;
        else if (sampler != "inverse")
            throw DomainError("sampler must be 'inverse' or 'bernoulli'");
        SimulationStats s;
        {
            py::gil_scoped_release release;
            s = run_simulation(n, p, reps, seed, mode);
        }
        py::dict d;
        d["mean"] = s.sample_mean;
        d["variance"] = s.sample_variance;
        d["std_error"] = s.std_error;
        d["ci95"] = py::make_tuple(s.ci95_low, s.ci95_high);
        return d;
    }, py::arg("N"), py::arg("p"), py::arg("reps"), py::arg("seed"), py::arg("sampler") = "inverse");
}
