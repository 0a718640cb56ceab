#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entrolab/analytic.hpp"
#include "entrolab/bounds.hpp"
#include "entrolab/certify.hpp"
#include "entrolab/errors.hpp"
#include "entrolab/moments.hpp"
#include "entrolab/pmf.hpp"

namespace py = pybind11;
using namespace entrolab;

namespace {

// pybind11's stl.h caster needs a default-constructible variant, and none of
// the analytic families has a default constructor.  Dispatch by hand.
AnalyticDistribution as_dist(const py::handle& obj) {
  if (py::isinstance<Zeta>(obj)) return obj.cast<Zeta>();
  if (py::isinstance<TwoLevel>(obj)) return obj.cast<TwoLevel>();
  if (py::isinstance<MixtureOfUniforms>(obj))
    return obj.cast<MixtureOfUniforms>();
  throw py::type_error("expected Zeta, TwoLevel, or MixtureOfUniforms");
}

}  // namespace

PYBIND11_MODULE(_entrolab, m) {
  m.doc() = "plug-in entropy estimates with empirical error certificates";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const NumericError& e) {
      PyErr_SetString(PyExc_ArithmeticError, e.what());
    }
  });

  py::class_<Pmf>(m, "Pmf")
      .def(py::init<std::vector<double>>(), py::arg("masses"))
      .def_static("uniform", &Pmf::uniform, py::arg("k"))
      .def("size", &Pmf::size)
      .def("masses", &Pmf::masses)
      .def("entropy", &Pmf::entropy)
      .def("information_moment", &Pmf::information_moment, py::arg("alpha"))
      .def("sorted_desc", &Pmf::sorted_desc);

  py::class_<EmpiricalMeasure>(m, "EmpiricalMeasure")
      .def(py::init<std::map<std::int64_t, std::int64_t>, std::int64_t>(),
           py::arg("counts"), py::arg("n"))
      .def_static("from_samples", &EmpiricalMeasure::from_samples,
                  py::arg("samples"))
      .def("n", &EmpiricalMeasure::n)
      .def("counts", &EmpiricalMeasure::counts)
      .def("entropy", &EmpiricalMeasure::entropy)
      .def("information_moment", &EmpiricalMeasure::information_moment,
           py::arg("alpha"))
      .def("sum_sqrt", &EmpiricalMeasure::sum_sqrt);

  py::class_<Zeta>(m, "Zeta")
      .def(py::init<double>(), py::arg("q"))
      .def("q", &Zeta::q)
      .def("norm", &Zeta::norm)
      .def("mass", &Zeta::mass, py::arg("k"))
      .def("entropy", &Zeta::entropy)
      .def("information_moment", &Zeta::information_moment, py::arg("alpha"))
      .def("entropy_below", &Zeta::entropy_below, py::arg("eps"));

  py::class_<TwoLevel>(m, "TwoLevel")
      .def(py::init<double, std::int64_t, double>(), py::arg("heavy"),
           py::arg("light_count"), py::arg("light_mass"))
      .def("heavy", &TwoLevel::heavy)
      .def("light_count", &TwoLevel::light_count)
      .def("light_mass", &TwoLevel::light_mass)
      .def("mass", &TwoLevel::mass, py::arg("symbol"))
      .def("entropy", &TwoLevel::entropy)
      .def("information_moment", &TwoLevel::information_moment,
           py::arg("alpha"))
      .def("entropy_below", &TwoLevel::entropy_below, py::arg("eps"));

  py::class_<MixtureOfUniforms>(m, "MixtureOfUniforms")
      .def(py::init<std::int64_t, std::int64_t, double>(), py::arg("d"),
           py::arg("D"), py::arg("p"))
      .def("d", &MixtureOfUniforms::d)
      .def("D", &MixtureOfUniforms::D)
      .def("p", &MixtureOfUniforms::p)
      .def("mass", &MixtureOfUniforms::mass, py::arg("symbol"))
      .def("entropy", &MixtureOfUniforms::entropy)
      .def("information_moment", &MixtureOfUniforms::information_moment,
           py::arg("alpha"))
      .def("entropy_below", &MixtureOfUniforms::entropy_below, py::arg("eps"));

  py::class_<BoundBreakdown>(m, "BoundBreakdown")
      .def_readonly("name", &BoundBreakdown::name)
      .def_readonly("value", &BoundBreakdown::value)
      .def_readonly("terms", &BoundBreakdown::terms)
      .def_readonly("preconditions", &BoundBreakdown::preconditions);

  py::class_<EntropyCertificate>(m, "EntropyCertificate")
      .def_readonly("estimate", &EntropyCertificate::estimate)
      .def_readonly("radius", &EntropyCertificate::radius)
      .def_readonly("alpha", &EntropyCertificate::alpha)
      .def_readonly("h", &EntropyCertificate::h)
      .def_readonly("delta", &EntropyCertificate::delta)
      .def_readonly("n", &EntropyCertificate::n)
      .def_readonly("breakdown", &EntropyCertificate::breakdown)
      .def_readonly("candidates", &EntropyCertificate::candidates);

  py::class_<AlphaOptimum>(m, "AlphaOptimum")
      .def_readonly("alpha_star", &AlphaOptimum::alpha_star)
      .def_readonly("value", &AlphaOptimum::value);

  py::class_<SandwichResult>(m, "SandwichResult")
      .def_readonly("eps_star", &SandwichResult::eps_star)
      .def_readonly("deficit", &SandwichResult::deficit);

  py::class_<MinimaxLower>(m, "MinimaxLower")
      .def_readonly("h", &MinimaxLower::h)
      .def_readonly("bound", &MinimaxLower::bound);

  py::class_<NoEmpPair>(m, "NoEmpPair")
      .def_readonly("n", &NoEmpPair::n)
      .def_readonly("h", &NoEmpPair::h)
      .def_readonly("a_n", &NoEmpPair::a_n)
      .def_readonly("log_s", &NoEmpPair::log_s)
      .def_readonly("s", &NoEmpPair::s)
      .def_readonly("mu0", &NoEmpPair::mu0)
      .def_readonly("mun", &NoEmpPair::mun)
      .def_readonly("kl", &NoEmpPair::kl)
      .def_readonly("entropy_mun", &NoEmpPair::entropy_mun)
      .def_readonly("risk_floor", &NoEmpPair::risk_floor);

  py::class_<MaxAlphaEntropy>(m, "MaxAlphaEntropy")
      .def_readonly("maximizer", &MaxAlphaEntropy::maximizer)
      .def_readonly("value", &MaxAlphaEntropy::value)
      .def_readonly("note", &MaxAlphaEntropy::note);

  m.def("plug_in_entropy", &plug_in_entropy, py::arg("emp"));
  m.def("certificate", &certificate, py::arg("emp"), py::arg("alpha"),
        py::arg("h"), py::arg("delta"));
  m.def("certificate_best_alpha", &certificate_best_alpha, py::arg("emp"),
        py::arg("h_of_alpha"), py::arg("delta"), py::arg("alpha_grid"));
  m.def("certificate_json", &certificate_json, py::arg("cert"));
  m.def("ingest", &ingest, py::arg("path"), py::arg("format"));

  m.def("l1_distance",
        py::overload_cast<const Pmf&, const Pmf&>(&l1_distance), py::arg("p"),
        py::arg("q"));
  m.def("l1_distance",
        [](const py::object& dist, const EmpiricalMeasure& emp) {
          return l1_distance(as_dist(dist), emp);
        },
        py::arg("dist"), py::arg("emp"));
  m.def("tv_distance", &tv_distance, py::arg("p"), py::arg("q"));
  m.def("linf_distance",
        py::overload_cast<const Pmf&, const Pmf&>(&linf_distance),
        py::arg("p"), py::arg("q"));
  m.def("linf_distance",
        [](const py::object& dist, const EmpiricalMeasure& emp) {
          return linf_distance(as_dist(dist), emp);
        },
        py::arg("dist"), py::arg("emp"));
  m.def("lp_norm", &lp_norm, py::arg("values"), py::arg("p"));
  m.def("kl_divergence",
        py::overload_cast<const Pmf&, const Pmf&>(&kl_divergence),
        py::arg("p"), py::arg("q"));
  m.def("kl_divergence",
        [](const py::object& p, const py::object& q) {
          return kl_divergence(as_dist(p), as_dist(q));
        },
        py::arg("p"), py::arg("q"));

  m.def("entropy",
        [](const py::object& dist) { return entropy(as_dist(dist)); },
        py::arg("dist"));
  m.def("information_moment",
        [](const py::object& dist, double alpha) {
          return information_moment(as_dist(dist), alpha);
        },
        py::arg("dist"), py::arg("alpha"));
  m.def("sample",
        py::overload_cast<const Pmf&, std::int64_t, std::uint64_t>(&sample),
        py::arg("dist"), py::arg("n"), py::arg("seed"));
  m.def("sample",
        [](const py::object& dist, std::int64_t n, std::uint64_t seed) {
          return sample(as_dist(dist), n, seed);
        },
        py::arg("dist"), py::arg("n"), py::arg("seed"));

  m.def("phi_alpha", &phi_alpha, py::arg("z"), py::arg("alpha"));
  m.def("phi_alpha_max", &phi_alpha_max, py::arg("alpha"));
  m.def("max_alpha_entropy_bounds", &max_alpha_entropy_bounds, py::arg("k"),
        py::arg("alpha"));
  m.def("max_alpha_entropy_exact", &max_alpha_entropy_exact, py::arg("k"),
        py::arg("alpha"));

  m.def("ckw_l1_radius", &ckw_l1_radius, py::arg("emp"), py::arg("delta"));
  m.def("ct_bound", &ct_bound, py::arg("t"), py::arg("d"));
  m.def("dimfree_bound",
        [](double l1, double h_mu, double h_nu, double alpha) {
          DimfreeBound b = dimfree_bound(l1, h_mu, h_nu, alpha);
          return std::make_pair(b.tight, b.loose);
        },
        py::arg("l1"), py::arg("h_mu"), py::arg("h_nu"), py::arg("alpha"));
  m.def("lambda_n",
        py::overload_cast<const Pmf&, std::int64_t>(&lambda_n),
        py::arg("dist"), py::arg("n"));
  m.def("lambda_n",
        [](const py::object& dist, std::int64_t n) {
          return lambda_n(as_dist(dist), n);
        },
        py::arg("dist"), py::arg("n"));
  m.def("expected_gap_bound",
        py::overload_cast<const Pmf&, std::int64_t, double>(
            &expected_gap_bound),
        py::arg("dist"), py::arg("n"), py::arg("alpha"));
  m.def("expected_gap_bound",
        [](const py::object& dist, std::int64_t n, double alpha) {
          return expected_gap_bound(as_dist(dist), n, alpha);
        },
        py::arg("dist"), py::arg("n"), py::arg("alpha"));
  m.def("wy_bound", &wy_bound, py::arg("d"), py::arg("D"), py::arg("n"),
        py::arg("c") = 2.0);
  m.def("our_rate_bound",
        py::overload_cast<const Pmf&, std::int64_t, std::int64_t>(
            &our_rate_bound),
        py::arg("dist"), py::arg("support_bound"), py::arg("n"));
  m.def("our_rate_bound",
        [](const py::object& dist, std::int64_t support_bound,
           std::int64_t n) {
          return our_rate_bound(as_dist(dist), support_bound, n);
        },
        py::arg("dist"), py::arg("support_bound"), py::arg("n"));
  m.def("ct_rate_bound",
        py::overload_cast<const Pmf&, std::int64_t, std::int64_t>(
            &ct_rate_bound),
        py::arg("dist"), py::arg("support_size"), py::arg("n"));
  m.def("ct_rate_bound",
        [](const py::object& dist, std::int64_t support_size,
           std::int64_t n) {
          return ct_rate_bound(as_dist(dist), support_size, n);
        },
        py::arg("dist"), py::arg("support_size"), py::arg("n"));
  m.def("sandwich_lower_bound",
        py::overload_cast<const Pmf&, std::int64_t,
                          const std::vector<double>&>(&sandwich_lower_bound),
        py::arg("dist"), py::arg("n"), py::arg("epsilon_grid"));
  m.def("sandwich_lower_bound",
        [](const py::object& dist, std::int64_t n,
           const std::vector<double>& epsilon_grid) {
          return sandwich_lower_bound(as_dist(dist), n, epsilon_grid);
        },
        py::arg("dist"), py::arg("n"), py::arg("epsilon_grid"));
  m.def("plug_in_risk_bound", &plug_in_risk_bound, py::arg("h"),
        py::arg("alpha"), py::arg("n"), py::arg("epsilon_grid"));
  m.def("default_epsilon_grid", &default_epsilon_grid);
  m.def("minimax_upper", &minimax_upper, py::arg("h"), py::arg("alpha"),
        py::arg("n"));
  m.def("minimax_lower_value", &minimax_lower_value, py::arg("alpha"),
        py::arg("n"));
  m.def("no_emp_construction", &no_emp_construction, py::arg("h"),
        py::arg("n"));
  m.def("birthday_no_collision", &birthday_no_collision, py::arg("m"),
        py::arg("k"));
}
