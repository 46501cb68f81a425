#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rmtlab/approxev.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/estimator.hpp"
#include "rmtlab/limits.hpp"
#include "rmtlab/mc.hpp"
#include "rmtlab/nets.hpp"

namespace py = pybind11;
using namespace rmtlab;

namespace {

EnsembleSpec make_spec(const std::string& model, int n, int p, double sigma,
                       const std::vector<double>& spikes, std::uint64_t seed) {
  const auto kind = model_from_name(model);
  if (!kind.has_value()) throw std::invalid_argument("unknown model '" + model + "'");
  EnsembleSpec spec;
  spec.model = *kind;
  spec.n = n;
  spec.p = p;
  spec.sigma = sigma;
  spec.spikes = spikes;
  spec.seed = seed;
  spec.validate();
  return spec;
}

}  // namespace

PYBIND11_MODULE(_rmtlab, m) {
  m.doc() = "Spectral laboratory for deformed random matrices";

  py::class_<DeterministicLimit>(m, "DeterministicLimit")
      .def_readonly("value", &DeterministicLimit::value)
      .def_property_readonly("branch",
                             [](const DeterministicLimit& d) {
                               return branch_name(d.branch);
                             })
      .def("__repr__", [](const DeterministicLimit& d) {
        return "DeterministicLimit(value=" + std::to_string(d.value) + ", branch='" +
               branch_name(d.branch) + "')";
      });

  m.def("lambda_theta", &lambda_theta, py::arg("theta"), py::arg("sigma"),
        "Deformed-GOE limit of the spiked eigenvalue");
  m.def("lambda_theta_c", &lambda_theta_c, py::arg("theta_sq"), py::arg("c"),
        "Spiked-population limit of the spiked sample eigenvalue");
  m.def(
      "semicircle_stieltjes",
      [](double z, double sigma) {
        const StieltjesValue v = semicircle_stieltjes(z, sigma);
        return py::make_tuple(v.g, v.gprime);
      },
      py::arg("z"), py::arg("sigma"));
  m.def(
      "mp_stieltjes",
      [](double z, double c) {
        const StieltjesValue v = mp_stieltjes(z, c);
        return py::make_tuple(v.g, v.gprime);
      },
      py::arg("z"), py::arg("c"));
  m.def(
      "bound_rhs",
      [](const std::string& theorem, int n, int p, int r, int s, int i, double sigma,
         double t, double delta, const std::vector<double>& spikes,
         std::optional<double> c3) {
        const auto th = theorem_from_name(theorem);
        if (!th.has_value()) {
          throw std::invalid_argument("unknown theorem '" + theorem + "'");
        }
        BoundParams b;
        b.theorem = *th;
        b.n = n;
        b.p = p;
        b.r = r;
        b.s = s;
        b.i = i;
        b.sigma = sigma;
        b.t = t;
        b.delta = delta;
        b.spikes = spikes;
        b.c3 = c3;
        return bound_rhs(b);
      },
      py::arg("theorem"), py::arg("n"), py::arg("p") = 0, py::arg("r") = 0,
      py::arg("s") = 0, py::arg("i") = 1, py::arg("sigma") = 1.0, py::arg("t") = 0.0,
      py::arg("delta") = 0.5, py::arg("spikes") = std::vector<double>{},
      py::arg("c3") = std::nullopt,
      "Right-hand side of the selected deviation bound");

  m.def(
      "sample",
      [](const std::string& model, int n, int p, double sigma,
         const std::vector<double>& spikes, std::uint64_t seed,
         std::uint64_t replicate) {
        const SampleDraw draw = sample(make_spec(model, n, p, sigma, spikes, seed),
                                       replicate);
        return Eigen::MatrixXd(draw.matrix.entries());
      },
      py::arg("model"), py::arg("n"), py::arg("p") = 0, py::arg("sigma") = 1.0,
      py::arg("spikes") = std::vector<double>{}, py::arg("seed") = 0,
      py::arg("replicate") = 0, "Draw one seeded matrix sample");

  m.def(
      "eig_sym",
      [](const Eigen::MatrixXd& a, bool want_vectors) -> py::tuple {
        const Spectrum s = eig_sym(SymMatrix(a), want_vectors);
        if (want_vectors) {
          return py::make_tuple(Eigen::VectorXd(s.eigenvalues),
                                Eigen::MatrixXd(*s.eigenvectors));
        }
        return py::make_tuple(Eigen::VectorXd(s.eigenvalues), py::none());
      },
      py::arg("a"), py::arg("want_vectors") = false,
      "Eigenvalues (descending) and optional eigenvectors of a symmetric matrix");
  m.def("singular_values", &singular_values, py::arg("m"));
  m.def(
      "resolvent_quadratics",
      [](const Eigen::MatrixXd& gt, double lam, const Eigen::VectorXd& v) {
        const ResolventQuadratics q = resolvent_quadratics(SymMatrix(gt), lam, v);
        return py::make_tuple(q.l1, q.l2, q.tr_r_over_m, q.tr_r2_over_m);
      },
      py::arg("gt"), py::arg("lam"), py::arg("v"));

  py::class_<SpikeEstimate>(m, "SpikeEstimate")
      .def_readonly("lambda_obs", &SpikeEstimate::lambda_obs)
      .def_readonly("c", &SpikeEstimate::c)
      .def_readonly("detectable", &SpikeEstimate::detectable)
      .def_property_readonly("theta_sq_hat",
                             [](const SpikeEstimate& e) -> py::object {
                               if (e.theta_sq_hat) return py::float_(*e.theta_sq_hat);
                               return py::none();
                             })
      .def_property_readonly(
          "side", [](const SpikeEstimate& e) { return bulk_side_name(e.side); })
      .def("__repr__", [](const SpikeEstimate& e) {
        return "SpikeEstimate(lambda=" + std::to_string(e.lambda_obs) + ", side='" +
               bulk_side_name(e.side) + "')";
      });

  m.def("invert_spike", &invert_spike, py::arg("lambda_obs"), py::arg("c"));
  m.def(
      "heteroscedastic_normalize",
      [](const Eigen::VectorXd& eigs, int r) {
        const NormalizeResult res = heteroscedastic_normalize(eigs, r);
        return py::make_tuple(res.sigma_hat_sq, res.rescaled_spikes);
      },
      py::arg("sample_eigs_desc"), py::arg("r"));
  m.def(
      "estimate_all",
      [](const Eigen::VectorXd& eigs_desc, int n, int r_max) {
        Spectrum s;
        s.eigenvalues = eigs_desc;
        return estimate_all(s, n, r_max);
      },
      py::arg("eigs_desc"), py::arg("n"), py::arg("r_max"));

  py::class_<EpsilonNet>(m, "EpsilonNet")
      .def_readonly("m", &EpsilonNet::m)
      .def_readonly("epsilon", &EpsilonNet::epsilon)
      .def_readonly("certified_size_bound", &EpsilonNet::certified_size_bound)
      .def_readonly("coverage_certified", &EpsilonNet::coverage_certified)
      .def_property_readonly("points",
                             [](const EpsilonNet& net) {
                               Eigen::MatrixXd out(net.points.size(), net.m);
                               for (std::size_t k = 0; k < net.points.size(); ++k) {
                                 out.row(static_cast<Eigen::Index>(k)) =
                                     net.points[k].transpose();
                               }
                               return out;
                             })
      .def("__len__", [](const EpsilonNet& net) { return net.points.size(); });

  m.def("rho", &rho, py::arg("x"), py::arg("y"),
        "Hemispheric metric on the unit ball");
  m.def("net_interval", &net_interval, py::arg("epsilon"));
  m.def(
      "net_ball",
      [](int m_dim, double epsilon, std::uint64_t seed) {
        RngStream stream = derive_stream(seed, 0);
        return net_ball(m_dim, epsilon, stream);
      },
      py::arg("m"), py::arg("epsilon"), py::arg("seed") = 0);
  m.def(
      "certify_coverage",
      [](EpsilonNet& net, int samples, std::uint64_t seed) {
        RngStream stream = derive_stream(seed, 1);
        return certify_coverage(net, samples, stream);
      },
      py::arg("net"), py::arg("samples") = 100000, py::arg("seed") = 0);
  m.def(
      "lift_to_sphere",
      [](const Eigen::VectorXd& x, const EpsilonNet& net) {
        const LiftResult lift = lift_to_sphere(x, net);
        return py::make_tuple(Eigen::VectorXd(lift.y), Eigen::VectorXd(lift.u),
                              lift.dist);
      },
      py::arg("x"), py::arg("net"));

  py::class_<ApproxEvReport>(m, "ApproxEvReport")
      .def_readonly("rayleigh", &ApproxEvReport::rayleigh)
      .def_readonly("target", &ApproxEvReport::target)
      .def_readonly("gap", &ApproxEvReport::gap)
      .def_readonly("l1", &ApproxEvReport::l1)
      .def_readonly("l2", &ApproxEvReport::l2)
      .def_readonly("l1_pred", &ApproxEvReport::l1_pred)
      .def_readonly("l2_pred", &ApproxEvReport::l2_pred)
      .def_readonly("event_b_ok", &ApproxEvReport::event_b_ok)
      .def_readonly("lambda0", &ApproxEvReport::lambda0)
      .def_readonly("gap_expansion", &ApproxEvReport::gap_expansion)
      .def_readonly("cross_check", &ApproxEvReport::cross_check)
      .def_readonly("y_check", &ApproxEvReport::y_check)
      .def_readonly("x", &ApproxEvReport::x);

  m.def(
      "goe_approx_ev",
      [](int n, double sigma, const std::vector<double>& spikes, int i,
         std::uint64_t seed, std::uint64_t replicate) {
        const EnsembleSpec spec = make_spec("deformed_goe", n, 0, sigma, spikes, seed);
        return goe_approx_ev(sample_deformed(spec, replicate), i);
      },
      py::arg("n"), py::arg("sigma"), py::arg("spikes"), py::arg("i") = 1,
      py::arg("seed") = 0, py::arg("replicate") = 0);
  m.def(
      "spm_approx_ev",
      [](int n, int p, const std::vector<double>& spikes, int i, std::uint64_t seed,
         std::uint64_t replicate) {
        const EnsembleSpec spec = make_spec("spiked", n, p, 1.0, spikes, seed);
        return spm_approx_ev(sample_spiked(spec, replicate, true), i);
      },
      py::arg("n"), py::arg("p"), py::arg("spikes"), py::arg("i") = 1,
      py::arg("seed") = 0, py::arg("replicate") = 0);

  py::class_<TailRow>(m, "TailRow")
      .def_readonly("t", &TailRow::t)
      .def_readonly("empirical", &TailRow::empirical)
      .def_readonly("lo95", &TailRow::lo95)
      .def_readonly("hi95", &TailRow::hi95)
      .def_readonly("bound", &TailRow::bound)
      .def_readonly("dominated", &TailRow::dominated)
      .def_readonly("vacuous", &TailRow::vacuous);

  py::class_<TailReport>(m, "TailReport")
      .def_readonly("rows", &TailReport::rows)
      .def_readonly("center", &TailReport::center)
      .def_readonly("replicates_used", &TailReport::replicates_used)
      .def_readonly("excluded_b_failures", &TailReport::excluded_b_failures)
      .def_readonly("median_statistic", &TailReport::median_statistic);

  m.def(
      "run_tail",
      [](const std::string& model, const std::string& theorem, int n, int p,
         double sigma, const std::vector<double>& spikes, std::uint64_t seed,
         int eigen_index, double delta, const std::vector<double>& t_grid,
         int replicates, std::optional<double> c3, int threads) {
        ExperimentPlan plan;
        plan.spec = make_spec(model, n, p, sigma, spikes, seed);
        const auto th = theorem_from_name(theorem);
        if (!th.has_value()) {
          throw std::invalid_argument("unknown theorem '" + theorem + "'");
        }
        plan.theorem = *th;
        plan.eigen_index = eigen_index;
        plan.delta = delta;
        plan.t_grid = t_grid;
        plan.replicates = replicates;
        plan.c3 = c3;
        plan.threads = threads;
        return run_tail(plan);
      },
      py::arg("model"), py::arg("theorem"), py::arg("n"), py::arg("p") = 0,
      py::arg("sigma") = 1.0, py::arg("spikes") = std::vector<double>{},
      py::arg("seed") = 0, py::arg("eigen_index") = 1, py::arg("delta") = 0.5,
      py::arg("t_grid") = std::vector<double>{0.0}, py::arg("replicates") = 100,
      py::arg("c3") = std::nullopt, py::arg("threads") = 1);

  m.def(
      "chi_square_tail_check",
      [](const std::vector<double>& weights, const std::vector<double>& t_grid,
         int replicates, std::uint64_t seed) {
        RngStream stream = derive_stream(seed, 0);
        const auto rows = chi_square_tail_check(weights, t_grid, replicates, stream);
        py::list out;
        for (const auto& row : rows) {
          py::dict d;
          d["t"] = row.t;
          d["emp_upper"] = row.emp_upper;
          d["emp_lower"] = row.emp_lower;
          d["bound"] = row.bound;
          d["dominated"] = row.dominated;
          out.append(d);
        }
        return out;
      },
      py::arg("weights"), py::arg("t_grid"), py::arg("replicates") = 10000,
      py::arg("seed") = 0);
  m.def(
      "interlacing_audit",
      [](int replicates, int n, std::uint64_t seed) {
        RngStream stream = derive_stream(seed, 0);
        return interlacing_audit(replicates, n, stream);
      },
      py::arg("replicates"), py::arg("n"), py::arg("seed") = 0);
}
