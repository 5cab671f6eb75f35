#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "muskat/config.hpp"
#include "muskat/errors.hpp"
#include "muskat/evolution.hpp"
#include "muskat/experiments.hpp"
#include "muskat/kernels.hpp"
#include "muskat/norms.hpp"
#include "muskat/profiles.hpp"
#include "muskat/spectral.hpp"
#include "muskat/state.hpp"
#include "muskat/threading.hpp"
#include "muskat/velocity.hpp"

namespace py = pybind11;
using namespace muskat;

namespace {

RealArgs make_args(double dx, double sigma, double fx, double fx1, double gx, double gx1,
                   double dfx1, double dgx1) {
  RealArgs a;
  a.dx = dx;
  a.sigma = sigma;
  a.fx = fx;
  a.fx1 = fx1;
  a.gx = gx;
  a.gx1 = gx1;
  a.thx = fx - gx;
  a.thx1 = fx1 - gx1;
  a.dfx1 = dfx1;
  a.dgx1 = dgx1;
  a.dthx1 = dfx1 - dgx1;
  return a;
}

Spectrum to_spectrum(const std::vector<double>& u, const Grid1D& g) { return analyze(u, g); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "three-phase Muskat simulator core";

  py::register_exception<CollisionError>(m, "CollisionError");
  py::register_exception<ResolutionLossError>(m, "ResolutionLossError");

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def_readonly("rho0", &PhysicalParams::rho0)
      .def_readonly("rho1", &PhysicalParams::rho1)
      .def_readonly("rho2", &PhysicalParams::rho2)
      .def_readonly("sigma", &PhysicalParams::sigma)
      .def_readonly("delta_rho", &PhysicalParams::delta_rho)
      .def_readonly("mu1", &PhysicalParams::mu1)
      .def_readonly("mu2", &PhysicalParams::mu2);
  m.def("make_params", &make_params, py::arg("rho0"), py::arg("rho1"), py::arg("rho2"),
        py::arg("sigma"));

  py::class_<Grid1D>(m, "Grid1D")
      .def(py::init<double, int>(), py::arg("half_length"), py::arg("n"))
      .def_property_readonly("n", &Grid1D::n)
      .def_property_readonly("half_length", &Grid1D::half_length)
      .def_property_readonly("dx", &Grid1D::dx)
      .def("node", &Grid1D::node)
      .def("nodes", [](const Grid1D& g) {
        std::vector<double> x(g.n());
        for (int i = 0; i < g.n(); ++i) x[i] = g.node(i);
        return x;
      });

  py::class_<InterfaceState>(m, "InterfaceState")
      .def(py::init([](std::vector<double> f, std::vector<double> g, double gamma, double t) {
             InterfaceState s;
             s.f = std::move(f);
             s.g = std::move(g);
             s.gamma = gamma;
             s.t = t;
             return s;
           }),
           py::arg("f"), py::arg("g"), py::arg("gamma") = 0.1, py::arg("t") = 0.0)
      .def_readwrite("f", &InterfaceState::f)
      .def_readwrite("g", &InterfaceState::g)
      .def_readwrite("gamma", &InterfaceState::gamma)
      .def_readwrite("t", &InterfaceState::t);

  py::class_<HThetaState>(m, "HThetaState")
      .def_readwrite("h", &HThetaState::h)
      .def_readwrite("theta", &HThetaState::theta)
      .def_readwrite("theta1", &HThetaState::theta1)
      .def_readwrite("gamma", &HThetaState::gamma)
      .def_readwrite("t", &HThetaState::t);

  m.def("to_htheta", &to_htheta);
  m.def("from_htheta", &from_htheta);
  m.def("min_distance", py::overload_cast<const InterfaceState&, const PhysicalParams&>(
                            &min_distance));

  // pointwise kernels
  m.def(
      "eval_P",
      [](const std::string& which, double dx, double sigma, double fx, double fx1, double gx,
         double gx1) {
        const RealArgs a = make_args(dx, sigma, fx, fx1, gx, gx1, 0.0, 0.0);
        if (which == "11") return eval_P(PKernel::P11, a);
        if (which == "12") return eval_P(PKernel::P12, a);
        if (which == "21") return eval_P(PKernel::P21, a);
        if (which == "22") return eval_P(PKernel::P22, a);
        throw std::invalid_argument("which must be one of 11, 12, 21, 22");
      },
      py::arg("which"), py::arg("dx"), py::arg("sigma"), py::arg("fx"), py::arg("fx1"),
      py::arg("gx"), py::arg("gx1"));
  m.def(
      "eval_Kf_ef",
      [](double dx, double sigma, double fx, double fx1, double gx, double gx1) {
        return eval_Kf_ef(make_args(dx, sigma, fx, fx1, gx, gx1, 0.0, 0.0));
      },
      py::arg("dx"), py::arg("sigma"), py::arg("fx"), py::arg("fx1"), py::arg("gx"),
      py::arg("gx1"));
  m.def("eval_D0", [](double dx, const PhysicalParams& p) { return eval_D0(dx, p); });
  m.def("periodized_pv_kernel", &periodized_pv_kernel, py::arg("alpha"), py::arg("c"),
        py::arg("L"));

  // norms
  m.def(
      "hk_gamma_norm",
      [](const std::vector<double>& u, const Grid1D& g, int k, double gamma) {
        return hk_gamma_norm(to_spectrum(u, g), g, k, gamma);
      },
      py::arg("u"), py::arg("grid"), py::arg("k"), py::arg("gamma"));
  m.def(
      "linf_gamma_norm",
      [](const std::vector<double>& u, const Grid1D& g, double gamma) {
        return linf_gamma_norm(to_spectrum(u, g), g, gamma);
      },
      py::arg("u"), py::arg("grid"), py::arg("gamma"));
  m.def(
      "strip_width_estimate",
      [](const std::vector<double>& u, const Grid1D& g) -> py::object {
        const auto est = strip_width_estimate(to_spectrum(u, g), g);
        if (!est) return py::none();
        return py::float_(*est);
      },
      py::arg("u"), py::arg("grid"));
  m.def("diss_theta_weight", &diss_theta_weight, py::arg("xi"), py::arg("sigma"));
  m.def("energy_E", &energy_E, py::arg("state"), py::arg("grid"), py::arg("k"),
        py::arg("params"));

  // velocities and right-hand sides
  py::class_<VelocityField>(m, "VelocityField")
      .def_readonly("u_plus", &VelocityField::u_plus)
      .def_readonly("u_minus", &VelocityField::u_minus);
  py::class_<RhsPair>(m, "RhsPair")
      .def_readonly("first", &RhsPair::first)
      .def_readonly("second", &RhsPair::second);
  m.def("compute_velocity", &compute_velocity);
  m.def("rhs_fg", &rhs_fg);
  m.def("rhs_htheta", &rhs_htheta);
  m.def(
      "rhs_twophase",
      [](const std::vector<double>& f, double rho_jump, const Grid1D& g) {
        return rhs_twophase(f, rho_jump, g);
      },
      py::arg("f"), py::arg("rho_jump"), py::arg("grid"));
  m.def(
      "linearized_symbol",
      [](double xi, const PhysicalParams& p) {
        const auto sym = linearized_symbol(xi, p);
        py::dict d;
        d["matrix"] = sym.matrix;
        d["eigenvalues"] = sym.eigenvalues;
        return d;
      },
      py::arg("xi"), py::arg("params"));

  // evolution
  py::class_<StepperConfig>(m, "StepperConfig")
      .def(py::init<>())
      .def_readwrite("dt", &StepperConfig::dt)
      .def_readwrite("cfl", &StepperConfig::cfl)
      .def_readwrite("C2", &StepperConfig::C2)
      .def_readwrite("gamma0", &StepperConfig::gamma0)
      .def_readwrite("horizon", &StepperConfig::horizon)
      .def_readwrite("k", &StepperConfig::k)
      .def_readwrite("report_interval", &StepperConfig::report_interval)
      .def_readwrite("spectral_tail_threshold", &StepperConfig::spectral_tail_threshold)
      .def_readwrite("collision_factor", &StepperConfig::collision_factor)
      .def_readwrite("gamma_floor", &StepperConfig::gamma_floor);
  py::class_<NormReport>(m, "NormReport")
      .def_readonly("t", &NormReport::t)
      .def_readonly("gamma", &NormReport::gamma)
      .def_readonly("energy", &NormReport::energy)
      .def_readonly("hk_h", &NormReport::hk_h)
      .def_readonly("hk_theta", &NormReport::hk_theta)
      .def_readonly("hk_theta1", &NormReport::hk_theta1)
      .def_readonly("diss", &NormReport::diss)
      .def_readonly("min_dist", &NormReport::min_dist);
  py::class_<Snapshot>(m, "Snapshot")
      .def_readonly("state", &Snapshot::state)
      .def_readonly("report", &Snapshot::report);
  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("snapshots", &Trajectory::snapshots)
      .def_readonly("lifespan", &Trajectory::lifespan)
      .def_property_readonly("termination",
                             [](const Trajectory& t) { return to_string(t.termination); });
  m.def("step", &step, py::arg("state"), py::arg("config"), py::arg("params"), py::arg("grid"),
        py::arg("dt"));
  m.def("run", &run, py::arg("initial"), py::arg("config"), py::arg("params"), py::arg("grid"),
        py::call_guard<py::gil_scoped_release>());

  m.def("set_num_threads", &set_num_threads);
  m.def(
      "run_kernel_verification",
      [](long samples, double w0, double tolerance, double margin, unsigned long long seed) {
        VerifyConfig cfg;
        cfg.samples = samples;
        cfg.w0 = w0;
        cfg.tolerance = tolerance;
        cfg.positivity_margin = margin;
        cfg.seed = seed;
        py::list out;
        for (const auto& r : run_kernel_verification(cfg)) {
          py::dict d;
          d["identity"] = r.identity;
          d["samples"] = r.samples;
          d["max_rel_err"] = r.max_rel_err;
          d["pass"] = r.pass;
          d["note"] = r.note;
          out.append(d);
        }
        return out;
      },
      py::arg("samples") = 10000, py::arg("w0") = 0.01, py::arg("tolerance") = 1e-10,
      py::arg("margin") = 0.1, py::arg("seed") = 7);
}
