#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "recoilq/cli.hpp"

#include <cmath>
#include <limits>

namespace py = pybind11;
using namespace recoilq;

namespace {

// math.inf is the stationary atom
Mass to_mass(double m) {
  if (std::isinf(m) && m > 0) return Mass::infinite();
  if (!(m > 0.0)) throw py::value_error("mstar must be positive");
  return Mass::finite(m);
}

double from_mass(const Mass& m) {
  return m.is_infinite() ? std::numeric_limits<double>::infinity() : m.value();
}

template <class T>
py::array_t<T> arr(const std::vector<T>& v) {
  return py::array_t<T>(v.size(), v.data());
}

py::dict traj_dict(const Trajectory& tr) {
  py::dict d;
  d["t"] = arr(tr.times);
  d["rho10"] = arr(tr.rho10);
  d["rho11"] = arr(tr.rho11);
  std::vector<bool> conv(tr.converged.begin(), tr.converged.end());
  d["converged"] = conv;
  return d;
}

py::dict rate_dict(const RateEstimate& r) {
  py::dict d;
  d["gamma"] = r.gamma;
  d["residual"] = r.residual;
  d["t_lo"] = r.t_lo;
  d["t_hi"] = r.t_hi;
  d["samples"] = r.samples;
  return d;
}

}  // namespace

PYBIND11_MODULE(_recoilq, m) {
  m.doc() = "Recoil-induced decoherence of a two-level atom";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<FitError>(m, "FitError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double mstar, double lambda_, double sigma, double cutoff, double tmax,
                       int nsamples) {
             ModelParams p;
             p.mstar = to_mass(mstar);
             p.lambda = lambda_;
             p.sigma = sigma;
             p.cutoff = cutoff;
             p.tmax = tmax;
             p.nsamples = nsamples;
             return p;
           }),
           py::arg("mstar") = std::numeric_limits<double>::infinity(), py::arg("lambda_") = 0.1,
           py::arg("sigma") = 1.0, py::arg("cutoff") = 50.0, py::arg("tmax") = 40.0,
           py::arg("nsamples") = 200)
      .def_property(
          "mstar", [](const ModelParams& p) { return from_mass(p.mstar); },
          [](ModelParams& p, double v) { p.mstar = to_mass(v); })
      .def_readwrite("lambda_", &ModelParams::lambda)
      .def_readwrite("sigma", &ModelParams::sigma)
      .def_readwrite("cutoff", &ModelParams::cutoff)
      .def_readwrite("tmax", &ModelParams::tmax)
      .def_readwrite("nsamples", &ModelParams::nsamples)
      .def_readonly("omega0", &ModelParams::omega0)
      .def("check", [](const ModelParams& p) { return check(p); })
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(mstar=" + format_mass(p.mstar) + ", lambda_=" + format_double(p.lambda) +
               ", sigma=" + format_double(p.sigma) + ", cutoff=" + format_double(p.cutoff) +
               ", tmax=" + format_double(p.tmax) + ", nsamples=" + std::to_string(p.nsamples) + ")";
      });

  m.def("nondimensionalize", &nondimensionalize, py::arg("mass_kg"), py::arg("omega0_rad_s"),
        py::arg("lambda_"), py::arg("sigma_m"), py::arg("cutoff_ratio"));

  m.def("free_propagator", &free_propagator, py::arg("m"), py::arg("t"), py::arg("dx"));
  m.def("memory_kernel",
        [](double k, double c, double s, double t, double dx, double mstar) {
          return memory_kernel(k, c, s, t, dx, to_mass(mstar));
        },
        py::arg("k"), py::arg("cos_theta"), py::arg("s"), py::arg("t"), py::arg("dx"), py::arg("mstar"));
  m.def("self_energy",
        [](double mstar, double dx, double t, double lambda, double cutoff) {
          py::gil_scoped_release nogil;
          return self_energy(to_mass(mstar), dx, t, lambda, cutoff).value;
        },
        py::arg("mstar"), py::arg("dx"), py::arg("t"), py::arg("lambda_") = 0.1,
        py::arg("cutoff") = 50.0);
  m.def("stationary_half_rate", &stationary_half_rate, py::arg("lambda_"));

  m.def("pole",
        [](double mstar, double dx, double t, double lambda, double cutoff) {
          return pole(to_mass(mstar), dx, t, lambda, cutoff).z0;
        },
        py::arg("mstar"), py::arg("dx"), py::arg("t"), py::arg("lambda_") = 0.1,
        py::arg("cutoff") = 50.0);
  m.def("u_function",
        [](double x, double t, double mstar, double lambda, double cutoff) {
          return u_function(x, t, to_mass(mstar), lambda, cutoff);
        },
        py::arg("x"), py::arg("t"), py::arg("mstar"), py::arg("lambda_") = 0.1,
        py::arg("cutoff") = 50.0);
  m.def("stationary_u", &stationary_u, py::arg("t"), py::arg("lambda_") = 0.1,
        py::arg("cutoff") = 50.0);

  m.def("gaussian_weight_a", [](double t, double mstar, double sigma) {
    return gaussian_weight(t, mstar, sigma).a;
  }, py::arg("t"), py::arg("mstar"), py::arg("sigma") = 1.0);
  m.def("x_average",
        [](double t, double mstar, double sigma, const std::function<cplx(double)>& u) {
          XAverage a = x_average(t, mstar, sigma, u);
          return py::make_tuple(a.coherence, a.population, a.converged);
        },
        py::arg("t"), py::arg("mstar"), py::arg("sigma"), py::arg("u"),
        "Average of u(x) and |u(x)|^2 over the packet weight: (coherence, population, converged).");
  m.def("coherence", [](double t, const ModelParams& p) {
    py::gil_scoped_release nogil;
    return coherence(t, p);
  }, py::arg("t"), py::arg("params"));
  m.def("population", [](double t, const ModelParams& p) {
    py::gil_scoped_release nogil;
    return population(t, p);
  }, py::arg("t"), py::arg("params"));
  m.def("evolve",
        [](const ModelParams& p, int workers) {
          Trajectory tr;
          {
            py::gil_scoped_release nogil;
            tr = evolve(p, workers);
          }
          return traj_dict(tr);
        },
        py::arg("params"), py::arg("workers") = 0);

  m.def("fit_decay",
        [](const std::vector<double>& t, const std::vector<double>& y, double lo, double hi) {
          return rate_dict(fit_decay(t, y, lo, hi));
        },
        py::arg("t"), py::arg("magnitude"), py::arg("t_lo"), py::arg("t_hi"));
  m.def("percent_increase",
        [](double mstar, const ModelParams& p, int workers) {
          py::gil_scoped_release nogil;
          return percent_increase(to_mass(mstar), p, workers);
        },
        py::arg("mstar"), py::arg("params"), py::arg("workers") = 0);
  m.def("sweep",
        [](const std::vector<double>& masses, const ModelParams& p, int workers) {
          std::vector<Mass> ms;
          for (double x : masses) ms.push_back(to_mass(x));
          SweepResult r;
          {
            py::gil_scoped_release nogil;
            r = sweep(ms, p, workers);
          }
          py::list rows;
          for (const auto& pt : r.points) {
            py::dict d;
            d["mstar"] = from_mass(pt.mstar);
            d["gamma_coh"] = pt.coh.gamma;
            d["gamma_pop"] = pt.pop.gamma;
            d["pct_increase"] = pt.pct_increase;
            d["ok"] = pt.ok;
            d["note"] = pt.note;
            rows.append(d);
          }
          py::dict out;
          out["rows"] = rows;
          out["gamma_stationary"] = r.stationary_coh.gamma;
          out["monotone"] = r.monotone;
          return out;
        },
        py::arg("masses"), py::arg("params"), py::arg("workers") = 0);

  m.def("oracle",
        [](const ModelParams& p, int nk, int ntheta, int np, int workers) {
          Trajectory tr;
          double drift = 0.0;
          {
            py::gil_scoped_release nogil;
            SectorOptions o;
            o.np = np;
            o.workers = workers;
            SectorTrajectory s =
                evolve_sector(build_grid(nk, ntheta, p.cutoff, p.lambda), p, time_grid(p), o);
            drift = s.max_norm_drift;
            tr = reduce(s);
          }
          py::dict d = traj_dict(tr);
          d["norm_drift"] = drift;
          return d;
        },
        py::arg("params"), py::arg("nk") = 128, py::arg("ntheta") = 16, py::arg("np") = 16,
        py::arg("workers") = 0,
        "Brute-force single-excitation dynamics on the time grid of params.");

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::vector<const char*> argv{"recoilq"};
          for (const auto& a : args) argv.push_back(a.c_str());
          RunConfig cfg = parse_config(static_cast<int>(argv.size()), argv.data());
          std::ostringstream err;
          int rc;
          {
            py::gil_scoped_release nogil;
            rc = run(cfg, err);
          }
          return py::make_tuple(rc, err.str());
        },
        py::arg("args"), "Run the command line tool in-process: (exit status, diagnostics).");
}
