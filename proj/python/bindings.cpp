#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "risce/config.hpp"
#include "risce/estimators.hpp"
#include "risce/patterns.hpp"
#include "risce/report.hpp"
#include "risce/sim.hpp"
#include "risce/version.hpp"

namespace py = pybind11;
using namespace risce;

namespace {

ChannelGroup parse_group(const std::string& name) {
  if (name == "direct") return ChannelGroup::Direct;
  if (name == "cascade") return ChannelGroup::Cascade;
  throw std::invalid_argument("unknown group '" + name + "' (expected direct or cascade)");
}

Settings to_settings_map(const py::dict& d) {
  Settings s;
  for (const auto& [k, v] : d) {
    s[py::str(k)] = py::str(v);
  }
  return s;
}

py::list curves_to_list(const std::vector<NMSECurve>& curves) {
  py::list out;
  for (const auto& c : curves) {
    py::dict row;
    row["snr_db"] = c.snr_db;
    row["n0"] = c.n0;
    for (const auto& p : c.points) {
      py::dict e;
      e["direct_cf"] = p.direct_cf;
      e["cascade_cf"] = p.cascade_cf;
      if (c.has_empirical) {
        e["direct_emp"] = p.direct_emp;
        e["cascade_emp"] = p.cascade_emp;
        e["direct_stderr"] = p.direct_stderr;
        e["cascade_stderr"] = p.cascade_stderr;
      }
      row[py::str(std::string(to_string(p.kind)))] = e;
    }
    out.append(row);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Channel estimation for RIS-aided MISO uplinks";
  m.attr("__version__") = kVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("kron", &kron, py::arg("a"), py::arg("b"));
  m.def("dft_pattern",
        [](int tau_p, int n) { return dft_pattern(tau_p, n).V_tilde; },
        py::arg("tau_p"), py::arg("n"));
  m.def("onoff_pattern", [](int n) { return onoff_pattern(n).V_tilde; },
        py::arg("n"));

  m.def("validate_pattern", [](const CMatrix& v) {
    const auto r = validate_pattern({v, PatternKind::Custom});
    py::dict d;
    d["first_column_ones"] = r.first_column_ones;
    d["max_modulus"] = r.max_modulus;
    d["amplitude_ok"] = r.amplitude_ok;
    d["estimable"] = r.estimable;
    d["gram_trace"] = r.gram_trace;
    d["trace_bound"] = r.trace_bound;
    d["bound_attained"] = r.bound_attained;
    d["gram_diagonal"] = r.gram_diagonal;
    return d;
  }, py::arg("v_tilde"));

  m.def("mvu_dft",
        [](const CVector& y, const CMatrix& f) {
          return mvu_dft(y, {f, PatternKind::DFT}).h_hat;
        },
        py::arg("y_tilde"), py::arg("f"),
        "(1/tau_p)(F^H kron I_M) y for a tau_p x (N+1) DFT pattern F.");
  m.def("mvu_onoff",
        [](const CVector& y, int n) { return mvu_onoff(y, onoff_pattern(n)).h_hat; },
        py::arg("y_tilde"), py::arg("n"));
  m.def("mmse",
        [](const CVector& r, double beta_bs, double beta_irs,
           const CMatrix& h_bs_irs, double n0, int tau_p) {
          PriorCovariance prior{static_cast<int>(h_bs_irs.rows()), beta_bs,
                                beta_irs, h_bs_irs};
          return mmse(r, prior, NoiseModel{n0, tau_p}).h_hat;
        },
        py::arg("r"), py::arg("beta_bs"), py::arg("beta_irs"),
        py::arg("h_bs_irs"), py::arg("n0"), py::arg("tau_p"));
  m.def("predict_nmse",
        [](const std::string& estimator, const std::string& group, double n0,
           int tau_p, int M, double beta_bs, double beta_irs, double beta_bs_irs) {
          return predict_nmse(parse_estimator(estimator), parse_group(group),
                              {n0, tau_p, M, beta_bs, beta_irs, beta_bs_irs});
        },
        py::arg("estimator"), py::arg("group"), py::arg("n0"), py::arg("tau_p"),
        py::arg("m"), py::arg("beta_bs"), py::arg("beta_irs"),
        py::arg("beta_bs_irs"));

  m.def("resolve_config",
        [](const py::dict& settings) {
          const auto cfg = parse_config(Settings{}, to_settings_map(settings));
          py::dict out;
          for (const auto& [k, v] : to_settings(cfg)) out[py::str(k)] = v;
          return out;
        },
        py::arg("settings") = py::dict());
  m.def("closed_form_curves",
        [](const py::dict& settings) {
          return curves_to_list(
              closed_form_curves(parse_config(Settings{}, to_settings_map(settings))));
        },
        py::arg("settings") = py::dict());
  m.def("monte_carlo_sweep",
        [](const py::dict& settings, unsigned threads) {
          const auto cfg = parse_config(Settings{}, to_settings_map(settings));
          std::vector<NMSECurve> curves;
          {
            py::gil_scoped_release release;
            curves = monte_carlo_sweep(cfg, threads);
          }
          return curves_to_list(curves);
        },
        py::arg("settings") = py::dict(), py::arg("threads") = 1);
}
