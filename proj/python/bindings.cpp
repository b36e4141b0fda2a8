#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nvdressed/config.hpp"
#include "nvdressed/dynamics.hpp"
#include "nvdressed/eigen.hpp"
#include "nvdressed/errors.hpp"
#include "nvdressed/fitting.hpp"
#include "nvdressed/levels.hpp"
#include "nvdressed/magnetometry.hpp"
#include "nvdressed/polarization.hpp"
#include "nvdressed/spectra.hpp"

namespace py = pybind11;
using namespace nvdressed;

PYBIND11_MODULE(_core, m) {
  m.doc() = "NV-center dressed-state spin physics";

  py::register_exception<NonHermitianInput>(m, "NonHermitianInput", PyExc_ValueError);
  py::register_exception<SeriesOutOfRange>(m, "SeriesOutOfRange", PyExc_ValueError);
  py::register_exception<UnnormalizedInput>(m, "UnnormalizedInput", PyExc_ValueError);
  py::register_exception<InvalidDensityMatrix>(m, "InvalidDensityMatrix", PyExc_ValueError);
  py::register_exception<ZeroDrive>(m, "ZeroDrive", PyExc_ValueError);
  py::register_exception<MissingNoiseParameter>(m, "MissingNoiseParameter", PyExc_ValueError);
  py::register_exception<InsufficientTrials>(m, "InsufficientTrials", PyExc_ValueError);
  py::register_exception<SingularJacobian>(m, "SingularJacobian", PyExc_RuntimeError);
  py::register_exception<NonFiniteResidual>(m, "NonFiniteResidual", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_RuntimeError);

  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def(py::init<>())
      .def_readwrite("d_gs", &PhysicalConstants::d_gs)
      .def_readwrite("d_perp", &PhysicalConstants::d_perp)
      .def_readwrite("d_par", &PhysicalConstants::d_par)
      .def_readwrite("gamma_e", &PhysicalConstants::gamma_e)
      .def_readwrite("gamma_n", &PhysicalConstants::gamma_n)
      .def_readwrite("a_par", &PhysicalConstants::a_par)
      .def_readwrite("a_perp", &PhysicalConstants::a_perp)
      .def_readwrite("quadrupole", &PhysicalConstants::quadrupole)
      .def("validate", &PhysicalConstants::validate);

  py::class_<FieldConfiguration>(m, "FieldConfiguration")
      .def(py::init<>())
      .def(py::init([](double bx, double by, double bpar, double px, double py_, double ppar) {
             return FieldConfiguration{bx, by, bpar, px, py_, ppar};
           }),
           py::arg("b_x") = 0.0, py::arg("b_y") = 0.0, py::arg("b_par") = 0.0,
           py::arg("pi_x") = 0.0, py::arg("pi_y") = 0.0, py::arg("pi_par") = 0.0)
      .def_readwrite("b_x", &FieldConfiguration::b_x)
      .def_readwrite("b_y", &FieldConfiguration::b_y)
      .def_readwrite("b_par", &FieldConfiguration::b_par)
      .def_readwrite("pi_x", &FieldConfiguration::pi_x)
      .def_readwrite("pi_y", &FieldConfiguration::pi_y)
      .def_readwrite("pi_par", &FieldConfiguration::pi_par)
      .def_property_readonly("b_perp", &FieldConfiguration::b_perp)
      .def_property_readonly("phi_b", &FieldConfiguration::phi_b)
      .def_property_readonly("pi_perp", &FieldConfiguration::pi_perp)
      .def_property_readonly("phi_pi", &FieldConfiguration::phi_pi)
      .def("with_b_par", &FieldConfiguration::with_b_par);

  m.def("field_preset", [](const std::string& n) { return field_preset(n); });
  m.def("field_preset_names", &field_preset_names);
  m.def("parse_config", [](const std::string& text) {
    const RunConfig c = parse_config(text);
    return py::make_tuple(c.constants, c.fields);
  });

  m.def("electronic_hamiltonian", [](const PhysicalConstants& c, const FieldConfiguration& f) {
    return Eigen::MatrixXcd(electronic_hamiltonian(c, f));
  });
  m.def("full_hamiltonian", [](const PhysicalConstants& c, const FieldConfiguration& f) {
    return Eigen::MatrixXcd(full_hamiltonian(c, f));
  });
  m.def("diagonalize_hermitian", [](const Eigen::MatrixXcd& h) {
    const EigenSolution s = diagonalize_hermitian(h);
    return py::make_tuple(s.values, s.vectors);
  });
  m.def("cubic_eigenvalues_exact", &cubic_eigenvalues_exact);

  py::class_<PerturbativeSpectrum>(m, "PerturbativeSpectrum")
      .def_readonly("e0", &PerturbativeSpectrum::e0)
      .def_readonly("e_minus", &PerturbativeSpectrum::e_minus)
      .def_readonly("e_plus", &PerturbativeSpectrum::e_plus)
      .def_readonly("e_gap", &PerturbativeSpectrum::e_gap)
      .def_readonly("theta", &PerturbativeSpectrum::theta);
  m.def("perturbative_spectrum", [](const PhysicalConstants& c, const FieldConfiguration& f) {
    return perturbative_spectrum(PerturbationParams::from(c, f), f.phi_b(), f.phi_pi());
  });

  m.def("trace_distance", [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return trace_distance(a, b);
  });
  m.def("dressed_trace_distance",
        [](const PhysicalConstants& c, const FieldConfiguration& f, int mi, bool electronic) {
          return dressed_trace_distance(
              c, f, mi, electronic ? TraceDistanceMode::Electronic : TraceDistanceMode::Joint);
        },
        py::arg("c"), py::arg("f"), py::arg("m"), py::arg("electronic") = false);

  m.def("energy_diagram", [](const PhysicalConstants& c, const FieldConfiguration& f,
                             const std::vector<double>& b, int threads) {
    py::list out;
    for (const auto& r : energy_diagram(c, f, b, threads))
      out.append(py::make_tuple(r.b_par, r.energies, r.sz, r.iz));
    return out;
  }, py::arg("c"), py::arg("f"), py::arg("b_par"), py::arg("threads") = 1);

  py::class_<DressedPoint>(m, "DressedPoint")
      .def_readonly("b_par", &DressedPoint::b_par)
      .def_readonly("gap", &DressedPoint::gap)
      .def_readonly("compensation_residual", &DressedPoint::compensation_residual);
  m.def("find_dressed_point", &find_dressed_point, py::arg("c"), py::arg("f"), py::arg("m"),
        py::arg("half_width") = 0.03);
  m.def("working_point_b_par", [](const PhysicalConstants& c, const std::string& p) {
    if (p.size() != 1) throw std::invalid_argument("point must be 'A' or 'B'");
    return working_point_b_par(c, p[0]);
  });

  m.def("resonance_frequencies",
        [](const PhysicalConstants& c, const FieldConfiguration& f, bool upper, double tol) {
          py::list out;
          for (const auto& r : resonance_frequencies(
                   c, f, upper ? BranchSelect::Upper : BranchSelect::Lower, tol)) {
            py::dict d;
            d["freq_MHz"] = r.freq;
            d["Sz"] = r.upper.sz;
            d["Iz"] = r.upper.iz;
            d["weight"] = r.weight;
            out.append(d);
          }
          return out;
        },
        py::arg("c"), py::arg("f"), py::arg("upper") = false,
        py::arg("merge_tolerance") = kMergeToleranceMHz);
  m.def("zero_field_splitting", &zero_field_splitting);
  m.def("reconstruct_transverse_pi", &reconstruct_transverse_pi);
  m.def("family_projection", [](const Eigen::Vector3d& b) {
    py::list out;
    for (const auto& p : family_projection(b)) {
      py::dict d;
      d["family"] = p.label;
      d["b_par"] = p.b_par;
      d["b_perp"] = p.b_perp;
      d["phi_b"] = p.phi_b;
      out.append(d);
    }
    return out;
  });
  m.def("to_lab", &to_lab);

  py::class_<DriveConfig>(m, "DriveConfig")
      .def(py::init([](double ot, double op, double th, double od) {
             return DriveConfig{ot, op, th, od};
           }),
           py::arg("omega_theta"), py::arg("omega_perp"), py::arg("theta"),
           py::arg("omega_d") = 2870.0);
  m.def("drive_match_gamma", &drive_match_gamma);

  py::class_<DecayComponent>(m, "DecayComponent")
      .def(py::init([](double y0, double a, double t2, double p, double delta, double phi) {
             return DecayComponent{y0, a, t2, p, delta, phi};
           }),
           py::arg("y0") = 0.5, py::arg("a") = -0.5, py::arg("t2") = 1.0,
           py::arg("p") = kDefaultStretch, py::arg("delta") = 0.0, py::arg("phi") = 0.0)
      .def_readwrite("y0", &DecayComponent::y0)
      .def_readwrite("a", &DecayComponent::a)
      .def_readwrite("t2", &DecayComponent::t2)
      .def_readwrite("p", &DecayComponent::p)
      .def_readwrite("delta", &DecayComponent::delta)
      .def_readwrite("phi", &DecayComponent::phi);
  m.def("fid_probability", &fid_probability);
  m.def("fid_signal", &fid_signal);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init<>())
      .def_readwrite("sigma_b_z", &NoiseModel::sigma_b_z)
      .def_readwrite("sigma_b_x", &NoiseModel::sigma_b_x)
      .def_readwrite("sigma_b_y", &NoiseModel::sigma_b_y)
      .def_readwrite("sigma_pi_xp", &NoiseModel::sigma_pi_xp)
      .def_readwrite("sigma_pi_yp", &NoiseModel::sigma_pi_yp)
      .def_readwrite("tau_c_b", &NoiseModel::tau_c_b)
      .def_readwrite("tau_c_pi", &NoiseModel::tau_c_pi)
      .def_readwrite("sigma_b_ens", &NoiseModel::sigma_b_ens);

  py::class_<Scenario>(m, "Scenario")
      .def_static("dressed", &Scenario::dressed)
      .def_static("strong_axial", &Scenario::strong_axial)
      .def_static("partial", &Scenario::partial)
      .def_property_readonly("name", [](const Scenario& s) { return std::string(to_string(s.kind)); })
      .def_readonly("gamma", &Scenario::gamma)
      .def_readonly("b_par_mT", &Scenario::b_par_mT);
  m.def("predict_t2", &predict_t2);
  m.def("ensemble_decay", [](const Scenario& s, const NoiseModel& n, const PhysicalConstants& c,
                             const std::vector<double>& tau, double delta0) {
    return ensemble_decay(s, n, c, DetuningDistribution::delta(delta0), tau);
  }, py::arg("s"), py::arg("n"), py::arg("c"), py::arg("tau"), py::arg("delta0") = 0.0);
  m.def("mc_dephasing_oracle",
        [](const Scenario& s, const NoiseModel& n, const PhysicalConstants& c, double e_gap,
           const std::vector<double>& tau, int trials, std::uint64_t seed, int threads) {
          OracleOptions o;
          o.trials = trials;
          o.seed = seed;
          o.threads = threads;
          py::gil_scoped_release release;
          return mc_dephasing_oracle(s, n, c, e_gap, tau, o);
        },
        py::arg("s"), py::arg("n"), py::arg("c"), py::arg("e_gap"), py::arg("tau"),
        py::arg("trials") = 100000, py::arg("seed") = 1, py::arg("threads") = 1);

  m.def("fit_fid",
        [](const std::vector<double>& tau, const std::vector<double>& y, int n,
           std::optional<double> p, std::vector<double> seeds) {
          FidFitOptions o;
          o.n_components = n;
          o.fixed_p = p;
          o.seeds = std::move(seeds);
          const FidFitResult r = fit_fid(tau, y, o);
          py::dict d;
          py::list comps;
          for (const auto& c : r.components) {
            py::dict cd;
            cd["A"] = c.a;
            cd["T2_us"] = c.t2;
            cd["T2_err_us"] = c.t2_err;
            cd["delta_MHz"] = c.delta;
            cd["phi_rad"] = c.phi;
            comps.append(cd);
          }
          d["components"] = comps;
          d["y0"] = r.y0;
          d["p"] = r.p;
          d["chi2_reduced"] = r.raw.chi2_reduced;
          d["status"] = std::string(to_string(r.raw.status));
          return d;
        },
        py::arg("tau"), py::arg("y"), py::arg("n_components") = 1,
        py::arg("p") = kDefaultStretch, py::arg("seeds") = std::vector<double>{});
  m.def("fit_odmr", [](const std::vector<double>& f, const std::vector<double>& y, int n) {
    const OdmrFitResult r = fit_odmr(f, y, n);
    py::list peaks;
    for (const auto& p : r.peaks) {
      py::dict d;
      d["center_MHz"] = p.center;
      d["fwhm_MHz"] = p.width;
      d["depth"] = p.depth;
      peaks.append(d);
    }
    return py::make_tuple(r.baseline, peaks);
  }, py::arg("freq"), py::arg("y"), py::arg("n_peaks") = 1);
}
