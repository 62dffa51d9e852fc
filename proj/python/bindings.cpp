// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinor_efimov/run.hpp"

#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace spinor_efimov;

namespace {

Mode parse_mode(const std::string& s) {
  if (s == "asymptotic") return Mode::asymptotic;
  if (s == "finite") return Mode::finite;
  throw py::value_error("mode must be 'asymptotic' or 'finite'");
}

ChannelMatrixSpec make_spec(const TwoBodyChannelSet& c, const std::string& mode, double R) {
  return parse_mode(mode) == Mode::asymptotic ? ChannelMatrixSpec::asymptotic(c)
                                              : ChannelMatrixSpec::finite(c, R);
}

py::dict profile_dict(const SpinProfile& p) {
  py::dict d;
  d["basis_weights"] = p.basis_weights;
  d["w_111"] = p.w_111;
  d["w_mixed"] = p.w_mixed;
  d["w_222"] = p.w_222;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Efimov channel exponents for two-level bosons";
  m.attr("__version__") = kVersion;

  py::class_<ScatteringLength>(m, "ScatteringLength")
      .def_static("finite", &ScatteringLength::finite, py::arg("a"))
      .def_static("unitary", &ScatteringLength::unitary)
      .def_static("closed", &ScatteringLength::closed)
      .def_property_readonly("is_finite", &ScatteringLength::is_finite)
      .def_property_readonly("is_unitary", &ScatteringLength::is_unitary)
      .def_property_readonly("is_closed", &ScatteringLength::is_closed)
      .def_property_readonly("value", &ScatteringLength::value)
      .def(py::self == py::self)
      .def("__repr__", [](const ScatteringLength& a) {
        return "ScatteringLength(" + to_string(a) + ")";
      });

  py::class_<TwoBodyChannelSet>(m, "TwoBodyChannelSet")
      .def_readonly("lengths", &TwoBodyChannelSet::lengths)
      .def_readonly("vectors", &TwoBodyChannelSet::vectors)
      .def_readonly("mixing_angle", &TwoBodyChannelSet::mixing_angle)
      .def("orthogonality_defect", &TwoBodyChannelSet::orthogonality_defect)
      .def("with_flipped_sign", &TwoBodyChannelSet::with_flipped_sign, py::arg("k"));

  m.def("toy_closed_form", &toy_closed_form, py::arg("a11"), py::arg("a22"), py::arg("a12"),
        py::arg("a33"));
  m.def("eigenchannels",
        [](const Mat3& a) { return eigenchannels(ScatteringMatrix::from_matrix(a)); },
        py::arg("A"));
  m.def("jacobi_eigen", [](const Mat3& a) {
    const JacobiResult r = jacobi_eigen(a);
    return py::make_tuple(Vec3(r.values), Mat3(r.vectors));
  }, py::arg("A"));
  m.def("channels_from_angle", &channels_from_angle, py::arg("theta"), py::arg("a_alpha"),
        py::arg("a_beta"), py::arg("a_gamma"));
  m.def("one_body_rotation",
        [](double phi, const Mat3& a) {
          return one_body_rotation(phi, ScatteringMatrix::from_matrix(a)).matrix();
        },
        py::arg("phi"), py::arg("A"));
  m.def("exchange_overlap",
        [](const TwoBodyChannelSet& c) { return Mat6(exchange_overlap(c).matrix); },
        py::arg("channels"));

  py::class_<ChannelRoot>(m, "ChannelRoot")
      .def_property_readonly("axis", [](const ChannelRoot& r) { return to_string(r.axis); })
      .def_readonly("value", &ChannelRoot::value)
      .def_readonly("multiplicity", &ChannelRoot::multiplicity)
      .def_readonly("residual", &ChannelRoot::residual)
      .def_readonly("null_vectors", &ChannelRoot::null_vectors)
      .def_property_readonly("spin_profile",
                             [](const ChannelRoot& r) -> py::object {
                               if (!r.spin_profile) return py::none();
                               return profile_dict(*r.spin_profile);
                             })
      .def("__repr__", [](const ChannelRoot& r) {
        return "ChannelRoot(" + to_string(r.axis) + ", " + format_number(r.value) + ", x" +
               std::to_string(r.multiplicity) + ")";
      });

  m.def("find_roots",
        [](const TwoBodyChannelSet& c, const std::string& mode, double R, bool real,
           std::optional<double> kappa_max, double s_max) {
          const ChannelMatrixSpec spec = make_spec(c, mode, R);
          RootList out = find_roots_imaginary(spec, kappa_max);
          if (real) {
            RootList r = find_roots_real(spec, s_max);
            out.roots.insert(out.roots.end(), r.roots.begin(), r.roots.end());
          }
          const ThreeBodySpinBasis basis = three_body_basis(c);
          for (ChannelRoot& root : out.roots) root.spin_profile = classify_root(root, basis);
          sort_roots(out.roots);
          return out.roots;
        },
        py::arg("channels"), py::arg("mode") = "asymptotic", py::arg("R") = 1.0,
        py::arg("real") = false, py::arg("kappa_max") = py::none(), py::arg("s_max") = 6.0);

  m.def("theta_sweep",
        [](const std::vector<double>& thetas, const std::array<ScatteringLength, 3>& lengths,
           const std::string& mode, double R, bool include_real) {
          SweepOptions opts;
          opts.include_real = include_real;
          const SweepTable t = theta_sweep(thetas, lengths, parse_mode(mode), R, opts);
          py::list rows;
          for (const SweepRow& row : t.rows) {
            py::dict d;
            d["theta"] = row.theta;
            d["roots"] = row.roots;
            d["curves"] = row.curves;
            rows.append(d);
          }
          return py::make_tuple(rows, max_curve_jump(t));
        },
        py::arg("thetas"), py::arg("lengths"), py::arg("mode") = "asymptotic",
        py::arg("R") = 1.0, py::arg("include_real") = false);

  m.def("unitary_ladder",
        [](double kappa, double r0, int levels) {
          const LadderSpectrum s =
              bound_states(unitary_potential(kappa, log_grid(r0, 10 * r0, 4001)), r0, levels);
          py::dict d;
          d["energies"] = s.energies;
          d["nodes"] = s.nodes;
          d["ratios"] = s.ratios;
          d["R_max"] = s.R_max;
          d["warnings"] = s.warnings;
          return d;
        },
        py::arg("kappa"), py::arg("r0") = 1e-3, py::arg("levels") = 4);
  m.def("scaling_factor", &scaling_factor, py::arg("kappa"));

  m.def("run_config",
        [](const std::string& text, bool strict) {
          ParsedConfig parsed = parse_config(text, strict);
          ResultBundle b = run(parsed.config);
          b.warnings.insert(b.warnings.begin(), parsed.warnings.begin(), parsed.warnings.end());
          return to_json(b);
        },
        py::arg("text"), py::arg("strict") = true);

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
}
