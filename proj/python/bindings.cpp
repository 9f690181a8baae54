#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>

#include "vpmcf/bounds.hpp"
#include "vpmcf/cmc.hpp"
#include "vpmcf/commands.hpp"
#include "vpmcf/config.hpp"
#include "vpmcf/errors.hpp"
#include "vpmcf/flow.hpp"
#include "vpmcf/hypersurface.hpp"
#include "vpmcf/report.hpp"

namespace py = pybind11;
using namespace vpmcf;

namespace {

py::array_t<double> to_array(std::span<const double> xs) {
  py::array_t<double> out(static_cast<py::ssize_t>(xs.size()));
  std::copy(xs.begin(), xs.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const std::vector<double>& xs) { return to_array(std::span<const double>(xs)); }

py::dict record_dict(const DiagnosticsRecord& d) {
  py::dict o;
  o["t"] = d.t;
  o["V"] = d.V;
  o["area"] = d.area;
  o["Hbar"] = d.Hbar;
  o["I1"] = d.I1;
  o["I2"] = d.I2;
  o["min_r"] = d.min_r;
  o["max_r"] = d.max_r;
  o["max_v"] = d.max_v;
  o["N"] = d.N;
  o["curve_len"] = d.curve_len;
  o["max_L2"] = d.max_L2;
  return o;
}

py::object json_to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_vpmcf, m) {
  m.doc() = "Volume-preserving mean curvature flow of revolution hypersurfaces";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<WarpValues>(m, "WarpValues")
      .def(py::init<double, double, double, double, double, double>(), py::arg("f"), py::arg("df"), py::arg("d2f"),
           py::arg("h"), py::arg("dh"), py::arg("d2h"))
      .def_readonly("f", &WarpValues::f)
      .def_readonly("df", &WarpValues::df)
      .def_readonly("d2f", &WarpValues::d2f)
      .def_readonly("h", &WarpValues::h)
      .def_readonly("dh", &WarpValues::dh)
      .def_readonly("d2h", &WarpValues::d2h);

  py::class_<AmbientSpace>(m, "AmbientSpace")
      .def(py::init([](int n, std::function<WarpValues(double)> warp, double r_max) {
             // Python callables need the GIL; wrap so C++ threads never call them unguarded.
             AmbientSpace::Warp guarded = [warp](double r) {
               py::gil_scoped_acquire gil;
               return warp(r);
             };
             return AmbientSpace(n, guarded, r_max);
           }),
           py::arg("n"), py::arg("warp"), py::arg("r_max") = std::numeric_limits<double>::infinity())
      .def_static("euclidean", &AmbientSpace::euclidean, py::arg("n") = 2)
      .def_static("hyperbolic", &AmbientSpace::hyperbolic, py::arg("lam"), py::arg("n") = 2)
      .def_static("spherical", &AmbientSpace::spherical, py::arg("lam"), py::arg("n") = 2)
      .def("warp", &AmbientSpace::warp, py::arg("r"))
      .def_property_readonly("n", &AmbientSpace::dim)
      .def_property_readonly("r_max_domain", &AmbientSpace::r_max_domain)
      .def_property_readonly("preset", [](const AmbientSpace& s) { return to_string(s.preset()); })
      .def("__repr__", [](const AmbientSpace& s) { return "<AmbientSpace " + s.description() + ">"; });

  m.def("sectional_curvatures", [](const AmbientSpace& s, double r) {
    const SectionalCurvatures k = sectional_curvatures(s, r);
    return py::make_tuple(k.rz, k.ri, k.zi, k.ij);
  }, py::arg("space"), py::arg("r"), "(S_rz, S_ri, S_zi, S_ij) at radius r");

  m.def("validate_space", [](const AmbientSpace& s, double r_probe_max, int samples) {
    return json_to_python(to_json(validate_space(s, r_probe_max, samples)));
  }, py::arg("space"), py::arg("r_probe_max"), py::arg("samples") = 200);

  py::class_<ProfileGrid>(m, "ProfileGrid")
      .def(py::init([](double a, double b, const std::vector<double>& r) { return ProfileGrid(a, b, r); }),
           py::arg("a"), py::arg("b"), py::arg("radii"))
      .def_static("sample", &ProfileGrid::sample, py::arg("a"), py::arg("b"), py::arg("m"), py::arg("radius"))
      .def_static("constant", &ProfileGrid::constant, py::arg("a"), py::arg("b"), py::arg("m"), py::arg("radius"))
      .def_property_readonly("a", &ProfileGrid::a)
      .def_property_readonly("b", &ProfileGrid::b)
      .def_property_readonly("dz", &ProfileGrid::dz)
      .def_property_readonly("r", [](const ProfileGrid& p) { return to_array(p.radii()); })
      .def_property_readonly("z", [](const ProfileGrid& p) {
        std::vector<double> z(p.size());
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = p.z(i);
        return to_array(z);
      })
      .def("__len__", &ProfileGrid::size);

  m.def("read_profile_csv", &read_profile_csv, py::arg("path"));
  m.def("write_profile_csv", &write_profile_csv, py::arg("profile"), py::arg("path"));

  m.def("spatial_derivatives", [](const ProfileGrid& p) {
    const SpatialDerivatives d = spatial_derivatives(p);
    return py::make_tuple(to_array(d.slope), to_array(d.curvature));
  }, py::arg("profile"), "(r', r'') at every node");
  m.def("curvature_field", [](const ProfileGrid& p, const AmbientSpace& s) {
    const CurvatureField c = curvature_field(p, s);
    py::dict o;
    o["k1"] = to_array(c.k1);
    o["k2"] = to_array(c.k2);
    o["H"] = to_array(c.H);
    o["v"] = to_array(c.v);
    o["L2"] = to_array(c.L2);
    return o;
  }, py::arg("profile"), py::arg("space"));
  m.def("enclosed_volume", &enclosed_volume, py::arg("profile"), py::arg("space"));
  m.def("lateral_area", &lateral_area, py::arg("profile"), py::arg("space"));
  m.def("curve_length", &curve_length, py::arg("profile"), py::arg("space"));
  m.def("averaged_mean_curvature", [](const ProfileGrid& p, const AmbientSpace& s) {
    const MeanCurvatureAverage a = averaged_mean_curvature(p, s);
    return py::make_tuple(a.Hbar, a.I1, a.I2);
  }, py::arg("profile"), py::arg("space"), "(Hbar, I1, I2)");
  m.def("critical_point_count", &critical_point_count, py::arg("profile"), py::arg("slope_tol") = -1.0);

  m.def("beta", &beta, py::arg("space"), py::arg("r"), py::arg("rel_tol") = 1e-12);
  m.def("delta", &delta, py::arg("space"), py::arg("r"), py::arg("rel_tol") = 1e-12);
  m.def("compute_bounds", [](const AmbientSpace& s, double a, double b, double V, double area) {
    return json_to_python(to_json(compute_bounds(s, a, b, V, area)));
  }, py::arg("space"), py::arg("a"), py::arg("b"), py::arg("volume"), py::arg("area"));

  py::class_<FlowConfig>(m, "FlowConfig")
      .def(py::init<>())
      .def_readwrite("dt_safety", &FlowConfig::dt_safety)
      .def_readwrite("max_t", &FlowConfig::max_t)
      .def_readwrite("r_min_stop", &FlowConfig::r_min_stop)
      .def_readwrite("v_max_stop", &FlowConfig::v_max_stop)
      .def_readwrite("conv_tol", &FlowConfig::conv_tol)
      .def_readwrite("record_every", &FlowConfig::record_every)
      .def_readwrite("volume_projection", &FlowConfig::volume_projection)
      .def_readwrite("snapshot_every", &FlowConfig::snapshot_every)
      .def_readwrite("slope_tol", &FlowConfig::slope_tol);

  m.def("rhs", [](const ProfileGrid& p, const AmbientSpace& s, double Hbar) { return to_array(rhs(p, s, Hbar)); },
        py::arg("profile"), py::arg("space"), py::arg("Hbar"));

  m.def("run", [](const ProfileGrid& initial, const AmbientSpace& s, const FlowConfig& cfg) {
    std::optional<RunResult> out;
    {
      py::gil_scoped_release release;
      out.emplace(run(initial, s, cfg));
    }
    const RunResult& res = *out;
    py::dict o;
    o["reason"] = to_string(res.reason.tag);
    o["location"] = res.reason.location ? py::cast(*res.reason.location) : py::none();
    o["detail"] = res.reason.detail;
    o["steps"] = res.steps;
    o["t"] = res.final_state.t;
    o["cmc_deviation"] = res.final_state.cmc_deviation;
    o["profile"] = res.final_state.profile;
    py::list history;
    for (const auto& d : res.history) history.append(record_dict(d));
    o["history"] = history;
    return o;
  }, py::arg("initial"), py::arg("space"), py::arg("config") = FlowConfig{},
     "Evolve `initial`; returns reason, location, steps, t, final profile and the recorded history.");

  py::class_<CMCProfile>(m, "CMCProfile")
      .def_readonly("H_const", &CMCProfile::H_const)
      .def_readonly("profile", &CMCProfile::profile)
      .def_readonly("residual", &CMCProfile::residual)
      .def_readonly("volume", &CMCProfile::volume)
      .def_readonly("branch", &CMCProfile::branch)
      .def_readonly("iterations", &CMCProfile::iterations);

  m.def("cylinder_for_volume", &cylinder_for_volume, py::arg("space"), py::arg("a"), py::arg("b"), py::arg("volume"),
        py::arg("m") = 201);
  m.def("shoot_cmc", [](const AmbientSpace& s, double a, double b, double H, double guess, int m_nodes, int substeps) {
    ShootOptions opts;
    opts.m = m_nodes;
    opts.substeps = substeps;
    return shoot_cmc(s, a, b, H, guess, opts);
  }, py::arg("space"), py::arg("a"), py::arg("b"), py::arg("H_target"), py::arg("r_guess"), py::arg("m") = 401,
     py::arg("substeps") = 4);
  m.def("distance_to_cmc", [](const ProfileGrid& p, const AmbientSpace& s) {
    const CmcDistance d = distance_to_cmc(p, s);
    return py::make_tuple(d.h_best, d.deviation);
  }, py::arg("profile"), py::arg("space"), "(h_best, deviation)");

  m.def("run_config", [](const std::string& path, const std::string& out_dir) {
    const RunConfig cfg = load_config(path);
    nlohmann::json summary;
    {
      py::gil_scoped_release release;
      summary = execute_run(cfg, out_dir.empty() ? cfg.output_dir : out_dir).summary;
    }
    return json_to_python(summary);
  }, py::arg("config_path"), py::arg("out_dir") = "",
     "Run a config file exactly like `vpmcf run`; returns the summary document.");
}
