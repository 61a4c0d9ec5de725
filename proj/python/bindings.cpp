#include "n32/cli.hpp"
#include "n32/geodesy.hpp"
#include "n32/kernel.hpp"
#include "n32/sampler.hpp"
#include "n32/suites.hpp"
#include "n32/verify.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace n32;

namespace {

using Vec6 = std::array<double, 6>;

Point6 pt(const Vec6& a) { return Point6::from_array(a); }

// Reports cross the boundary as JSON text; the Python side parses them.
std::string dump(const Json& j) { return j.dump(); }

kernel::QuadratureSpec make_spec(double radius, int nodes, double tolerance, const std::string& scheme)
{
  kernel::QuadratureSpec s;
  s.truncation_radius = radius;
  s.nodes_per_axis = nodes;
  s.tolerance = tolerance;
  s.scheme = kernel::scheme_from_string(scheme);
  return s;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Sub-Laplacian toolkit on N(3,2): group law, heat kernel, sampler, distance, audits.";

  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<UnderflowError>(m, "UnderflowError", PyExc_ArithmeticError);
  py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ValueError);

  m.def("multiply", [](const Vec6& a, const Vec6& b) { return multiply(pt(a), pt(b)).to_array(); });
  m.def("inverse", [](const Vec6& a) { return inverse(pt(a)).to_array(); });
  m.def("dilate", [](double lam, const Vec6& a) { return dilate(lam, pt(a)).to_array(); });

  py::class_<kernel::QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init(&make_spec), py::arg("radius") = 90.0, py::arg("nodes") = 16, py::arg("tolerance") = 1e-9,
           py::arg("scheme") = "spherical_bessel")
      .def_readwrite("truncation_radius", &kernel::QuadratureSpec::truncation_radius)
      .def_readwrite("nodes_per_axis", &kernel::QuadratureSpec::nodes_per_axis)
      .def_readwrite("tolerance", &kernel::QuadratureSpec::tolerance)
      .def("__repr__", [](const kernel::QuadratureSpec& s) {
        return "QuadratureSpec(radius=" + std::to_string(s.truncation_radius) +
               ", nodes=" + std::to_string(s.nodes_per_axis) + ", scheme=" + kernel::to_string(s.scheme) + ")";
      });

  m.def("p1_raw", [](const std::array<double, 3>& x, const std::array<double, 3>& y, const kernel::QuadratureSpec& s) {
    return kernel::p1_raw(x, y, s).value;
  }, py::arg("x"), py::arg("y"), py::arg("spec") = kernel::QuadratureSpec{});
  m.def("p_t", [](double t, const Vec6& g, const kernel::QuadratureSpec& s) { return kernel::p_t(t, pt(g), s); },
        py::arg("t"), py::arg("g"), py::arg("spec") = kernel::QuadratureSpec{});
  m.def("grad_p_t", [](double t, const Vec6& g, const kernel::QuadratureSpec& s) { return kernel::grad_p_t(t, pt(g), s); },
        py::arg("t"), py::arg("g"), py::arg("spec") = kernel::QuadratureSpec{});
  m.def("horiz_grad_log_pt", [](double t, const Vec6& g, const kernel::QuadratureSpec& s) {
    const auto h = kernel::horiz_grad_log_pt(t, pt(g), s);
    return py::dict(py::arg("X") = h.X, py::arg("Y") = h.Y, py::arg("magnitude") = h.magnitude, py::arg("value") = h.value);
  }, py::arg("t"), py::arg("g"), py::arg("spec") = kernel::QuadratureSpec{});
  m.def("heat_residual", [](double t, const Vec6& g, const kernel::QuadratureSpec& s) {
    return kernel::heat_residual(t, pt(g), s);
  }, py::arg("t"), py::arg("g"), py::arg("spec") = kernel::QuadratureSpec{});
  m.def("constants_W", [](const kernel::QuadratureSpec& s) {
    const auto w = kernel::constants_W(s);
    return std::make_pair(w.W1, w.W2);
  }, py::arg("spec") = kernel::QuadratureSpec{});
  m.def("raw_value_at_origin", &kernel::raw_value_at_origin);

  m.def("simulate", [](double t, double dt, std::size_t n_paths, std::uint64_t seed) {
    sampler::SampleBatch b;
    {
      py::gil_scoped_release release;
      b = sampler::simulate({.t = t, .dt = dt, .n_paths = n_paths, .seed = seed});
    }
    py::array_t<double> out({b.samples.size(), std::size_t{6}});
    auto a = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < b.samples.size(); ++i)
      for (std::size_t k = 0; k < 6; ++k)
        a(i, k) = b.samples[i][k];
    return out;
  }, py::arg("t") = 1.0, py::arg("dt") = 1e-3, py::arg("n_paths") = 100000, py::arg("seed") = 1);

  m.def("cc_distance", [](const Vec6& g, int restarts) {
    const auto d = geodesy::cc_distance(pt(g), restarts);
    return py::dict(py::arg("d") = d.d, py::arg("status") = geodesy::to_string(d.status),
                    py::arg("lower") = d.bounds.lower, py::arg("upper") = d.bounds.upper);
  }, py::arg("g"), py::arg("restarts") = 64);
  m.def("heisenberg_distance", &geodesy::heisenberg_distance);

  m.def("_suite", [](const std::string& name, int n, std::uint64_t seed) {
    suites::SuiteResult r;
    if (name == "bracket_table")
      r = suites::bracket_table();
    else if (name == "radial_tables")
      r = suites::radial_tables();
    else if (name == "cd_gap")
      r = suites::cd_gap(n, seed);
    else if (name == "formal_identities")
      r = suites::formal_identities();
    else if (name == "reduction_consistency")
      r = suites::reduction_consistency(n, seed);
    else if (name == "gamma2_nonnegative")
      r = suites::gamma2_nonnegative(n, seed);
    else
      throw std::invalid_argument("unknown suite " + name);
    return dump(suites::to_json(r));
  }, py::arg("name"), py::arg("n") = 100, py::arg("seed") = 1);

  m.def("_reverse_poincare", [](double t, std::size_t n_paths, std::uint64_t seed) {
    verify::McConfig c;
    c.n_paths = n_paths;
    c.seed = seed;
    return dump(verify::to_json(verify::reverse_poincare_gap(verify::default_polynomial_family(), t, c)));
  }, py::arg("t") = 1.0, py::arg("n_paths") = 20000, py::arg("seed") = 1);
  m.def("_li_yau", [](const std::vector<double>& ts, int n, std::uint64_t seed, const kernel::QuadratureSpec& s) {
    return dump(verify::to_json(verify::li_yau_scan(ts, verify::gauge_sphere_points(n, seed), {}, s)));
  }, py::arg("t_list"), py::arg("n") = 10, py::arg("seed") = 1, py::arg("spec") = kernel::QuadratureSpec{});

  m.def("cli", [](const std::vector<std::string>& args) { return cli::run(args); }, py::arg("args"));
  m.attr("__version__") = cli::version();
}
