// Python bindings: qubit_channels._core

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qcl/channel.hpp"
#include "qcl/cli.hpp"
#include "qcl/contraction.hpp"
#include "qcl/exact_volume.hpp"
#include "qcl/mc_oracle.hpp"
#include "qcl/sampler.hpp"
#include "qcl/stats.hpp"

namespace py = pybind11;
using namespace qcl;

namespace {

py::array_t<std::complex<double>> choi_array(const ChannelParams& p) {
  const ChoiMatrix q = params_to_choi(p);
  py::array_t<std::complex<double>> out({4, 4});
  auto view = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < 4; ++i)
    for (py::ssize_t j = 0; j < 4; ++j)
      view(i, j) = q(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return out;
}

py::dict estimate_dict(const VolumeEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  d["n"] = e.n;
  d["hits"] = e.hits;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Volumes, uniform sampling and contraction coefficients of qubit channels";
  m.attr("__version__") = kToolVersion;
  m.attr("SPACE_KINDS") = py::make_tuple("general-real", "general-complex", "unital-real", "unital-complex");

  py::class_<ChannelParams>(m, "Channel")
      .def_property_readonly("kind", [](const ChannelParams& p) { return std::string(to_string(p.kind)); })
      .def_readonly("a", &ChannelParams::a)
      .def_readonly("f", &ChannelParams::f)
      .def_readonly("b", &ChannelParams::b)
      .def_readonly("c", &ChannelParams::c)
      .def_readonly("d", &ChannelParams::d)
      .def_readonly("e", &ChannelParams::e)
      .def_readonly("g", &ChannelParams::g)
      .def("choi", &choi_array, "4x4 Choi matrix")
      .def("eta", &eta_of, "trace-distance contraction coefficient")
      .def("is_psd", [](const ChannelParams& p) { return is_psd(params_to_choi(p)); })
      .def("csv_row", &format_channel_row)
      .def("__repr__", [](const ChannelParams& p) { return "<Channel " + format_channel_row(p) + ">"; });

  m.def("total_volume", [](const std::string& k) { return total_volume(parse_space_kind(k)); },
        py::arg("kind"));
  m.def("fiber_volume",
        [](const std::string& k, double a, std::optional<double> f) {
          return fiber_volume(parse_space_kind(k), a, f);
        },
        py::arg("kind"), py::arg("a"), py::arg("f") = py::none());
  m.def("estimate_total_volume",
        [](const std::string& k, std::uint64_t n, std::uint64_t seed) {
          VolumeEstimate e;
          {
            py::gil_scoped_release release;
            e = estimate_total_volume(parse_space_kind(k), n, seed);
          }
          return estimate_dict(e);
        },
        py::arg("kind"), py::arg("n"), py::arg("seed") = 1);
  m.def("estimate_fiber_volume",
        [](const std::string& k, double a, std::optional<double> f, std::uint64_t n, std::uint64_t seed) {
          return estimate_dict(estimate_fiber_volume(parse_space_kind(k), a, f, n, seed));
        },
        py::arg("kind"), py::arg("a"), py::arg("f") = py::none(), py::arg("n") = 100000,
        py::arg("seed") = 1);

  m.def("sample_fiber",
        [](const std::string& k, double a, std::optional<double> f, std::size_t n, std::uint64_t seed,
           const std::string& mode) {
          return sample_fiber_batch(parse_space_kind(k), a, f, n, seed, parse_sampler_mode(mode));
        },
        py::arg("kind"), py::arg("a"), py::arg("f") = py::none(), py::arg("n") = 1,
        py::arg("seed") = 1, py::arg("mode") = "layered");
  m.def("sample_global",
        [](const std::string& k, std::size_t n, std::uint64_t seed, const std::string& global,
           const std::string& mode) {
          return sample_global_batch(parse_space_kind(k), parse_global_mode(global),
                                     parse_sampler_mode(mode), n, seed);
        },
        py::arg("kind"), py::arg("n") = 1, py::arg("seed") = 1, py::arg("global_mode") = "density-af",
        py::arg("mode") = "layered");
  m.def("oracle_sample_fiber",
        [](const std::string& k, double a, std::optional<double> f, std::uint64_t seed) {
          return oracle_sample_fiber(parse_space_kind(k), a, f, seed);
        },
        py::arg("kind"), py::arg("a"), py::arg("f") = py::none(), py::arg("seed") = 1);

  m.def("classical_dobrushin", &classical_dobrushin, py::arg("a"), py::arg("f"));
  m.def("eta_bounds",
        [](double a, double f) {
          const auto b = eta_bounds(a, f);
          return py::make_tuple(b.lower, b.upper);
        },
        py::arg("a"), py::arg("f"));
  m.def("construct_channel_with_eta",
        [](double a, double f, double x) {
          return choi_to_params(construct_channel_with_eta(a, f, x), SpaceKind::general_real);
        },
        py::arg("a"), py::arg("f"), py::arg("x"));

  m.def("ks_two_sample",
        [](std::vector<double> x, std::vector<double> y) {
          const auto r = ks_two_sample(std::move(x), std::move(y));
          return py::make_tuple(r.statistic, r.p_value);
        },
        py::arg("x"), py::arg("y"));
  m.def("eta_cdf",
        [](const std::string& k, std::size_t n, double alpha, std::uint64_t seed, const std::string& global) {
          const auto [cdf, band] = eta_cdf_experiment(parse_space_kind(k), n, alpha, seed, parse_global_mode(global));
          py::dict d;
          d["x"] = band.x;
          d["F"] = band.F;
          d["lo"] = band.lower;
          d["hi"] = band.upper;
          return d;
        },
        py::arg("kind"), py::arg("n") = 10000, py::arg("alpha") = 5e-5, py::arg("seed") = 1,
        py::arg("global_mode") = "density-af");
  m.def("eta_profile",
        [](const std::string& k, std::size_t grid, std::size_t n, double alpha, std::uint64_t seed) {
          py::list rows;
          for (const ProfileRow& r : eta_profile(parse_space_kind(k), grid, n, alpha, seed)) {
            if (r.empty) rows.append(py::make_tuple(r.a, py::none(), py::none(), py::none(), py::none(), py::none()));
            else rows.append(py::make_tuple(r.a, r.inf_est, r.mode_est, r.mean_est, r.ci_lo, r.ci_hi));
          }
          return rows;
        },
        py::arg("kind") = "unital-real", py::arg("grid") = 100, py::arg("n") = 1000,
        py::arg("alpha") = 5e-5, py::arg("seed") = 1);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
