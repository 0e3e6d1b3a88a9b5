#include <pybind11/functional.h>
#include <algorithm>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fbmax/bounds.hpp"
#include "fbmax/covariance.hpp"
#include "fbmax/delta_f.hpp"
#include "fbmax/montecarlo.hpp"
#include "fbmax/random.hpp"
#include "fbmax/sampler.hpp"
#include "fbmax/version.hpp"

namespace py = pybind11;

using namespace fbmax;
namespace bnd = fbmax::bounds;
namespace mc = fbmax::mc;

namespace {

bnd::DTable dtable_from_array(const py::array_t<double>& arr) {
  const auto buf = arr.request();
  if (buf.ndim != 2 || buf.shape[0] != buf.shape[1]) {
    throw std::invalid_argument("increment-variance table must be a square 2-D array");
  }
  const auto n = static_cast<std::size_t>(buf.shape[0]);
  const auto view = arr.unchecked<2>();
  std::vector<double> rows(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rows[i * n + j] = view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
    }
  }
  return bnd::DTable::from_rows(n, rows);
}

mc::RunOptions run_options(std::uint64_t seed, int threads, const std::string& method) {
  return mc::RunOptions{seed, threads, mc::method_from_string(method)};
}

}  // namespace

PYBIND11_MODULE(_fbmax, m) {
  m.doc() = "Bounds and Monte Carlo estimators for the expected maximum of fractional "
            "Brownian motion on uniform grids";
  m.attr("__version__") = kVersion;

  py::class_<bnd::Condition>(m, "Condition")
      .def_readonly("name", &bnd::Condition::name)
      .def_readonly("required", &bnd::Condition::required)
      .def_readonly("actual", &bnd::Condition::actual)
      .def_readonly("satisfied", &bnd::Condition::satisfied)
      .def("__repr__", [](const bnd::Condition& c) {
        return "Condition(" + c.name + (c.satisfied ? ": ok)" : ": failed)");
      });

  py::class_<bnd::BoundReport>(m, "BoundReport")
      .def_property_readonly("kind",
                             [](const bnd::BoundReport& r) { return bnd::to_string(r.kind); })
      .def_readonly("value", &bnd::BoundReport::value)
      .def_readonly("valid", &bnd::BoundReport::valid)
      .def_readonly("conditions", &bnd::BoundReport::conditions)
      .def_readonly("notes", &bnd::BoundReport::notes)
      .def("failed_conditions", &bnd::BoundReport::failed_conditions)
      .def("__repr__", [](const bnd::BoundReport& r) {
        return std::string("BoundReport(") + bnd::to_string(r.kind) +
               ", value=" + std::to_string(r.value) + ", valid=" + (r.valid ? "True" : "False") +
               ")";
      });

  py::class_<bnd::ValidityRegion>(m, "ValidityRegion")
      .def_readonly("n_lower", &bnd::ValidityRegion::n_lower)
      .def_readonly("n_upper", &bnd::ValidityRegion::n_upper)
      .def_readonly("feasible_integers", &bnd::ValidityRegion::feasible_integers)
      .def_readonly("truncated", &bnd::ValidityRegion::truncated)
      .def_readonly("published_interval", &bnd::ValidityRegion::published_interval);

  py::class_<bnd::MhDerivation>(m, "MhDerivation")
      .def_readonly("bracket", &bnd::MhDerivation::bracket)
      .def_readonly("bound", &bnd::MhDerivation::bound);

  py::class_<bnd::DeltaFBound>(m, "DeltaFBound")
      .def_readonly("value", &bnd::DeltaFBound::value)
      .def_readonly("modulus_term", &bnd::DeltaFBound::modulus_term)
      .def_readonly("tail_term", &bnd::DeltaFBound::tail_term)
      .def_readonly("mh_surrogate", &bnd::DeltaFBound::mh_surrogate);

  py::class_<mc::McEstimate>(m, "McEstimate")
      .def_readonly("mean", &mc::McEstimate::mean)
      .def_readonly("std_err", &mc::McEstimate::std_err)
      .def_readonly("n_samples", &mc::McEstimate::n_samples)
      .def_readonly("ci_halfwidth_95", &mc::McEstimate::ci_halfwidth_95)
      .def_readonly("seed", &mc::McEstimate::seed)
      .def_property_readonly("method",
                             [](const mc::McEstimate& e) { return mc::to_string(e.method); })
      .def("__repr__", [](const mc::McEstimate& e) {
        return "McEstimate(mean=" + std::to_string(e.mean) +
               ", std_err=" + std::to_string(e.std_err) + ")";
      });

  py::class_<mc::IncrementEstimate>(m, "IncrementEstimate")
      .def_readonly("coarse", &mc::IncrementEstimate::coarse)
      .def_readonly("fine", &mc::IncrementEstimate::fine)
      .def_readonly("diff_mean", &mc::IncrementEstimate::diff_mean)
      .def_readonly("diff_std_err", &mc::IncrementEstimate::diff_std_err)
      .def_readonly("coupling_violations", &mc::IncrementEstimate::coupling_violations);

  py::class_<mc::DeltaProxy>(m, "DeltaProxy")
      .def_readonly("proxy", &mc::DeltaProxy::proxy)
      .def_readonly("se", &mc::DeltaProxy::se)
      .def_readonly("coarse", &mc::DeltaProxy::coarse)
      .def_readonly("fine", &mc::DeltaProxy::fine);

  py::class_<mc::ChatterjeeCheck>(m, "ChatterjeeCheck")
      .def_readonly("lhs", &mc::ChatterjeeCheck::lhs)
      .def_readonly("lhs_se", &mc::ChatterjeeCheck::lhs_se)
      .def_readonly("rhs", &mc::ChatterjeeCheck::rhs)
      .def_readonly("holds", &mc::ChatterjeeCheck::holds);

  py::class_<mc::IidMaxEstimate>(m, "IidMaxEstimate")
      .def_readonly("estimate", &mc::IidMaxEstimate::estimate)
      .def_readonly("bound", &mc::IidMaxEstimate::bound);

  // covariance algebra
  m.def(
      "increment_variance",
      [](double h, double s, double t) { return increment_variance(HurstParam(h), s, t); },
      py::arg("h"), py::arg("s"), py::arg("t"));
  m.def(
      "covariance",
      [](double h, double s, double t) { return covariance(HurstParam(h), s, t); },
      py::arg("h"), py::arg("s"), py::arg("t"));
  m.def(
      "cov_matrix",
      [](double h, std::size_t n) {
        const CovMatrix cov = cov_matrix(HurstParam(h), UniformGrid(n));
        py::array_t<double> out({n, n});
        auto view = out.mutable_unchecked<2>();
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = cov.at(i, j);
          }
        }
        return out;
      },
      py::arg("h"), py::arg("n"));
  m.def(
      "fgn_autocovariance",
      [](double h, std::size_t n, std::size_t lag) {
        return fgn_autocovariance(HurstParam(h), n, lag);
      },
      py::arg("h"), py::arg("n"), py::arg("lag"));

  // samplers
  m.def(
      "sample_path",
      [](double h, std::size_t n, std::uint64_t seed, std::uint64_t stream,
         const std::string& method) {
        RandomStream rs(seed, stream);
        const FbmPath p = method == "cholesky"
                              ? sample_cholesky(HurstParam(h), UniformGrid(n), rs)
                              : sample_circulant(HurstParam(h), UniformGrid(n), rs);
        py::array_t<double> out(static_cast<py::ssize_t>(p.size()));
        std::copy(p.values.begin(), p.values.end(), out.mutable_data());
        return out;
      },
      py::arg("h"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0,
      py::arg("method") = "circulant");
  m.def(
      "sample_paths",
      [](double h, std::size_t n, std::size_t n_paths, std::uint64_t seed,
         const std::string& method, int threads) {
        const auto paths =
            mc::sample_paths(HurstParam(h), n, n_paths, run_options(seed, threads, method));
        py::array_t<double> out({n_paths, n});
        auto view = out.mutable_unchecked<2>();
        for (std::size_t i = 0; i < n_paths; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = paths[i].values[j];
          }
        }
        return out;
      },
      py::arg("h"), py::arg("n"), py::arg("n_paths"), py::arg("seed"),
      py::arg("method") = "circulant", py::arg("threads") = 1);

  // closed-form bounds
  m.def(
      "delta_upper_old",
      [](double h, std::size_t n) { return bnd::delta_upper_old(HurstParam(h), n); },
      py::arg("h"), py::arg("n"));
  m.def(
      "delta_upper",
      [](double h, std::size_t n, double alpha) {
        return bnd::delta_upper(HurstParam(h), n, alpha);
      },
      py::arg("h"), py::arg("n"), py::arg("alpha"));
  m.def(
      "delta_upper_lerch",
      [](double h, std::size_t n, double alpha, double tol) {
        return bnd::delta_upper_lerch(HurstParam(h), n, alpha, tol);
      },
      py::arg("h"), py::arg("n"), py::arg("alpha"), py::arg("tol") = 1e-12);
  m.def(
      "delta_lower", [](double h, std::size_t n) { return bnd::delta_lower(HurstParam(h), n); },
      py::arg("h"), py::arg("n"));
  m.def("alpha_star", &bnd::alpha_star, py::arg("tol") = 1e-10);
  m.def(
      "validity_region",
      [](double h, double alpha) { return bnd::validity_region(HurstParam(h), alpha); },
      py::arg("h"), py::arg("alpha"));
  m.def(
      "mn_upper", [](double h, std::size_t n) { return bnd::mn_upper(HurstParam(h), n); },
      py::arg("h"), py::arg("n"));
  m.def(
      "mh_lower", [](double h) { return bnd::mh_lower(HurstParam(h)); }, py::arg("h"));
  m.def(
      "mh_upper", [](double h) { return bnd::mh_upper(HurstParam(h)); }, py::arg("h"));
  m.def(
      "mh_upper_derivation",
      [](double h) { return bnd::mh_upper_derivation(HurstParam(h)); }, py::arg("h"));
  m.def(
      "mh_upper_derivation_at",
      [](double h, double alpha, double n) {
        return bnd::mh_upper_derivation(HurstParam(h), alpha, n);
      },
      py::arg("h"), py::arg("alpha"), py::arg("n"));
  m.def(
      "pickands_ours", [](double h) { return bnd::pickands_ours(HurstParam(h)); }, py::arg("h"));
  m.def(
      "pickands_shao", [](double h) { return bnd::pickands_shao(HurstParam(h)); }, py::arg("h"));
  m.def(
      "pickands_from_mh",
      [](double h, double mh_bound) { return bnd::pickands_from_mh(HurstParam(h), mh_bound); },
      py::arg("h"), py::arg("mh_bound"));
  m.def(
      "chatterjee_bound",
      [](const py::array_t<double>& dx, const py::array_t<double>& dy) {
        return bnd::chatterjee_bound(dtable_from_array(dx), dtable_from_array(dy));
      },
      py::arg("dx"), py::arg("dy"));
  m.def(
      "gamma_k_bound",
      [](double h, std::size_t n, double m_factor) {
        return bnd::gamma_k_bound(HurstParam(h), n, m_factor);
      },
      py::arg("h"), py::arg("n"), py::arg("m"));
  m.def(
      "refinement_dtables",
      [](double h, std::size_t n, std::size_t m_factor) {
        const auto [dx, dy] = bnd::refinement_dtables(HurstParam(h), n, m_factor);
        const auto to_array = [](const bnd::DTable& t) {
          const std::size_t n_t = t.size();
          py::array_t<double> out({n_t, n_t});
          auto view = out.mutable_unchecked<2>();
          for (std::size_t i = 0; i < n_t; ++i) {
            for (std::size_t j = 0; j < n_t; ++j) {
              view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = t.at(i, j);
            }
          }
          return out;
        };
        return py::make_tuple(to_array(dx), to_array(dy));
      },
      py::arg("h"), py::arg("n"), py::arg("m"));

  m.def("l_constant", &bnd::constants::l_constant);
  m.def("bm_max_mean", &bnd::constants::bm_max_mean);
  m.attr("BETA_BM") = bnd::constants::kBetaBm;
  m.attr("MH_UPPER_COEF") = bnd::constants::kMhUpperCoef;
  m.attr("PICKANDS_COEF") = bnd::constants::kPickandsCoef;

  // delta_f family
  m.def("delta_f_exp", &bnd::delta_f_exp, py::arg("a"), py::arg("delta"),
        py::arg("mh_surrogate"));
  m.def("delta_f_pow", &bnd::delta_f_pow, py::arg("p"), py::arg("delta"),
        py::arg("mh_surrogate"));
  m.def("delta_f_generic", &bnd::delta_f_generic, py::arg("delta"), py::arg("big_m"),
        py::arg("mh_surrogate"), py::arg("f"), py::arg("f_modulus"),
        py::arg("quad_tol") = 1e-10);

  // Monte Carlo estimators
  m.def(
      "estimate_mn",
      [](double h, std::size_t n, std::size_t n_samples, std::uint64_t seed,
         const std::string& method, int threads) {
        return mc::estimate_mn(HurstParam(h), n, n_samples, run_options(seed, threads, method));
      },
      py::arg("h"), py::arg("n"), py::arg("n_samples"), py::arg("seed"),
      py::arg("method") = "circulant", py::arg("threads") = 1);
  m.def(
      "estimate_increment",
      [](double h, std::size_t n, std::size_t m_factor, std::size_t n_samples,
         std::uint64_t seed, const std::string& method, int threads) {
        return mc::estimate_increment(HurstParam(h), n, m_factor, n_samples,
                                      run_options(seed, threads, method));
      },
      py::arg("h"), py::arg("n"), py::arg("m"), py::arg("n_samples"), py::arg("seed"),
      py::arg("method") = "circulant", py::arg("threads") = 1);
  m.def(
      "delta_proxy",
      [](double h, std::size_t n, std::size_t n_ref, std::size_t n_samples, std::uint64_t seed,
         const std::string& method, int threads) {
        return mc::delta_proxy(HurstParam(h), n, n_ref, n_samples,
                               run_options(seed, threads, method));
      },
      py::arg("h"), py::arg("n"), py::arg("n_ref"), py::arg("n_samples"), py::arg("seed"),
      py::arg("method") = "circulant", py::arg("threads") = 1);
  m.def(
      "estimate_max_iid_normals",
      [](std::size_t n, std::size_t n_samples, std::uint64_t seed, int threads) {
        return mc::estimate_max_iid_normals(n, n_samples,
                                            run_options(seed, threads, "circulant"));
      },
      py::arg("n"), py::arg("n_samples"), py::arg("seed"), py::arg("threads") = 1);
  m.def(
      "empirical_chatterjee",
      [](const py::array_t<double>& dx, const py::array_t<double>& dy, std::size_t n_samples,
         std::uint64_t seed, int threads) {
        return mc::empirical_chatterjee(dtable_from_array(dx), dtable_from_array(dy), n_samples,
                                        run_options(seed, threads, "cholesky"));
      },
      py::arg("dx"), py::arg("dy"), py::arg("n_samples"), py::arg("seed"),
      py::arg("threads") = 1);
}
