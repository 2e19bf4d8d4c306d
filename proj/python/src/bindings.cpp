#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "mixlab/grid_walks.hpp"
#include "mixlab/hypercube.hpp"
#include "mixlab/kernel.hpp"
#include "mixlab/lifted.hpp"
#include "mixlab/measures.hpp"
#include "mixlab/modular_affine.hpp"
#include "mixlab/permutations.hpp"
#include "mixlab/spectral.hpp"

namespace py = pybind11;
using namespace mixlab;

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact distribution evolution and mixing-time analysis for finite Markov chains";

  py::class_<Dist>(m, "Dist")
      .def(py::init<std::vector<double>>())
      .def_static("uniform", &Dist::uniform)
      .def_static("point_mass", &Dist::point_mass)
      .def_static("normalized", &Dist::normalized)
      .def("__len__", &Dist::size)
      .def("__getitem__",
           [](const Dist& d, std::size_t i) {
             if (i >= d.size()) throw py::index_error();
             return d[i];
           })
      .def_property_readonly("weights", &Dist::weights);

  m.def("tv_distance", &tv_distance);
  m.def("chi_square", &chi_square);
  m.def("separation", &separation);
  m.def("linf_distance", &linf_distance);
  m.def("kl_divergence", &kl_divergence);

  py::class_<Kernel>(m, "Kernel")
      .def_static("identity", &Kernel::identity)
      .def("__len__", &Kernel::size)
      .def_property_readonly("label", &Kernel::label)
      .def("entry", &Kernel::entry)
      .def("apply", &Kernel::apply);

  m.def("evolve", &evolve);
  m.def("is_stationary", &is_stationary, py::arg("kernel"), py::arg("pi"),
        py::arg("tol") = Kernel::kStationaryTolerance);
  m.def("is_reversible", &is_reversible, py::arg("kernel"), py::arg("pi"),
        py::arg("tol") = Kernel::kStationaryTolerance);

  py::class_<TVProfile>(m, "TVProfile")
      .def_readonly("steps", &TVProfile::steps)
      .def_readonly("values", &TVProfile::values)
      .def_property_readonly("metric", [](const TVProfile& p) { return metric_name(p.metric); })
      .def_readonly("label", &TVProfile::label)
      .def("to_csv", [](const TVProfile& p) {
        std::ostringstream out;
        p.write_csv(out);
        return out.str();
      });

  m.def(
      "tv_profile",
      [](const Kernel& k, const Dist& start, const Dist& pi, std::int64_t max_steps,
         const std::string& metric) {
        return tv_profile(k, start, pi, max_steps, metric_from_name(metric));
      },
      py::arg("kernel"), py::arg("start"), py::arg("pi"), py::arg("max_steps"),
      py::arg("metric") = "tv");
  m.def("mixing_time", &mixing_time);
  m.def(
      "find_mixing_time",
      [](const Kernel& k, const Dist& start, const Dist& pi, double eps,
         std::int64_t max_steps) { return find_mixing_time(k, start, pi, eps, max_steps); },
      py::arg("kernel"), py::arg("start"), py::arg("pi"), py::arg("eps"), py::arg("max_steps"));

  py::class_<SpectralData>(m, "SpectralData")
      .def_readonly("eigenvalues", &SpectralData::eigenvalues)
      .def_readonly("eigenvectors", &SpectralData::eigenvectors);
  m.def("spectral_decomposition", &spectral_decomposition, py::arg("kernel"), py::arg("pi"),
        py::arg("dense_cap") = 4096);
  m.def("chi_square_spectral", &chi_square_spectral);
  m.def("subdominant_modulus", &subdominant_modulus, py::arg("kernel"),
        py::arg("dense_cap") = 4096);
  m.def("spectral_gap", &spectral_gap, py::arg("kernel"), py::arg("dense_cap") = 4096);

  // grid walks
  m.def("path_kernel", &path_kernel);
  py::class_<LatticeRegion>(m, "LatticeRegion")
      .def_static("disc", &LatticeRegion::disc)
      .def_static("segment", &LatticeRegion::segment)
      .def_static("from_points",
                  [](int dimension, std::vector<std::vector<int>> points) {
                    return LatticeRegion(dimension, std::move(points));
                  })
      .def("__len__", &LatticeRegion::size)
      .def_property_readonly("points", &LatticeRegion::points);
  m.def("lattice_kernel", &lattice_kernel);
  py::class_<TableSpace>(m, "TableSpace")
      .def(py::init<std::vector<int>, std::vector<int>, std::size_t>(), py::arg("row_sums"),
           py::arg("col_sums"), py::arg("cap") = 200000)
      .def("__len__", &TableSpace::size)
      .def("table", &TableSpace::table);
  m.def("table_kernel", &table_kernel);

  // modular affine walks
  py::class_<AffineWalkSpec>(m, "AffineWalkSpec")
      .def_static("doubling", &AffineWalkSpec::doubling)
      .def_static("plain", &AffineWalkSpec::plain)
      .def_static("random_multiplier", &AffineWalkSpec::random_multiplier);
  m.def("affine_evolve", &affine_evolve);
  m.def("affine_kernel", &affine_kernel, py::arg("spec"), py::arg("cap") = 4096);
  m.def("cdg_constant", &cdg_constant);
  m.def("mod_inverse", &mod_inverse);

  // hypercube walks
  py::class_<GeneratorSet>(m, "GeneratorSet")
      .def_readonly("n", &GeneratorSet::n)
      .def_readonly("vectors", &GeneratorSet::vectors)
      .def_readonly("holding", &GeneratorSet::holding);
  m.def("spatula_generators", &spatula_generators, py::arg("n"), py::arg("d"),
        py::arg("holding") = true);
  m.def("comb_generators", &comb_generators, py::arg("n"), py::arg("pattern"),
        py::arg("holding") = true);
  m.def("gf2_basis_check", &gf2_basis_check);
  m.def("hypercube_tv", &hypercube_tv);
  m.def("hypercube_tv_profile", &hypercube_tv_profile);
  m.def("wilson_threshold", &wilson_threshold);
  m.def("binary_entropy", &binary_entropy);
  m.def("binary_entropy_inverse", &binary_entropy_inverse);

  // permutation walks
  m.def("perm_rank", &perm_rank);
  m.def("perm_unrank", &perm_unrank);
  m.def("inversions", &inversions);
  py::class_<GroupMeasure>(m, "GroupMeasure")
      .def(py::init<int, std::vector<double>>())
      .def_static("uniform", &GroupMeasure::uniform)
      .def_property_readonly("n", &GroupMeasure::n)
      .def("__len__", &GroupMeasure::size)
      .def_property_readonly("weights", &GroupMeasure::weights);
  m.def("convolve", &convolve);
  m.def("convolve_power", &convolve_power);
  m.def("tv_to_uniform", &tv_to_uniform);
  m.def("cut_measure", &cut_measure);
  m.def("random_transpositions_measure", &random_transpositions_measure);
  m.def("top_swap_or_cut_measure", &top_swap_or_cut_measure);
  m.def("gsr_measure", &gsr_measure);
  m.def("riffle_tv_exact", &riffle_tv_exact);
  m.def("mallows_distribution", &mallows_distribution);
  m.def("mallows_normalizer", &mallows_normalizer);
  m.def("adjacency_statistic", &adjacency_statistic);
  m.def("lis_length", &lis_length);
  m.def(
      "null_distribution",
      [](const std::string& stat, int n, std::int64_t samples, std::uint64_t seed) {
        const NullDistribution null = null_distribution(statistic_from_name(stat), n, samples, seed);
        return py::make_tuple(null.counts, null.mean);
      },
      py::arg("stat"), py::arg("n"), py::arg("samples"), py::arg("seed") = 0);

  // lifted walks
  py::class_<LiftedSpec>(m, "LiftedSpec")
      .def(py::init([](std::size_t n, double reversal) {
             return LiftedSpec{n, reversal};
           }),
           py::arg("n"), py::arg("reversal") = 0.0)
      .def_readonly("n", &LiftedSpec::n)
      .def_readonly("reversal", &LiftedSpec::reversal);
  m.def("dhn_kernel", &dhn_kernel);
  m.def("position_marginal", &position_marginal);
  m.def("dhn_position_mixing_time", &dhn_position_mixing_time);
  m.def("gap_vs_theta", [](std::size_t n, const std::vector<double>& thetas) {
    const GapCurve curve = gap_vs_theta(n, thetas);
    std::vector<std::pair<double, double>> points;
    points.reserve(curve.points.size());
    for (const auto& p : curve.points) points.emplace_back(p.theta, p.gap);
    return py::make_tuple(points, curve.argmax);
  });

  m.attr("__version__") = "0.1.0";
}
