#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "splinex/assembly.hpp"
#include "splinex/solvers.hpp"

namespace splinex {

/// Fully resolved description of one CLI run.  Every run writes a
/// manifest.json with the full parameter set, library versions and timings next to its
/// CSV/SVG outputs; reruns with the same seed produce identical numeric
/// CSV content apart from wall-clock columns.
struct ExperimentSpec {
    std::string kind;  ///< duals | spectrum | convergence | scaling | fit | raster
    std::vector<int> p{3};
    std::vector<int> q{2};
    std::vector<std::vector<int>> n_list{{64}};  ///< sweep of per-dimension N
    std::string domain = "interval:0,0.5";
    std::string function_id = "exp1d";
    std::string zdual = "compact";
    std::string solver = "reduced-az";
    std::string raster_path;
    bool synthesize_raster = false;
    std::string out_dir = "out";
    uint64_t seed = 0;
    int repetitions = 3;
    double truncation_eps = 1e-8;  ///< eps for the duals dump
};

TensorBasis make_basis(std::vector<int> p, std::vector<int> q, std::vector<int> N);

/// Resolve a --domain argument.  Adds two file-backed forms to the
/// builtin descriptors: "raster:PATH.asc" (cells with data are inside)
/// and "mask:PATH.csv" (plain 0/1 comma-separated rows, top row first).
Domain resolve_domain(const std::string& descriptor);

/// Parse a --zdual argument: gram | truncated:EPS | compact[:K][:MABS].
ZSpec parse_zdual(const std::string& s, const TensorBasis& basis);

/// Named fixture functions: one, exp1d, expxy, expxyz.
std::function<double(const double*)> test_function(const std::string& id, int dim);

Eigen::VectorXd sample_rhs(const MaskedGrid& grid,
                           const std::function<double(const double*)>& f);

FitResult run_solver(const std::string& name, const ExtensionSystem& sys,
                     const Eigen::VectorXd& b, const SolverConfig& config = {});

/// Dispatch on spec.kind; writes outputs under spec.out_dir.
void run_experiment(const ExperimentSpec& spec);

}  // namespace splinex
