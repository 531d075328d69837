#include "splinex/experiments.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>

#include <json.hpp>

#include "splinex/errors.hpp"
#include "splinex/raster.hpp"
#include "splinex/report.hpp"

namespace splinex {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr const char* kVersion = "0.1.0";

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

json spec_json(const ExperimentSpec& s) {
    json n = json::array();
    for (const auto& v : s.n_list) n.push_back(v);
    return json{{"kind", s.kind},       {"p", s.p},
                {"q", s.q},             {"n", n},
                {"domain", s.domain},   {"function", s.function_id},
                {"zdual", s.zdual},     {"solver", s.solver},
                {"raster", s.raster_path}, {"seed", s.seed},
                {"repetitions", s.repetitions}};
}

void write_manifest(const ExperimentSpec& s, const json& results, double total_s) {
    json m{{"spec", spec_json(s)},
           {"versions",
            {{"splinex", kVersion},
             {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                           std::to_string(EIGEN_MAJOR_VERSION) + "." +
                           std::to_string(EIGEN_MINOR_VERSION)}}},
           {"results", results},
           {"timings", {{"total_s", total_s}}}};
    std::filesystem::create_directories(s.out_dir);
    std::ofstream f(s.out_dir + "/manifest.json");
    f << m.dump(2) << "\n";
}

std::string out_path(const ExperimentSpec& s, const std::string& name) {
    std::filesystem::create_directories(s.out_dir);
    return s.out_dir + "/" + name;
}

std::vector<int> broadcast(const std::vector<int>& v, int dim, const char* what) {
    if (static_cast<int>(v.size()) == dim) return v;
    if (v.size() == 1) return std::vector<int>(static_cast<size_t>(dim), v[0]);
    throw std::invalid_argument(std::string(what) + ": expected 1 or dim entries");
}

struct BuiltProblem {
    ExtensionSystem sys;
    Eigen::VectorXd b;
};

BuiltProblem build_problem(const ExperimentSpec& spec, const std::vector<int>& N) {
    const Domain dom = resolve_domain(spec.domain);
    TensorBasis basis = make_basis(broadcast(spec.p, dom.dim, "p"),
                                   broadcast(spec.q, dom.dim, "q"),
                                   broadcast(N, dom.dim, "n"));
    BuiltProblem pb{build_system(dom, basis, parse_zdual(spec.zdual, basis)), {}};
    if (double(pb.sys.grid.M) < 1.2 * double(pb.sys.cols()))
        std::fprintf(stderr,
                     "warning: %lld points for %lld basis functions; oversampling "
                     "factor below 1.2\n",
                     static_cast<long long>(pb.sys.grid.M),
                     static_cast<long long>(pb.sys.cols()));
    pb.b = sample_rhs(pb.sys.grid, test_function(spec.function_id, dom.dim));
    return pb;
}

// ---------------------------------------------------------------- duals --

void run_duals(const ExperimentSpec& spec) {
    const auto t0 = Clock::now();
    if (spec.p.size() != 1 || spec.q.size() != 1)
        throw std::invalid_argument("duals: univariate only");
    const int p = spec.p[0], q = spec.q[0], N = spec.n_list.at(0).at(0);

    CsvTable t;
    t.header = {"family", "k", "value"};  // family: 0 cont, 1 disc, 2 trunc, 3 compact
    auto push_periodic = [&](int fam, const DualCoefficients& c) {
        for (int k = -N / 2; k < N - N / 2; ++k)
            t.rows.push_back({double(fam), double(k), c.at(k)});
    };
    push_periodic(0, continuous_dual_coeffs(p, N));
    const DualCoefficients d = discrete_dual_coeffs(p, q, N);  // throws for (0,2)
    push_periodic(1, d);
    const TruncatedDual tr = truncate_dual(d, spec.truncation_eps);
    for (int k = -tr.band_radius; k <= tr.band_radius; ++k)
        t.rows.push_back({2.0, double(k), tr.base.at(k)});
    json results;
    if (p > 0 && q > 1) {
        const CompactDualSequence h = compact_dual(p, q);
        for (int k = -h.K; k <= h.K; ++k) t.rows.push_back({3.0, double(k), h.value(k)});
        results["compact_K"] = h.K;
    }
    t.comments.push_back("family: 0=continuous 1=discrete 2=truncated 3=compact");
    write_csv(t, out_path(spec, "duals.csv"));

    std::vector<SvgSeries> series(4);
    const char* labels[4] = {"continuous", "discrete", "truncated", "compact"};
    for (const auto& row : t.rows) {
        auto& s = series[static_cast<size_t>(row[0])];
        s.label = labels[static_cast<size_t>(row[0])];
        s.x.push_back(std::abs(row[1]) + 1.0);  // log axis: plot vs |k|+1
        s.y.push_back(std::abs(row[2]));
    }
    series.erase(std::remove_if(series.begin(), series.end(),
                                [](const SvgSeries& s) { return s.x.empty(); }),
                 series.end());
    write_text_file(svg_loglog(series, "|k|+1", "|coefficient|"),
                    out_path(spec, "duals.svg"));
    write_manifest(spec, results, seconds_since(t0));
}

// ------------------------------------------------------------- spectrum --

void run_spectrum(const ExperimentSpec& spec) {
    const auto t0 = Clock::now();
    BuiltProblem pb = build_problem(spec, spec.n_list.at(0));
    const CompressedBlock blk = reduce(pb.sys);

    Eigen::VectorXd sigma;
    if (blk.block.size() > 0) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(blk.block);
        sigma = svd.singularValues();
    }
    // pad with exact zeros up to #K (the dropped rows are zero rows);
    // an empty boundary set gives an empty spectrum
    const Eigen::Index full = static_cast<Eigen::Index>(blk.col_index_map.size());
    CsvTable t;
    t.header = {"index", "sigma"};
    for (Eigen::Index i = 0; i < full; ++i)
        t.rows.push_back({double(i), i < sigma.size() ? sigma[i] : 0.0});
    const double smax = sigma.size() ? sigma[0] : 0.0;
    Eigen::Index numrank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma[i] > 1e-10 * smax) ++numrank;
    t.comments.push_back("numerical_rank(1e-10) = " + std::to_string(numrank));
    write_csv(t, out_path(spec, "spectrum.csv"));

    // logarithmic sparsity map in global (row, column) coordinates
    CsvTable sp;
    sp.header = {"row", "col", "log10_abs"};
    for (Eigen::Index i = 0; i < blk.block.rows(); ++i)
        for (Eigen::Index j = 0; j < blk.block.cols(); ++j) {
            const double a = std::abs(blk.block(i, j));
            if (a > 0.0)
                sp.rows.push_back({double(blk.row_index_map[i]),
                                   double(blk.col_index_map[j]), std::log10(a)});
        }
    write_csv(sp, out_path(spec, "sparsity.csv"));

    SvgSeries s;
    s.label = "sigma";
    for (const auto& row : t.rows) {
        s.x.push_back(row[0] + 1.0);
        s.y.push_back(row[1]);
    }
    write_text_file(svg_loglog({s}, "index", "singular value"),
                    out_path(spec, "spectrum.svg"));

    write_manifest(spec,
                   json{{"block_rows", blk.row_index_map.size()},
                        {"block_cols", blk.col_index_map.size()},
                        {"numerical_rank", numrank},
                        {"sigma_max", smax},
                        {"nonzeros", blk.nonzeros}},
                   seconds_since(t0));
}

// ---------------------------------------------------------- convergence --

void run_convergence(const ExperimentSpec& spec) {
    const auto t0 = Clock::now();
    struct Row {
        double n, res, coef, time;
    };
    std::vector<std::future<Row>> futs;
    // sweep points run in a small worker pool; output keeps spec order
    for (const auto& N : spec.n_list) {
        futs.push_back(std::async(std::launch::async, [&spec, N]() {
            const auto ts = Clock::now();
            BuiltProblem pb = build_problem(spec, N);
            const FitResult r = run_solver(spec.solver, pb.sys, pb.b);
            return Row{double(pb.sys.cols()), r.residual_norm, r.coefficient_norm,
                       seconds_since(ts)};
        }));
        if (futs.size() % 4 == 0) futs.back().wait();  // bound concurrency
    }
    CsvTable t;
    t.header = {"n_total", "residual_norm", "coefficient_norm", "time_s"};
    std::vector<double> xs, ys;
    for (auto& f : futs) {
        const Row r = f.get();
        t.rows.push_back({r.n, r.res, r.coef, r.time});
        xs.push_back(r.n);
        ys.push_back(r.res);
    }
    const double slope = loglog_slope(xs, ys);
    t.comments.push_back("loglog_slope = " + std::to_string(slope));
    write_csv(t, out_path(spec, "convergence.csv"));

    SvgSeries s{spec.function_id, xs, ys};
    write_text_file(svg_loglog({s}, "N", "residual"), out_path(spec, "convergence.svg"));
    write_manifest(spec, json{{"slope", slope}}, seconds_since(t0));
}

// -------------------------------------------------------------- scaling --

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t end = s.find(',', start);
        if (end == std::string::npos) end = s.size();
        if (end > start) out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

void run_scaling(const ExperimentSpec& spec) {
    const auto t0 = Clock::now();
    const std::vector<std::string> solvers = split_list(spec.solver);
    std::string csv = "n_total,solver,wall_time_s,block_rows,block_cols,nonzeros\n";
    json results;
    for (const auto& solver : solvers) {
        std::vector<double> xs, ts;
        for (const auto& N : spec.n_list) {
            BuiltProblem pb = build_problem(spec, N);
            run_solver(solver, pb.sys, pb.b);  // warm-up, discarded
            std::vector<double> reps;
            FitResult last;
            for (int r = 0; r < std::max(1, spec.repetitions); ++r) {
                const auto ts0 = Clock::now();
                last = run_solver(solver, pb.sys, pb.b);
                reps.push_back(seconds_since(ts0));
            }
            std::sort(reps.begin(), reps.end());
            const double med = reps[reps.size() / 2];
            char line[256];
            std::snprintf(line, sizeof line, "%lld,%s,%.6g,%lld,%lld,%lld\n",
                          static_cast<long long>(pb.sys.cols()), solver.c_str(), med,
                          static_cast<long long>(last.block_rows),
                          static_cast<long long>(last.block_cols), last.nonzero_count);
            csv += line;
            xs.push_back(double(pb.sys.cols()));
            ts.push_back(med);
        }
        results[solver] = {{"slope", loglog_slope(xs, ts)}};
        csv += "# slope_" + solver + " = " + std::to_string(loglog_slope(xs, ts)) + "\n";
    }
    write_text_file(csv, out_path(spec, "scaling.csv"));
    write_manifest(spec, results, seconds_since(t0));
}

// ------------------------------------------------------------ fit/raster --

void run_fit(const ExperimentSpec& spec) {
    const auto t0 = Clock::now();
    BuiltProblem pb = build_problem(spec, spec.n_list.at(0));
    const FitResult r = run_solver(spec.solver, pb.sys, pb.b);
    CsvTable t;
    t.header = {"index", "coefficient"};
    for (Eigen::Index i = 0; i < r.x.size(); ++i) t.rows.push_back({double(i), r.x[i]});
    write_csv(t, out_path(spec, "coefficients.csv"));
    write_manifest(spec,
                   json{{"residual_norm", r.residual_norm},
                        {"relative_residual", r.residual_norm / pb.b.norm()},
                        {"coefficient_norm", r.coefficient_norm},
                        {"numerical_rank", r.numerical_rank},
                        {"block_rows", r.block_rows},
                        {"block_cols", r.block_cols},
                        {"nonzeros", r.nonzero_count}},
                   seconds_since(t0));
}

void run_raster(const ExperimentSpec& spec) {
    const auto t0 = Clock::now();
    if (spec.raster_path.empty()) throw std::invalid_argument("raster: missing path");
    RasterDataset raster;
    if (spec.synthesize_raster) {
        raster = synthetic_raster(336, 448, [](double x, double y) { return std::exp(x * y); },
                                  flower_domain());
        write_esri_ascii(raster, spec.raster_path);
    } else {
        raster = read_esri_ascii(spec.raster_path);
    }

    const std::vector<int> p = broadcast(spec.p, 2, "p");
    const std::vector<int> q = broadcast(spec.q, 2, "q");
    if (raster.ncols % q[0] != 0 || raster.nrows % q[1] != 0)
        throw GridMismatch("raster dimensions not divisible by q");
    std::vector<int> N{raster.ncols / q[0], raster.nrows / q[1]};
    if (!spec.n_list.empty() && !spec.n_list[0].empty()) {
        const std::vector<int> given = broadcast(spec.n_list[0], 2, "n");
        if (given != N)
            throw GridMismatch("q*N must match the raster dimensions " +
                               std::to_string(raster.ncols) + "x" + std::to_string(raster.nrows));
    }

    auto mask = std::make_shared<const std::vector<uint8_t>>(raster.mask_bottom_up());
    const Domain dom = raster_mask_domain(mask, raster.ncols, raster.nrows);
    TensorBasis basis = make_basis(p, q, N);
    ExtensionSystem sys = build_system(dom, basis, parse_zdual(spec.zdual, basis));

    // grid points are exactly the valid raster cells
    Eigen::VectorXd b(sys.grid.M);
    std::vector<int> k(2);
    for (int64_t m = 0; m < sys.grid.M; ++m) {
        sys.grid.decode(sys.grid.points[m], k.data());
        if (!raster.valid(k[0], raster.nrows - 1 - k[1]))
            throw Error("grid point maps to a NODATA cell");
        b[m] = raster.at(k[0], raster.nrows - 1 - k[1]);
    }

    const FitResult r = run_solver(spec.solver, sys, b);
    const Eigen::VectorXd fitted = sys.A * r.x;

    CsvTable t;
    t.header = {"x", "y", "data", "fitted", "abs_err", "rel_err"};
    for (int64_t m = 0; m < sys.grid.M; ++m) {
        sys.grid.decode(sys.grid.points[m], k.data());
        const double x = double(k[0]) / sys.grid.L[0];
        const double y = double(k[1]) / sys.grid.L[1];
        const double err = std::abs(fitted[m] - b[m]);
        t.rows.push_back({x, y, b[m], fitted[m], err,
                          b[m] != 0.0 ? err / std::abs(b[m]) : err});
    }
    write_csv(t, out_path(spec, "errors.csv"));
    write_manifest(spec,
                   json{{"relative_residual", r.residual_norm / b.norm()},
                        {"residual_norm", r.residual_norm},
                        {"coefficient_norm", r.coefficient_norm},
                        {"block_rows", r.block_rows},
                        {"block_cols", r.block_cols},
                        {"points", sys.grid.M},
                        {"n", N}},
                   seconds_since(t0));
}

}  // namespace

TensorBasis make_basis(std::vector<int> p, std::vector<int> q, std::vector<int> N) {
    TensorBasis b{std::move(p), std::move(q), std::move(N)};
    validate_basis(b);
    return b;
}

Domain resolve_domain(const std::string& descriptor) {
    const size_t colon = descriptor.find(':');
    const std::string name = descriptor.substr(0, colon);
    if (name == "raster" || name == "mask") {
        if (colon == std::string::npos) throw UnknownDomain(name + " needs a file path");
        const std::string path = descriptor.substr(colon + 1);
        int ncols = 0, nrows = 0;
        std::vector<uint8_t> top_down;
        if (name == "raster") {
            const RasterDataset r = read_esri_ascii(path);
            ncols = r.ncols;
            nrows = r.nrows;
            top_down = r.mask;
        } else {
            top_down = read_csv_mask(path, &ncols, &nrows);
        }
        auto bottom_up = std::make_shared<std::vector<uint8_t>>(top_down.size());
        for (int j = 0; j < nrows; ++j)
            for (int i = 0; i < ncols; ++i)
                (*bottom_up)[static_cast<size_t>(j) * ncols + i] =
                    top_down[static_cast<size_t>(nrows - 1 - j) * ncols + i];
        return raster_mask_domain(bottom_up, ncols, nrows);
    }
    return builtin_domain(descriptor);
}

ZSpec parse_zdual(const std::string& s, const TensorBasis& basis) {
    const std::vector<std::string> parts = [&] {
        std::vector<std::string> out;
        size_t start = 0;
        while (start <= s.size()) {
            size_t end = s.find(':', start);
            if (end == std::string::npos) end = s.size();
            out.push_back(s.substr(start, end - start));
            start = end + 1;
        }
        return out;
    }();
    const std::string& name = parts[0];
    if (name == "gram") return make_gram_zspec(basis);
    if (name == "truncated") {
        if (parts.size() < 2) throw std::invalid_argument("truncated dual needs :EPS");
        return make_banded_zspec(basis, std::stod(parts[1]));
    }
    if (name == "compact") {
        std::optional<int> K;
        std::optional<double> cap;
        if (parts.size() > 1 && !parts[1].empty()) K = std::stoi(parts[1]);
        if (parts.size() > 2 && !parts[2].empty()) cap = std::stod(parts[2]);
        return make_compact_zspec(basis, K, cap);
    }
    throw std::invalid_argument("unknown zdual spec: " + s);
}

std::function<double(const double*)> test_function(const std::string& id, int dim) {
    if (id == "one") return [](const double*) { return 1.0; };
    if (id == "exp1d") return [](const double* x) { return std::exp(x[0]); };
    if (id == "expxy") {
        if (dim < 2) throw std::invalid_argument("expxy needs dim >= 2");
        return [](const double* x) { return std::exp(x[0] * x[1]); };
    }
    if (id == "expxyz") {
        if (dim < 3) throw std::invalid_argument("expxyz needs dim >= 3");
        return [](const double* x) { return std::exp(x[0] * x[1] * x[2]); };
    }
    throw std::invalid_argument("unknown function id: " + id);
}

Eigen::VectorXd sample_rhs(const MaskedGrid& grid,
                           const std::function<double(const double*)>& f) {
    Eigen::VectorXd b(grid.M);
    for (int64_t m = 0; m < grid.M; ++m) {
        const std::vector<double> x = grid.coords(m);
        b[m] = f(x.data());
    }
    return b;
}

FitResult run_solver(const std::string& name, const ExtensionSystem& sys,
                     const Eigen::VectorXd& b, const SolverConfig& config) {
    if (name == "svd") return solve_svd(sys, b, config);
    if (name == "reduced-az") return solve_reduced_az(sys, b, config);
    if (name == "sparse-az") return solve_sparse_az(sys, b, config);
    if (name == "iterative") return solve_iterative(sys, b, config);
    throw std::invalid_argument("unknown solver: " + name);
}

void run_experiment(const ExperimentSpec& spec) {
    if (spec.kind == "duals") return run_duals(spec);
    if (spec.kind == "spectrum") return run_spectrum(spec);
    if (spec.kind == "convergence") return run_convergence(spec);
    if (spec.kind == "scaling") return run_scaling(spec);
    if (spec.kind == "fit") return run_fit(spec);
    if (spec.kind == "raster") return run_raster(spec);
    throw std::invalid_argument("unknown experiment kind: " + spec.kind);
}

}  // namespace splinex
