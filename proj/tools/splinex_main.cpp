// Command-line front end: dual dumps, singular-value spectra, convergence
// sweeps, scaling benchmarks, function fits and raster fits.
//
// Exit codes: 0 success, 2 input error, 3 numerical failure.

#include <CLI11.hpp>
#include <iostream>

#include "splinex/errors.hpp"
#include "splinex/experiments.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

// "32,64,128" -> {{32},{64},{128}};  "32x32,64x64" -> {{32,32},{64,64}}
std::vector<std::vector<int>> parse_n_list(const std::string& s) {
    std::vector<std::vector<int>> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::vector<int> point;
        std::stringstream ts(tok);
        std::string part;
        while (std::getline(ts, part, 'x')) point.push_back(std::stoi(part));
        if (point.empty()) throw std::invalid_argument("empty N entry");
        out.push_back(std::move(point));
    }
    if (out.empty()) throw std::invalid_argument("empty N list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"least-squares spline extension on irregular domains"};
    app.require_subcommand(1);

    std::string p = "3", q = "2", n = "64";
    splinex::ExperimentSpec spec;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--p", p, "spline degree(s), comma list per dimension");
        sub->add_option("--q", q, "oversampling factor(s), comma list per dimension");
        sub->add_option("--n", n, "basis sizes; comma list of sweep points, 'x' separates dimensions");
        sub->add_option("--domain", spec.domain,
                        "interval:a,b | box:a1,b1[,a2,b2..] | disk:cx,cy,r | ball:cx,cy,cz,r | "
                        "flower | raster:FILE.asc | mask:FILE.csv");
        sub->add_option("--zdual", spec.zdual, "gram | truncated:EPS | compact[:K][:MABS]");
        sub->add_option("--solver", spec.solver, "svd | reduced-az | sparse-az | iterative");
        sub->add_option("--out", spec.out_dir, "output directory");
        sub->add_option("--seed", spec.seed, "seed recorded in the manifest");
        sub->add_option("--function", spec.function_id, "one | exp1d | expxy | expxyz");
    };

    CLI::App* duals = app.add_subcommand("duals", "dump dual coefficient sequences as CSV");
    add_common(duals);
    duals->add_option("--trunc-eps", spec.truncation_eps, "truncation threshold for the dump");

    CLI::App* spectrum = app.add_subcommand("spectrum", "singular values of A - A Z* A");
    add_common(spectrum);

    CLI::App* convergence = app.add_subcommand("convergence", "residual vs N sweep");
    add_common(convergence);

    CLI::App* scaling = app.add_subcommand("scaling", "wall time vs N sweep (median of reps)");
    add_common(scaling);
    scaling->add_option("--reps", spec.repetitions, "timing repetitions (>= 3 recommended)");

    CLI::App* fit = app.add_subcommand("fit", "single least-squares fit");
    add_common(fit);

    CLI::App* raster = app.add_subcommand("raster", "fit a gridded dataset (.asc)");
    add_common(raster);
    raster->add_option("--path", spec.raster_path, "ESRI ASCII grid path")->required();
    raster->add_flag("--synthetic", spec.synthesize_raster,
                     "generate the synthetic 336x448 flower fixture at --path first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        spec.kind = sub->get_name();
        spec.p = parse_int_list(p);
        spec.q = parse_int_list(q);
        // raster derives N from the file dimensions unless --n is given
        if (spec.kind == "raster" && sub->count("--n") == 0)
            spec.n_list.clear();
        else
            spec.n_list = parse_n_list(n);
        splinex::run_experiment(spec);
    } catch (const splinex::UnknownDomain& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const splinex::RasterParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const splinex::GridMismatch& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const splinex::EmptyDomain& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const splinex::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
