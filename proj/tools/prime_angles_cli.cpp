// Command-line front end: reproducible runs over the Gaussian-prime angle
// statistics, the smooth Fourier model, the function-field model, and the
// random-matrix comparisons.  Every data file gets a .manifest.json sidecar
// recording the exact parameters and an FNV-1a digest of the payload.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "primeangles/common.hpp"
#include "primeangles/ff_core.hpp"
#include "primeangles/ff_spectral.hpp"
#include "primeangles/ff_stats.hpp"
#include "primeangles/gaussian.hpp"
#include "primeangles/manifest.hpp"
#include "primeangles/rmt.hpp"
#include "primeangles/sector.hpp"
#include "primeangles/smooth.hpp"
#include "primeangles/window.hpp"

using namespace primeangles;

namespace {

using clock_type = std::chrono::steady_clock;

std::uint64_t parse_count(const std::string& text, const char* what) {
    // numeric flags accept scientific notation: 1e8, 2.5e6, plain integers
    try {
        const double v = std::stod(text);
        if (!(v >= 0) || v > 9.3e18 || v != std::floor(v))
            throw std::invalid_argument("not a nonnegative integer");
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw CLI::ValidationError(std::string(what) + ": expected a nonnegative integer, got '" +
                                   text + "'");
    }
}

std::vector<double> parse_grid(const std::string& text) {
    // start:stop:step, inclusive
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("--betas expects start:stop:step");
    const double start = std::stod(text.substr(0, c1));
    const double stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(text.substr(c2 + 1));
    if (step <= 0 || stop < start) throw CLI::ValidationError("--betas: bad grid");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double b = start + i * step;
        if (b > stop + 1e-12) break;
        grid.push_back(b);
    }
    return grid;
}

const WindowPair& window_by_name(const std::string& name) {
    if (name == "std") return WindowPair::standard();
    if (name == "alt") return WindowPair::alternative();
    throw CLI::ValidationError("--window must be std or alt");
}

rmt::WeightModes load_weight(const std::string& path) {
    if (path.empty()) return rmt::WeightModes::constant_one();
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("cannot open weight file " + path);
    nlohmann::json j;
    f >> j;
    rmt::WeightModes w;
    for (const auto& m : j.at("modes")) {
        w.ell.push_back(m.at(0).get<long>());
        w.hat.emplace_back(m.at(1).get<double>(), m.size() > 2 ? m.at(2).get<double>() : 0.0);
    }
    if (w.ell.empty()) throw CLI::ValidationError("weight file has no modes");
    return w;
}

struct Timer {
    clock_type::time_point t0 = clock_type::now();
    double seconds() const { return std::chrono::duration<double>(clock_type::now() - t0).count(); }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fine-scale statistics of Gaussian prime angles"};
    app.require_subcommand(1);

    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default: logical cores)");

    std::string out;

    // ---- sieve ----------------------------------------------------------
    auto* sieve_cmd = app.add_subcommand("sieve", "write the binary angle cache");
    std::string sieve_x;
    bool sieve_split_only = false;
    sieve_cmd->add_option("--x", sieve_x, "norm bound")->required();
    sieve_cmd->add_flag("--split-only", sieve_split_only, "drop inert and ramified ideals");
    sieve_cmd->add_option("--out", out, "output cache path")->required();

    // ---- variance -------------------------------------------------------
    auto* var_cmd = app.add_subcommand("variance", "sector variance at one (x, K)");
    std::string var_x, var_k;
    bool var_split_only = false;
    var_cmd->add_option("--x", var_x, "norm bound")->required();
    var_cmd->add_option("--K", var_k, "number of sectors")->required();
    var_cmd->add_flag("--split-only", var_split_only, "split primes only");
    var_cmd->add_option("--out", out, "output CSV")->required();

    // ---- figure1 --------------------------------------------------------
    auto* fig_cmd = app.add_subcommand("figure1", "variance-ratio curve over a beta grid");
    std::string fig_x, fig_betas = "0.1:1.4:0.05";
    bool fig_split_only = false;
    fig_cmd->add_option("--x", fig_x, "norm bound")->required();
    fig_cmd->add_option("--betas", fig_betas, "grid start:stop:step (inclusive)");
    fig_cmd->add_flag("--split-only", fig_split_only, "split primes only");
    fig_cmd->add_option("--out", out, "output CSV")->required();

    // ---- gaps -----------------------------------------------------------
    auto* gaps_cmd = app.add_subcommand("gaps", "minimal and maximal angle gaps");
    std::string gaps_x;
    gaps_cmd->add_option("--x", gaps_x, "norm bound")->required();
    gaps_cmd->add_option("--out", out, "output CSV")->required();

    // ---- smooth-variance --------------------------------------------------
    auto* sm_cmd = app.add_subcommand("smooth-variance", "Var(psi_{K,X}) and the c2 prediction");
    std::string sm_x, sm_k;
    long sm_kmax = -1;
    std::string sm_window = "std";
    bool sm_primes_only = false, sm_quadrature = false;
    sm_cmd->add_option("--X", sm_x, "radial scale")->required();
    sm_cmd->add_option("--K", sm_k, "angular scale")->required();
    sm_cmd->add_option("--kmax", sm_kmax, "spectral truncation (default: window rule)");
    sm_cmd->add_option("--window", sm_window, "window pair: std or alt");
    sm_cmd->add_flag("--primes-only", sm_primes_only, "use psi^prime");
    sm_cmd->add_flag("--quadrature", sm_quadrature, "also run the theta-grid variance");
    sm_cmd->add_option("--out", out, "output CSV")->required();

    // ---- ff-variance ----------------------------------------------------
    auto* ffv_cmd = app.add_subcommand("ff-variance", "function-field sector variance");
    std::uint32_t ffv_q = 0;
    int ffv_k = 0, ffv_nu = 0;
    bool ffv_brute = false, ffv_spectral = false;
    ffv_cmd->add_option("--q", ffv_q, "odd prime field size")->required();
    ffv_cmd->add_option("--k", ffv_k, "sector modulus S^k")->required();
    ffv_cmd->add_option("--nu", ffv_nu, "polynomial degree")->required();
    ffv_cmd->add_flag("--brute", ffv_brute, "force the enumeration path");
    ffv_cmd->add_flag("--spectral", ffv_spectral, "force the trace path");
    ffv_cmd->add_option("--out", out, "output CSV")->required();

    // ---- ff-spectral ----------------------------------------------------
    auto* ffs_cmd = app.add_subcommand("ff-spectral", "character/L-polynomial check suite");
    std::uint32_t ffs_q = 0;
    int ffs_k = 0;
    std::string ffs_checks = "orthogonality,rh,explicit,variance";
    ffs_cmd->add_option("--q", ffs_q, "odd prime field size")->required();
    ffs_cmd->add_option("--k", ffs_k, "sector modulus S^k")->required();
    ffs_cmd->add_option("--check", ffs_checks, "comma list: orthogonality,rh,explicit,variance");
    ffs_cmd->add_option("--out", out, "output JSON report")->required();

    // ---- rmt ------------------------------------------------------------
    auto* rmt_cmd = app.add_subcommand("rmt", "Haar moment Monte Carlo vs closed forms");
    std::string rmt_group = "u";
    int rmt_dim = 0;
    long rmt_n = 0;
    std::string rmt_samples;
    std::uint64_t rmt_seed = 0;
    bool have_seed = false;
    std::string rmt_weight;
    rmt_cmd->add_option("--group", rmt_group, "u or usp")->required();
    rmt_cmd->add_option("--dim", rmt_dim, "matrix dimension")->required();
    rmt_cmd->add_option("--n", rmt_n, "statistic frequency")->required();
    rmt_cmd->add_option("--samples", rmt_samples, "Monte Carlo samples")->required();
    rmt_cmd->add_option("--seed", rmt_seed, "RNG seed (required for emission)")
        ->required()
        ->each([&](const std::string&) { have_seed = true; });
    rmt_cmd->add_option("--weight", rmt_weight, "JSON file with Fourier modes of w");
    rmt_cmd->add_option("--out", out, "output CSV")->required();

    // let --threads (a global flag) appear after the subcommand as well
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    set_worker_threads(threads);
    Timer timer;

    try {
        RunManifest man;
        man.version = kVersion;

        if (*sieve_cmd) {
            const std::uint64_t x = parse_count(sieve_x, "--x");
            man.subcommand = "sieve";
            man.params = {{"x", sieve_x}, {"split-only", sieve_split_only ? "1" : "0"}};
            const auto ideals = prime_ideal_angles(x, sieve_split_only);
            save_angle_cache(out, x, ideals);
            std::ifstream f(out, std::ios::binary);
            const std::string bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
            man.wall_time_s = timer.seconds();
            man.outputs.emplace_back(out, fnv1a64_hex(bytes));
            std::ofstream mf(out + ".manifest.json", std::ios::trunc);
            mf << manifest_json(man);
            std::printf("sieve: %zu ideals of norm <= %" PRIu64 " -> %s\n", ideals.size(), x,
                        out.c_str());
        } else if (*var_cmd) {
            const std::uint64_t x = parse_count(var_x, "--x");
            const std::uint64_t K = parse_count(var_k, "--K");
            man.subcommand = "variance";
            man.params = {{"x", var_x}, {"K", var_k}, {"split-only", var_split_only ? "1" : "0"}};
            auto ideals = prime_ideal_angles(x, var_split_only);
            std::vector<double> angles;
            for (const auto& r : ideals) angles.push_back(r.angle);
            std::sort(angles.begin(), angles.end());
            VarianceReport rep = discrete_variance_sorted(angles, K);
            rep.x = x;
            man.wall_time_s = timer.seconds();
            write_output_with_manifest(out, variance_csv({rep}), man);
        } else if (*fig_cmd) {
            const std::uint64_t x = parse_count(fig_x, "--x");
            man.subcommand = "figure1";
            man.params = {{"x", fig_x},
                          {"betas", fig_betas},
                          {"split-only", fig_split_only ? "1" : "0"}};
            const auto rows = figure1_curve(x, parse_grid(fig_betas), fig_split_only);
            man.wall_time_s = timer.seconds();
            write_output_with_manifest(out, variance_csv(rows), man);
        } else if (*gaps_cmd) {
            const std::uint64_t x = parse_count(gaps_x, "--x");
            man.subcommand = "gaps";
            man.params = {{"x", gaps_x}};
            auto ideals = prime_ideal_angles(x);
            std::vector<double> angles;
            for (const auto& r : ideals) angles.push_back(r.angle);
            const GapStats g = gap_statistics(angles);
            char buf[160];
            std::snprintf(buf, sizeof buf, "x,count,min_gap,max_gap\n%" PRIu64 ",%zu,%.12g,%.12g\n",
                          x, angles.size(), g.min_gap, g.max_gap);
            man.wall_time_s = timer.seconds();
            write_output_with_manifest(out, buf, man);
        } else if (*sm_cmd) {
            const std::uint64_t X = parse_count(sm_x, "--X");
            const std::uint64_t K = parse_count(sm_k, "--K");
            const WindowPair& w = window_by_name(sm_window);
            man.subcommand = "smooth-variance";
            man.params = {{"X", sm_x},
                          {"K", sm_k},
                          {"kmax", std::to_string(sm_kmax)},
                          {"window", sm_window},
                          {"primes-only", sm_primes_only ? "1" : "0"},
                          {"fhat_abs_error_budget", "1e-12"},
                          {"kmax_tail_threshold", "1e-14"}};
            const HeckeCache cache(X, w, sm_primes_only);
            SmoothVarianceRow row;
            row.X = X;
            row.K = K;
            row.kmax = sm_kmax >= 0 ? sm_kmax : w.kmax(K);
            row.var_parseval = variance_parseval(K, cache, sm_kmax);
            row.var_quadrature = sm_quadrature ? variance_quadrature(K, cache) : 0.0;
            const auto c51 = conjecture51_ratio(K, cache);
            row.predicted_c51 = c51.predicted;
            row.ratio = c51.predicted > 0 ? row.var_parseval / c51.predicted : 0.0;
            man.wall_time_s = timer.seconds();
            write_output_with_manifest(out, smooth_variance_csv({row}), man);
        } else if (*ffv_cmd) {
            man.subcommand = "ff-variance";
            man.params = {{"q", std::to_string(ffv_q)},
                          {"k", std::to_string(ffv_k)},
                          {"nu", std::to_string(ffv_nu)},
                          {"path", ffv_spectral ? "spectral" : (ffv_brute ? "brute" : "auto")}};
            ff::FfVarianceReport rep;
            bool use_spectral = ffv_spectral;
            if (!ffv_brute && !ffv_spectral) {
                // auto: brute until the enumeration budget, then traces
                double cost = std::pow(static_cast<double>(ffv_q),
                                       ffv_nu + ff::kappa_of(ffv_k));
                use_spectral = cost > 4e8;
            }
            if (use_spectral) {
                rep.q = ffv_q;
                rep.k = ffv_k;
                rep.kappa = ff::kappa_of(ffv_k);
                rep.nu = ffv_nu;
                rep.eta = ffv_nu % 2 == 0 ? 1 : 0;
                rep.var_psi = ff::spectral_variance(ffv_q, ffv_k, ffv_nu);
                rep.mean_psi = (std::pow(static_cast<double>(ffv_q), ffv_nu) - 1.0) /
                               std::pow(static_cast<double>(ffv_q), rep.kappa);
                rep.var_n = std::numeric_limits<double>::quiet_NaN(); // needs the enumeration path
                rep.mean_n = std::numeric_limits<double>::quiet_NaN();
                rep.theorem_prediction =
                    std::pow(static_cast<double>(ffv_q), ffv_nu - rep.kappa) *
                    ff::theorem_var_psi_factor(rep.kappa, ffv_nu);
                rep.prediction_in_range = rep.kappa >= 3 || (rep.kappa == 2 && ffv_q % 5 != 0);
            } else {
                rep = ff::ff_variance(ffv_q, ffv_k, ffv_nu);
            }
            man.wall_time_s = timer.seconds();
            write_output_with_manifest(out, ff::ff_variance_csv({rep}), man);
        } else if (*ffs_cmd) {
            man.subcommand = "ff-spectral";
            man.params = {{"q", std::to_string(ffs_q)},
                          {"k", std::to_string(ffs_k)},
                          {"check", ffs_checks}};
            const ff::CharacterTable T(ffs_q, ffs_k);
            const auto spectra = ff::all_spectra(T);
            nlohmann::json rep;
            rep["q"] = ffs_q;
            rep["k"] = ffs_k;
            rep["kappa"] = T.kappa();
            bool ok = true;

            nlohmann::json chars = nlohmann::json::array();
            for (const auto& fs : spectra) {
                nlohmann::json c;
                c["chi"] = fs.chi;
                c["swan"] = fs.swan;
                nlohmann::json lp = nlohmann::json::array();
                for (const auto& z : fs.lpoly) lp.push_back({z.real(), z.imag()});
                c["lpoly"] = lp;
                c["eigenangles"] = fs.eigenangles;
                c["root_modulus_residual"] = fs.max_unitarity_error;
                c["trivial_zero_residual"] = fs.trivial_zero_residual;
                chars.push_back(c);
            }
            rep["characters"] = chars;

            if (ffs_checks.find("orthogonality") != std::string::npos) {
                const double err = ff::orthogonality_max_error(T);
                rep["orthogonality_max_error"] = err;
                ok = ok && err < 1e-10;
            }
            if (ffs_checks.find("rh") != std::string::npos) {
                double worst = 0;
                for (const auto& fs : spectra) worst = std::max(worst, fs.max_unitarity_error);
                rep["rh_max_residual"] = worst;
                ok = ok && worst < 1e-9;
            }
            if (ffs_checks.find("explicit") != std::string::npos) {
                double worst = 0;
                for (int nu = 1; nu <= 4; ++nu) {
                    const auto tal = ff::sector_tallies(T.group(), nu);
                    for (const auto& fs : spectra)
                        worst = std::max(
                            worst, std::abs(ff::character_prime_sum(T, tal, fs.chi) -
                                            ff::character_prime_sum_trace(fs, ffs_q, nu)));
                }
                rep["explicit_formula_max_error"] = worst;
                ok = ok && worst < 1e-6;
            }
            if (ffs_checks.find("variance") != std::string::npos) {
                double worst = 0;
                for (int nu = 1; nu <= 4; ++nu) {
                    const double brute = ff::ff_variance(ffs_q, ffs_k, nu).var_psi;
                    const double spec = ff::spectral_variance(T, nu);
                    if (brute > 0) worst = std::max(worst, std::abs(spec - brute) / brute);
                }
                rep["variance_max_relative_error"] = worst;
                ok = ok && worst < 1e-6;
            }
            rep["pass"] = ok;
            man.wall_time_s = timer.seconds();
            write_output_with_manifest(out, rep.dump(2) + "\n", man);
            if (!ok) return 1;
        } else if (*rmt_cmd) {
            if (!have_seed) throw CLI::ValidationError("--seed is required");
            const std::uint64_t samples = parse_count(rmt_samples, "--samples");
            man.subcommand = "rmt";
            man.params = {{"group", rmt_group},   {"dim", std::to_string(rmt_dim)},
                          {"n", std::to_string(rmt_n)}, {"samples", rmt_samples},
                          {"weight", rmt_weight}, {"threads", std::to_string(threads)}};
            man.seed = rmt_seed;
            rmt::Group g;
            if (rmt_group == "u") g = rmt::Group::Unitary;
            else if (rmt_group == "usp") g = rmt::Group::Symplectic;
            else throw CLI::ValidationError("--group must be u or usp");
            const rmt::WeightModes w = load_weight(rmt_weight);
            const auto res = rmt::prop54_check(g, rmt_dim, rmt_n, w, samples, rmt_seed, threads);
            rmt::RmtRow row{g, rmt_dim, rmt_n, samples, res.mc_mean, res.mc_se, res.exact,
                            res.prediction};
            man.wall_time_s = timer.seconds();
            write_output_with_manifest(out, rmt::rmt_csv({row}), man);
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const budget_error& e) {
        std::fprintf(stderr, "budget error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
