#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <random>

#include "tce/bifurcation.hpp"
#include "tce/cf.hpp"
#include "tce/dynseq.hpp"
#include "tce/golden.hpp"
#include "tce/io.hpp"
#include "tce/periodic.hpp"
#include "tce/renorm.hpp"
#include "tce/tce_map.hpp"
#include "tce/verify.hpp"

using nlohmann::json;

namespace {

constexpr const char* kSchemaVersion = "1";

// Exact orbit of the one-dimensional gap map, dumped as (n, x) with cells in
// the field's text form.
int run_orbit_1d(const tce::ParamFile& pf, const std::string& ell_text,
                 const std::string& x0_text, long steps, const std::string& out_path) {
    if (!pf.params.lambda_exact) {
        std::cerr << "orbit: the exact gap-map dump needs an exact lambda in the parameter file\n";
        return 2;
    }
    const auto ell = tce::GoldenRational::parse(ell_text);
    const auto x0 = tce::GoldenRational::parse(x0_text);
    if (!ell || !x0) {
        std::cerr << "orbit: --gap-ell and --x1d expect GoldenRational literals\n";
        return 2;
    }
    const tce::GapMap<tce::GoldenRational> m{*pf.params.lambda_exact, *ell};
    validate_gap(m);
    tce::CsvWriter csv({"n", "x"});
    tce::GoldenRational x = *x0;
    csv.add_row({"0", x.str()});
    for (long n = 1; n <= steps; ++n) {
        x = gap_apply(m, x);
        csv.add_row({std::to_string(n), x.str()});
    }
    csv.write(out_path);
    std::cout << "orbit: wrote exact gap-map orbit to " << out_path << "\n";
    return 0;
}

int run_orbit(const std::string& params_path, const std::string& z_text, long steps,
              const std::string& ell_text, const std::string& x0_text,
              const std::string& out_path) {
    const tce::ParamFile pf = tce::load_params(params_path);
    if (!ell_text.empty()) return run_orbit_1d(pf, ell_text, x0_text, steps, out_path);
    const auto comma = z_text.find(',');
    if (comma == std::string::npos) {
        std::cerr << "orbit: --z expects re,im\n";
        return 2;
    }
    const tce::PlanePoint z(std::stod(z_text.substr(0, comma)),
                            std::stod(z_text.substr(comma + 1)));
    const tce::OrbitTrace trace = tce::orbit(pf.params, z, steps);

    const bool svg = out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".svg";
    if (svg) {
        tce::SvgScatter plot;
        plot.title = "orbit from " + z_text;
        for (size_t n = 0; n + 1 < trace.points.size(); ++n) {
            plot.points.push_back({trace.points[n].real(), trace.points[n].imag(),
                                   trace.symbols[n] + 1, 1.2});
        }
        plot.write(out_path);
    } else {
        tce::CsvWriter csv({"n", "re", "im", "symbol"});
        for (size_t n = 0; n < trace.points.size(); ++n) {
            const std::string sym =
                n < trace.symbols.size() ? std::to_string(trace.symbols[n]) : "";
            csv.add_row({std::to_string(n), tce::format_double(trace.points[n].real()),
                         tce::format_double(trace.points[n].imag()), sym});
        }
        csv.write(out_path);
    }
    const char* status = trace.status == tce::OrbitStatus::completed      ? "completed"
                         : trace.status == tce::OrbitStatus::hit_boundary ? "hit_boundary"
                                                                          : "cap_exceeded";
    std::cout << "orbit: " << trace.points.size() - 1 << " steps, status " << status
              << ", min boundary distance " << tce::format_double(trace.min_boundary_dist)
              << ", wrote " << out_path << "\n";
    return 0;
}

int run_return_map(const std::string& params_path, double mu_prime, int cone, int terms,
                   int samples, long cap, const std::string& out_path,
                   const std::string& svg_path) {
    const tce::ParamFile pf = tce::load_params(params_path);
    const tce::SlopePair pair = tce::slope_pair(pf.params, mu_prime, cone);
    if (pair.singular) {
        std::cerr << "return-map: singular slope pair (mu' tan theta_j = 1)\n";
        return 2;
    }
    const tce::RhoProfile prof = tce::rho_profile(pf.params, pair, terms, samples, cap);
    tce::CsvWriter csv({"n", "y_n", "x_n", "segment_slope", "landing_side", "predicted_side",
                        "jump", "breakpoint_residual"});
    for (size_t n = 0; n < prof.x_n.size(); ++n) {
        const bool has_side = n >= 1 && n - 1 < prof.landing_side.size();
        csv.add_row({std::to_string(n), tce::format_double(prof.breakpoints[n]),
                     tce::format_double(prof.x_n[n]),
                     n < prof.segment_slopes.size() ? tce::format_double(prof.segment_slopes[n])
                                                    : "",
                     has_side ? (prof.landing_side[n - 1] > 0 ? "L1" : "Ld") : "",
                     has_side ? (prof.predicted_side[n - 1] > 0 ? "L1" : "Ld") : "",
                     has_side ? tce::format_double(prof.jump_magnitude[n - 1]) : "",
                     tce::format_double(prof.breakpoint_residual[n])});
    }
    csv.write(out_path);
    if (!svg_path.empty()) {
        tce::SvgScatter plot;
        plot.title = "return profile, slope pair mu'=" + tce::format_double(mu_prime);
        for (size_t n = 0; n < prof.x_n.size(); ++n) {
            plot.points.push_back({prof.x_n[n], prof.breakpoints[n], static_cast<int>(n), 2.2});
            if (n + 1 < prof.breakpoints.size()) {
                const double y_lo = prof.breakpoints[n + 1];
                const double x_lo = prof.x_n[n] + (y_lo - prof.breakpoints[n]) / pair.mu;
                plot.segments.push_back(
                    {x_lo, y_lo, prof.x_n[n], prof.breakpoints[n], "#1f77b4", 1.0});
            }
        }
        plot.write(svg_path);
    }
    std::cout << "return-map: " << prof.x_n.size() << " breakpoints, max slope deviation "
              << tce::format_double(prof.max_slope_deviation) << ", sides "
              << (prof.sides_match ? "match" : "MISMATCH") << ", wrote " << out_path << "\n";
    return prof.structure_ok && prof.sides_match ? 0 : 1;
}

int run_bifurcation(int k, int terms, long cap, const std::string& out_path,
                    const std::string& gamma_json_path) {
    const tce::BifurcationEquivalenceReport rep = tce::verify_bifurcation_equivalence(k, terms, cap);
    tce::CsvWriter csv(
        {"n", "lambda_prime_n", "gamma_prime_n", "k_prime_n", "lambda_double_n",
         "gamma_double_n", "k_double_n", "equal"});
    for (int n = 0; n < terms && n < static_cast<int>(rep.orbit.lambda_prime.size()); ++n) {
        const bool eq = rep.orbit.lambda_prime[n] == rep.gamma_prime[n] &&
                        rep.orbit.lambda_double[n] == rep.gamma_double[n];
        csv.add_row({std::to_string(n), rep.orbit.lambda_prime[n].str(),
                     rep.gamma_prime[n].str(), std::to_string(rep.orbit.k_prime[n]),
                     rep.orbit.lambda_double[n].str(), rep.gamma_double[n].str(),
                     std::to_string(rep.orbit.k_double[n]), eq ? "yes" : "no"});
    }
    if (!out_path.empty()) {
        csv.write(out_path);
        std::cout << "bifurcation: wrote " << out_path << "\n";
    } else {
        std::cout << csv.str();
    }
    if (!gamma_json_path.empty()) {
        const tce::GoldenRational lambda =
            tce::GoldenRational(1) / (tce::GoldenRational(k) + tce::GoldenRational::phi());
        const tce::GammaSequences gs = tce::gamma_sequences(lambda, terms);
        json j;
        j["schema_version"] = kSchemaVersion;
        j["lambda"] = lambda.str();
        j["coeffs"] = gs.coeffs;
        for (int n = 0; n < terms; ++n) {
            j["gamma_prime"].push_back(gs.gamma_prime[n].str());
            j["gamma_double"].push_back(gs.gamma_double[n].str());
            j["gamma"].push_back(gs.gamma[n].str());
            j["convergents"].push_back({gs.convergent_pairs[n].num.get_str(),
                                        gs.convergent_pairs[n].den.get_str()});
        }
        std::ofstream f(gamma_json_path);
        f << j.dump(2) << "\n";
        std::cout << "bifurcation: wrote " << gamma_json_path << "\n";
    }
    std::cout << "equivalence check: " << (rep.all_equal ? "all equal" : "MISMATCH") << "\n";
    return rep.all_equal ? 0 : 1;
}

// Exact mode: rational (or field-valued) nu and mu run the whole recursion in
// the field, CSV cells in exact text form.
int run_dynseq_exact(const std::string& nu_text, const std::string& mu_text, int k, int terms,
                     const std::string& out_path) {
    const auto nu = tce::GoldenRational::parse(nu_text);
    const auto mu = tce::GoldenRational::parse(mu_text);
    if (!nu || !mu) {
        std::cerr << "dynseq: --nu-exact/--mu-exact expect GoldenRational literals\n";
        return 2;
    }
    tce::GammaTable<tce::GoldenRational> table =
        tce::golden_gamma_table<tce::GoldenRational>(k, 64 + 2 * terms);
    const tce::GoldenRational lambda =
        tce::GoldenRational(1) / (tce::GoldenRational(k) + tce::GoldenRational::phi());
    const tce::DynSeqParams<tce::GoldenRational> par{
        *nu, *mu, lambda, tce::GoldenRational(1) - tce::GoldenRational(k) * lambda};
    const auto st = tce::dynseq_compute(par, table, terms);
    tce::CsvWriter csv({"n", "y_n", "p_n", "kappa_n", "upsilon_n", "closed_form_p_n", "match"});
    for (size_t n = 0; n < st.y.size(); ++n) {
        const auto cf = tce::dynseq_closed_form_exact_p(*nu, *mu, k, static_cast<int>(n));
        csv.add_row({std::to_string(n), st.y[n].str(), st.p[n].str(),
                     std::to_string(st.kappa[n]), st.upsilon[n].str(), cf ? cf->str() : "",
                     cf ? (st.p[n] == *cf ? "yes" : "no") : "n/a"});
    }
    if (!out_path.empty()) {
        csv.write(out_path);
        std::cout << "dynseq: wrote " << out_path << "\n";
    } else {
        std::cout << csv.str();
    }
    return 0;
}

int run_dynseq(double nu, double mu, int k, int terms, const std::string& out_path) {
    tce::GammaTable<tce::DoubleDouble> table =
        tce::golden_gamma_table<tce::DoubleDouble>(k, 64 + 2 * terms);
    const tce::DoubleDouble phi = tce::DoubleDouble::phi();
    const tce::DoubleDouble lambda = tce::DoubleDouble(1) / (tce::DoubleDouble(k) + phi);
    const tce::DynSeqParams<tce::DoubleDouble> par{
        tce::DoubleDouble(nu), tce::DoubleDouble(mu), lambda,
        tce::DoubleDouble(1) - tce::DoubleDouble(k) * lambda};
    const auto st = tce::dynseq_compute(par, table, terms);
    tce::CsvWriter csv({"n", "y_n", "p_n", "kappa_n", "upsilon_n", "closed_form_p_n", "match"});
    for (size_t n = 0; n < st.y.size(); ++n) {
        const tce::ClosedFormValue cf = tce::dynseq_closed_form(nu, mu, k, static_cast<int>(n));
        const double p = st.p[n].to_double();
        const bool match = cf.defined && std::abs(p - cf.p) < 1e-10 * std::max(1.0, std::abs(cf.p));
        csv.add_row({std::to_string(n), tce::format_double(st.y[n].to_double()),
                     tce::format_double(p), std::to_string(st.kappa[n]),
                     tce::format_double(st.upsilon[n].to_double()),
                     cf.defined ? tce::format_double(cf.p) : "",
                     cf.defined ? (match ? "yes" : "no") : "n/a"});
    }
    if (!out_path.empty()) {
        csv.write(out_path);
        std::cout << "dynseq: wrote " << out_path << "\n";
    } else {
        std::cout << csv.str();
    }
    return 0;
}

int run_renorm_check(const std::string& params_path, int samples, int depth, double tol, long cap,
                     std::uint64_t seed_override, bool has_seed, const std::string& out_path) {
    const tce::ParamFile pf = tce::load_params(params_path);
    if (!pf.params.golden_k) {
        std::cerr << "renorm-check: golden-family lambda = 1/(k+phi), eta = 1-k*lambda required\n";
        return 2;
    }
    const std::uint64_t seed = has_seed ? seed_override : pf.seed;
    const tce::RenormReport rep = tce::renorm_check(pf.params, samples, depth, tol, cap, seed);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["ybar1"] = rep.ybar1;
    j["max_dev"] = rep.max_deviation;
    j["per_level_dev"] = rep.per_level_deviation;
    j["resample_count"] = rep.resample_count;
    j["samples"] = rep.samples;
    j["depth"] = rep.depth;
    j["tol"] = rep.tol;
    j["pass"] = rep.pass;
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << j.dump(2) << "\n";
        std::cout << "renorm-check: wrote " << out_path << "\n";
    }
    std::cout << j.dump(2) << "\n";
    return rep.pass ? 0 : 1;
}

int run_islands(const std::string& params_path, int witness, int max_n, long cap,
                const std::string& out_path, const std::string& svg_path) {
    const tce::ParamFile pf = tce::load_params(params_path);
    const tce::IslandSearchReport rep = tce::find_horizontal_orbits(pf.params, witness, max_n, cap);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["mu_j"] = rep.slope.mu;
    j["islands"] = json::array();
    for (const auto& isl : rep.islands) {
        json ji;
        ji["n"] = isl.n_index;
        ji["height"] = isl.y_hat;
        ji["seed_re"] = isl.seed.real();
        ji["seed_im"] = isl.seed.imag();
        ji["period"] = isl.period;
        ji["rotation_angle"] = isl.rotation_angle;
        ji["epsilon"] = isl.epsilon;
        ji["closure_error"] = isl.closure_error;
        j["islands"].push_back(ji);
    }
    j["rejected"] = rep.rejected;
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << j.dump(2) << "\n";
    }
    std::cout << j.dump(2) << "\n";
    if (!svg_path.empty()) {
        tce::SvgScatter plot;
        plot.title = "periodic islands over background orbits";
        std::mt19937_64 rng(pf.seed);
        for (int s = 0; s < 160; ++s) {
            const double y = 0.3 * ((rng() >> 11) * 0x1.0p-53) + 1e-3;
            const double x = (2 * ((rng() >> 11) * 0x1.0p-53) - 1) * y / pf.params.nu;
            tce::PlanePoint w(x, y);
            for (int n = 0; n < 400; ++n) {
                w = tce::F_apply(pf.params, w);
                plot.points.push_back({w.real(), w.imag(), 0, 0.35});
            }
        }
        int color = 1;
        for (const auto& isl : rep.islands) {
            tce::PlanePoint c = isl.seed;
            for (long n = 0; n < isl.period; ++n) {
                for (int t = 0; t < 36; ++t) {
                    const double a = 2 * 3.14159265358979312 * t / 36;
                    plot.points.push_back({c.real() + isl.epsilon * std::cos(a),
                                           c.imag() + isl.epsilon * std::sin(a), color, 0.9});
                }
                c = tce::F_apply(pf.params, c);
            }
            ++color;
        }
        plot.write(svg_path);
        std::cout << "islands: wrote " << svg_path << "\n";
    }
    return rep.islands.empty() ? 1 : 0;
}

int run_verify_all(int extra_k, const std::string& out_path) {
    std::vector<tce::CriterionResult> results = tce::run_all_criteria();
    if (extra_k > 0) {
        // A requested-family spot check on top of the fixed battery.
        tce::CriterionResult spot{0, "requested golden family equivalence (k=" +
                                         std::to_string(extra_k) + ")",
                                  false, "", 0};
        const auto t0 = std::chrono::steady_clock::now();
        const auto rep = tce::verify_bifurcation_equivalence(extra_k, 8, 2000000);
        spot.pass = rep.complete && rep.all_equal;
        spot.detail = spot.pass ? "orbit sequences equal the error sequences, 8 terms"
                                : "mismatch or cap exceeded";
        spot.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results.insert(results.begin(), spot);
    }
    json j;
    j["schema_version"] = kSchemaVersion;
    bool all = true;
    char buf[32];
    for (const auto& r : results) {
        json jr;
        jr["id"] = r.id;
        jr["name"] = r.name;
        jr["pass"] = r.pass;
        jr["detail"] = r.detail;
        jr["seconds"] = r.seconds;
        j["criteria"].push_back(jr);
        all = all && r.pass;
        std::snprintf(buf, sizeof buf, "%.2f", r.seconds);
        std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.name
                  << "  (" << buf << " s)\n";
        if (!r.pass) std::cout << "      " << r.detail << "\n";
    }
    j["all_pass"] = all;
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << j.dump(2) << "\n";
        std::cout << "verify-all: wrote " << out_path << "\n";
    }
    std::cout << (all ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << "\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"translated cone exchange transformations: orbits, bifurcations, "
                 "renormalization and islands"};
    app.require_subcommand(1);

    std::string params_path, out_path, svg_path, gamma_json_path, z_text, ell_text, x1d_text;
    long steps = 1000, cap = 1000000;
    int terms = 10, k = 1, cone = 1, depth = 3, samples = 6, witness = 1, nsamples = 10000;
    double mu_prime = 0, nu = 1.0, mu = 10.0, tol = 1e-9;
    std::uint64_t seed = 0;
    bool has_seed = false;

    auto* orbit_cmd = app.add_subcommand("orbit", "forward orbit with itinerary, CSV or SVG");
    orbit_cmd->add_option("--params", params_path, "parameter file")->required();
    orbit_cmd->add_option("--z", z_text, "start point re,im");
    orbit_cmd->add_option("--steps", steps, "orbit length");
    orbit_cmd->add_option("--gap-ell", ell_text,
                          "exact gap length: dump the one-dimensional gap-map orbit instead");
    orbit_cmd->add_option("--x1d", x1d_text, "exact start point of the gap-map orbit");
    orbit_cmd->add_option("--out", out_path, "output path (.csv or .svg)")->required();

    auto* ret_cmd = app.add_subcommand("return-map", "piecewise affine return profile");
    ret_cmd->add_option("--params", params_path, "parameter file")->required();
    ret_cmd->add_option("--mu-prime", mu_prime, "incoming section-line slope")->required();
    ret_cmd->add_option("--cone", cone, "cone containing the section line")->required();
    ret_cmd->add_option("--terms", terms, "number of breakpoints");
    ret_cmd->add_option("--samples", samples, "samples per segment");
    ret_cmd->add_option("--cap", cap, "iteration cap");
    ret_cmd->add_option("--out", out_path, "CSV output path")->required();
    ret_cmd->add_option("--svg", svg_path, "optional SVG overlay path");

    auto* bif_cmd = app.add_subcommand("bifurcation", "bifurcation vs semiconvergent errors");
    bif_cmd->add_option("--k", k, "golden family index, lambda = 1/(k+phi)")->required();
    bif_cmd->add_option("--terms", terms, "terms per sequence");
    bif_cmd->add_option("--cap", cap, "orbit cap");
    bif_cmd->add_option("--out", out_path, "CSV output path");
    bif_cmd->add_option("--gamma-json", gamma_json_path, "JSON export of the error sequences");

    std::string nu_exact, mu_exact;
    auto* dyn_cmd = app.add_subcommand("dynseq", "dynamical sequences and closed forms");
    dyn_cmd->add_option("--nu", nu, "nu > 0");
    dyn_cmd->add_option("--mu", mu, "|mu| > nu");
    dyn_cmd->add_option("--nu-exact", nu_exact, "exact nu (runs the whole recursion exactly)");
    dyn_cmd->add_option("--mu-exact", mu_exact, "exact mu");
    dyn_cmd->add_option("--k", k, "golden family index");
    dyn_cmd->add_option("--terms", terms, "terms");
    dyn_cmd->add_option("--out", out_path, "CSV output path");

    auto* ren_cmd = app.add_subcommand("renorm-check", "self-similarity of the return map");
    ren_cmd->add_option("--params", params_path, "parameter file")->required();
    ren_cmd->add_option("--samples", nsamples, "sample count");
    ren_cmd->add_option("--depth", depth, "renormalization depth");
    ren_cmd->add_option("--tol", tol, "deviation tolerance");
    ren_cmd->add_option("--cap", cap, "iteration cap");
    ren_cmd->add_option("--seed", seed, "RNG seed (overrides the parameter file)");
    ren_cmd->add_option("--out", out_path, "JSON report path");

    auto* isl_cmd = app.add_subcommand("islands", "horizontal periodic island search");
    isl_cmd->add_option("--params", params_path, "parameter file")->required();
    isl_cmd->add_option("--j", witness, "reflective witness cone")->required();
    isl_cmd->add_option("--max-n", terms, "deepest gap index to solve");
    isl_cmd->add_option("--cap", cap, "iteration cap");
    isl_cmd->add_option("--out", out_path, "JSON output path");
    isl_cmd->add_option("--svg", svg_path, "SVG rendering path");

    int extra_k = 0;
    auto* ver_cmd = app.add_subcommand("verify-all", "run the full verification battery");
    ver_cmd->add_option("--k", extra_k, "additional golden-family spot check at this k");
    ver_cmd->add_option("--out", out_path, "JSON summary path");

    CLI11_PARSE(app, argc, argv);
    has_seed = ren_cmd->count("--seed") > 0;

    try {
        if (app.got_subcommand(orbit_cmd)) {
            if (ell_text.empty() && z_text.empty()) {
                std::cerr << "orbit: provide --z, or --gap-ell with --x1d\n";
                return 2;
            }
            return run_orbit(params_path, z_text, steps, ell_text, x1d_text, out_path);
        }
        if (app.got_subcommand(ret_cmd))
            return run_return_map(params_path, mu_prime, cone, terms, samples, cap, out_path,
                                  svg_path);
        if (app.got_subcommand(bif_cmd))
            return run_bifurcation(k, terms, cap, out_path, gamma_json_path);
        if (app.got_subcommand(dyn_cmd)) {
            if (!nu_exact.empty() || !mu_exact.empty())
                return run_dynseq_exact(nu_exact, mu_exact, k, terms, out_path);
            if (dyn_cmd->count("--nu") == 0 || dyn_cmd->count("--mu") == 0) {
                std::cerr << "dynseq: provide --nu/--mu, or --nu-exact/--mu-exact\n";
                return 2;
            }
            return run_dynseq(nu, mu, k, terms, out_path);
        }
        if (app.got_subcommand(ren_cmd))
            return run_renorm_check(params_path, nsamples, depth, tol, cap, seed, has_seed,
                                    out_path);
        if (app.got_subcommand(isl_cmd))
            return run_islands(params_path, witness, terms, cap, out_path, svg_path);
        if (app.got_subcommand(ver_cmd)) return run_verify_all(extra_k, out_path);
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
