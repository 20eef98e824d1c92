#include "tce/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

namespace tce {

namespace {

constexpr double kPhi = 0.61803398874989484820458683436563811772;
constexpr double kPi = std::numbers::pi;

double line_angle_of_slope(double mu_prime) {
    const double a = std::atan(mu_prime);
    return a >= 0 ? a : a + kPi;
}

// Uniform double in [0,1) from the pinned mt19937_64 stream.
double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

}  // namespace

SlopePair slope_pair(const TceParams& par, double mu_prime, int j) {
    if (j < 1 || j > par.d) throw std::domain_error("slope_pair: cone index out of range");
    if (!(std::abs(mu_prime) > par.nu))
        throw std::domain_error("slope_pair: |mu'| > nu required");
    SlopePair pair;
    pair.mu_prime = mu_prime;
    pair.cone = j;
    pair.line_angle = line_angle_of_slope(mu_prime);
    if (pair.line_angle < par.boundary_angle[j - 1] || pair.line_angle > par.boundary_angle[j])
        throw std::domain_error("slope_pair: line not inside the claimed cone");
    const double t = std::tan(par.theta[j - 1]);
    const double denom = 1.0 - mu_prime * t;
    if (std::abs(denom) < 1e-14) {
        pair.singular = true;
        return pair;
    }
    pair.mu = (mu_prime + t) / denom;
    pair.gamma = std::sqrt((1.0 + 1.0 / (mu_prime * mu_prime)) / (1.0 + 1.0 / (pair.mu * pair.mu)));
    return pair;
}

double gamma_of_image_angle(const TceParams& par, int j, double phi) {
    const double th = par.theta[j - 1];
    return 1.0 / std::abs(std::cos(th) - std::sin(th) / std::tan(phi));
}

double gamma_of_source_angle(const TceParams& par, int j, double phi_prime) {
    const double th = par.theta[j - 1];
    return std::abs(std::cos(th) + std::sin(th) / std::tan(phi_prime));
}

PlanePoint xi_S(const SlopePair& pair, double y) {
    if (pair.singular) throw std::domain_error("xi_S: singular slope pair");
    return PlanePoint(1.0 / pair.mu_prime, 1.0) * (y / pair.gamma);
}

std::pair<DoubleDouble, DoubleDouble> dd_translation_lengths(const TceParams& par) {
    if (par.golden_k) {
        const DoubleDouble phi = DoubleDouble::phi();
        const DoubleDouble k(*par.golden_k);
        const DoubleDouble lam = DoubleDouble(1) / (k + phi);
        return {lam, DoubleDouble(1) - k * lam};
    }
    if (par.lambda_exact && par.eta_exact)
        return {to_double_double(*par.lambda_exact), to_double_double(*par.eta_exact)};
    return {DoubleDouble(par.lambda), DoubleDouble(par.eta)};
}

bool rho_in_regime(const TceParams& par, double y) { return 2 * y / par.nu <= par.lambda; }

std::optional<ReturnResult> rho(const TceParams& par, const SlopePair& pair, double y, long cap) {
    if (!(y > 0)) throw std::domain_error("rho: y > 0 required");
    return return_map(par, xi_S(pair, y), cap);
}

namespace {

// Error-sequence table evaluated at an arbitrary lambda near the golden
// value, through the integer semiconvergent pairs of [0; k, 1, 1, ...]:
// gamma'_n = p_{2n+1} - q_{2n+1} lambda, gamma''_n = q_{2n} lambda - p_{2n}
// with p_m = F_m, q_m = F_m k + F_{m-1}. Used to predict the dynamics of the
// floating-point system, whose lambda is the rounded constant itself.
GammaTable<DoubleDouble> golden_gamma_table_at(int k, int size, DoubleDouble lambda) {
    if (size > 40) throw std::domain_error("golden_gamma_table_at: Fibonacci overflow");
    GammaTable<DoubleDouble> t;
    t.lambda = lambda;
    long f_prev = 1, f_cur = 0;  // F_{m-1}, F_m starting at m = 0
    for (int m = 0; m <= 2 * size + 1; ++m) {
        const long p = f_cur;
        const long q = f_cur * k + f_prev;
        if (m % 2 == 0) {
            t.dbl.push_back(DoubleDouble(q) * lambda - DoubleDouble(p));
        } else {
            t.prime.push_back(DoubleDouble(p) - DoubleDouble(q) * lambda);
        }
        const long next = f_prev + f_cur;
        f_prev = f_cur;
        f_cur = next;
    }
    return t;
}

}  // namespace

RhoProfile rho_profile(const TceParams& par, const SlopePair& pair, int terms,
                       int samples_per_segment, long cap) {
    RhoProfile prof;
    if (pair.singular) {
        prof.structure_ok = false;
        prof.failure = "singular slope pair";
        return prof;
    }
    if (samples_per_segment < 2) samples_per_segment = 2;

    // Dynamical sequences at mu, compensated backend. The profile is measured
    // on the double-precision map, so the prediction runs at that map's own
    // lambda and eta (exactly representable rationals) rather than the ideal
    // golden values: the return times amplify any disagreement linearly.
    GammaTable<DoubleDouble> table;
    if (par.golden_k) {
        table = golden_gamma_table_at(*par.golden_k, 16 + 2 * (terms + 2),
                                      DoubleDouble(par.lambda));
    } else {
        if (!par.lambda_exact)
            throw std::domain_error(
                "rho_profile: needs a golden-family or exact lambda to predict breakpoints");
        table = gamma_table_from_sequences<DoubleDouble>(
            gamma_sequences(*par.lambda_exact, 16 + 2 * (terms + 2)));
    }
    const DynSeqParams<DoubleDouble> dpar{DoubleDouble(par.nu), DoubleDouble(pair.mu),
                                          DoubleDouble(par.lambda), DoubleDouble(par.eta)};
    const DynSeqState<DoubleDouble> st = dynseq_compute(dpar, table, terms + 1);

    std::vector<double> y_n, p_n, ups_n;
    for (const auto& v : st.y) y_n.push_back(v.to_double());
    for (const auto& v : st.p) p_n.push_back(v.to_double());
    for (const auto& v : st.upsilon) ups_n.push_back(v.to_double());
    const double inv_C = 1.0 / st.C.to_double();
    prof.breakpoints.assign(y_n.begin(), y_n.begin() + std::min<size_t>(y_n.size(), terms + 1));

    const double mu = pair.mu;
    std::vector<double> xn_left(terms + 1, 0.0);  // Re rho(y_n^-) via segment n

    for (int n = 0; n <= terms && n + 1 < static_cast<int>(y_n.size()); ++n) {
        const double lo = y_n[n + 1], hi = y_n[n];
        if (!(lo > 0) || !(hi > lo)) break;
        // Log-spaced interior samples: segment lengths shrink geometrically.
        std::vector<std::pair<double, double>> pts;  // (y, Re rho(y))
        const double margin = 1e-3;
        for (int s = 0; s < samples_per_segment; ++s) {
            const double t =
                margin + (1.0 - 2 * margin) * static_cast<double>(s) / (samples_per_segment - 1);
            const double y = lo * std::pow(hi / lo, t);
            const auto r = rho(par, pair, y, cap);
            if (!r) {
                prof.structure_ok = false;
                prof.failure = "return cap exceeded while sampling segment";
                return prof;
            }
            prof.max_height_deviation =
                std::max(prof.max_height_deviation, std::abs(r->point.imag() - y));
            pts.emplace_back(y, r->point.real());
        }
        // Least-squares slope over the segment samples.
        double sy = 0, sx = 0, sxx = 0, sxy = 0;
        for (const auto& [y, x] : pts) {
            sx += y;
            sy += x;
            sxx += y * y;
            sxy += y * x;
        }
        const double m = pts.size();
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        prof.segment_slopes.push_back(slope);
        prof.max_slope_deviation = std::max(prof.max_slope_deviation, std::abs(slope - 1.0 / mu));
        // Extrapolate to the segment's open right end y_n along slope 1/mu.
        const auto& [ys, xs] = pts.back();
        xn_left[n] = xs + (y_n[n] - ys) / mu;
        prof.x_n.push_back(xn_left[n]);
        // Breakpoint relation p_n = x_n/ell(y_n) + 1/2.
        const double ell = 2 * y_n[n] / par.nu;
        prof.breakpoint_residual.push_back(std::abs(p_n[n] - (xn_left[n] / ell + 0.5)));
    }

    // Landing sides at y_n for n >= 1: extrapolate segment n-1 down to y_n,
    // the jump against the segment-n limit is +upsilon_n on L'_1, -upsilon_n
    // on L'_d.
    for (int n = 1; n < static_cast<int>(prof.x_n.size()); ++n) {
        const double lo = y_n[n], hi = y_n[n - 1];
        const double yq = lo * std::pow(hi / lo, 0.05);
        const auto r = rho(par, pair, yq, cap);
        if (!r) {
            prof.structure_ok = false;
            prof.failure = "return cap exceeded at breakpoint";
            return prof;
        }
        const double x_above = r->point.real() + (y_n[n] - yq) / mu;
        const double jump = x_above - xn_left[n];
        prof.landing_side.push_back(jump > 0 ? +1 : -1);
        prof.predicted_side.push_back(p_n[n - 1] > inv_C ? +1 : -1);
        prof.jump_magnitude.push_back(std::abs(jump));
        if (prof.landing_side.back() != prof.predicted_side.back()) prof.sides_match = false;
    }
    return prof;
}

Y1Bound y1_lower_bound(const TceParams& par) {
    if (!par.golden_k)
        throw std::domain_error("y1_lower_bound: golden-family parameters required");
    GammaTable<DoubleDouble> table = golden_gamma_table<DoubleDouble>(*par.golden_k, 64);

    auto y0_of_mu = [&](double mu) { return par.eta * mu * par.nu / (mu + par.nu); };
    auto objective = [&](int j, double phi_prime) -> double {
        const double phi = phi_prime + par.theta[j - 1];
        const double mu = std::tan(phi);
        if (!(std::abs(mu) > par.nu * (1 + 1e-12))) return std::numeric_limits<double>::infinity();
        const double gamma = std::abs(std::sin(phi) / std::sin(phi_prime));
        const double y0 = y0_of_mu(mu);
        if (!(y0 > 0)) return std::numeric_limits<double>::infinity();
        return y0 * std::min(gamma, 1.0 / gamma);
    };

    double best = std::numeric_limits<double>::infinity();
    const int grid = 10000;
    for (int j = 1; j <= par.d; ++j) {
        const double lo = par.boundary_angle[j - 1], hi = par.boundary_angle[j];
        double best_phi = lo + (hi - lo) / 2;
        double best_val = std::numeric_limits<double>::infinity();
        for (int i = 1; i < grid; ++i) {
            const double phi_prime = lo + (hi - lo) * i / grid;
            const double v = objective(j, phi_prime);
            if (v < best_val) {
                best_val = v;
                best_phi = phi_prime;
            }
        }
        // Golden-section refinement around the grid minimum.
        double a = std::max(lo, best_phi - (hi - lo) / grid);
        double b = std::min(hi, best_phi + (hi - lo) / grid);
        const double gr = (std::sqrt(5.0) - 1) / 2;
        for (int it = 0; it < 60; ++it) {
            const double c = b - gr * (b - a);
            const double dpt = a + gr * (b - a);
            if (objective(j, c) < objective(j, dpt))
                b = dpt;
            else
                a = c;
        }
        best_val = std::min(best_val, objective(j, (a + b) / 2));
        best = std::min(best, best_val);
    }
    Y1Bound out;
    out.ybar0 = best * 0.99;  // safety margin: the bound only needs to be valid
    out.ybar1 = kPhi * kPhi * out.ybar0;
    return out;
}

RenormReport renorm_check(const TceParams& par, int samples, int depth, double tol, long cap,
                          std::uint64_t seed) {
    RenormReport rep;
    rep.samples = samples;
    rep.depth = depth;
    rep.tol = tol;
    rep.per_level_deviation.assign(depth, 0.0);
    rep.ybar1 = y1_lower_bound(par).ybar1;

    std::mt19937_64 rng(seed);
    const double y_top = rep.ybar1;
    int accepted = 0;
    while (accepted < samples) {
        // Uniform over the triangle {|x| < y/nu, 0 < y < ybar1} by rejection
        // from its bounding box.
        const double y = y_top * uniform01(rng);
        const double x = (2 * uniform01(rng) - 1) * y_top / par.nu;
        if (!(std::abs(x) < y / par.nu) || y <= 0) continue;
        const PlanePoint z(x, y);
        if (classify(par, z).boundary_dist < par.boundary_guard) {
            ++rep.resample_count;
            continue;
        }
        const auto r0 = return_map(par, z, cap);
        if (!r0 || r0->min_boundary_dist < par.boundary_guard) {
            ++rep.resample_count;
            continue;
        }
        bool rejected = false;
        std::vector<double> devs(depth, 0.0);
        double scale = 1.0;
        for (int m = 1; m <= depth && !rejected; ++m) {
            scale *= kPhi * kPhi;
            const auto rm = return_map(par, z * scale, cap);
            if (!rm || rm->min_boundary_dist < par.boundary_guard) {
                rejected = true;
                break;
            }
            devs[m - 1] = std::abs(rm->point - r0->point * scale);
        }
        if (rejected) {
            ++rep.resample_count;
            continue;
        }
        for (int m = 0; m < depth; ++m) {
            rep.per_level_deviation[m] = std::max(rep.per_level_deviation[m], devs[m]);
            rep.max_deviation = std::max(rep.max_deviation, devs[m]);
        }
        ++accepted;
    }
    rep.pass = rep.max_deviation < tol;
    return rep;
}

namespace {

struct ReturnIsometry {
    double angle = 0;        // single middle-cone rotation of the excursion
    PlanePoint translation;  // R(z) - e^{i angle} z
    double residual = 0;     // finite-difference cross-check at displaced points
};

// Recovers the local isometry of the return map at z: the rotation angle is
// theta of the starting cone (the excursion stays outside P_c until the
// return, so exactly one rotation occurs), the translation follows from R(z),
// and the recovery is cross-checked by finite differences at neighbours.
std::optional<ReturnIsometry> return_isometry(const TceParams& par, PlanePoint z, long cap) {
    const ConeInfo start = classify(par, z);
    if (start.cone < 1 || start.cone > par.d) return std::nullopt;
    if (start.boundary_dist < par.boundary_guard) return std::nullopt;
    const auto r = return_map(par, z, cap);
    if (!r || r->min_boundary_dist < par.boundary_guard) return std::nullopt;

    ReturnIsometry iso;
    iso.angle = par.theta[start.cone - 1];
    const PlanePoint rot = std::polar(1.0, iso.angle);
    iso.translation = r->point - rot * z;

    const double h = 1e-7 * std::abs(z);
    double best = std::numeric_limits<double>::infinity();
    for (const PlanePoint dz : {PlanePoint(h, 0), PlanePoint(-h, 0), PlanePoint(0, h)}) {
        const auto rd = return_map(par, z + dz, cap);
        if (!rd) continue;
        best = std::min(best, std::abs(rd->point - (rot * (z + dz) + iso.translation)));
    }
    iso.residual = std::isfinite(best) ? best : 0.0;
    return iso;
}

}  // namespace

AtomCensusReport atom_census(const TceParams& par, int levels, int grid, long cap) {
    AtomCensusReport rep;
    const double ybar1 = y1_lower_bound(par).ybar1;
    const double phi2 = kPhi * kPhi;
    const double match_tol = 1e-8;

    // All distinct isometries seen so far; per ring, the locally distinct set.
    // Atoms straddle the height rings, so the same isometry may show up in
    // adjacent rings; the countability demonstration is that each deeper ring
    // keeps revealing genuinely new ones.
    std::vector<ReturnIsometry> all;
    auto find_in = [&](const std::vector<ReturnIsometry>& set, const ReturnIsometry& iso) {
        for (const auto& k : set) {
            if (std::abs(k.angle - iso.angle) < match_tol &&
                std::abs(k.translation - iso.translation) < match_tol)
                return true;
        }
        return false;
    };

    int cumulative = 0;
    bool strictly_growing = true;
    std::vector<std::vector<ReturnIsometry>> per_level;
    for (int level = 1; level <= levels; ++level) {
        const double hi = ybar1 * std::pow(phi2, level - 1);
        const double lo = hi * phi2;
        std::vector<ReturnIsometry> found;
        int sampled = 0;
        const int rows = std::max(4, grid / 64);
        const int cols = std::max(8, grid / rows);
        for (int iy = 0; iy < rows; ++iy) {
            const double y = lo + (hi - lo) * (iy + 0.5) / rows;
            for (int ix = 0; ix < cols; ++ix) {
                const double x = (-y / par.nu) + (2 * y / par.nu) * (ix + 0.5) / cols;
                const auto iso = return_isometry(par, PlanePoint(x, y), cap);
                if (!iso) continue;
                ++sampled;
                // Residuals beyond the cluster tolerance mean the probe
                // neighbours fell into an adjacent atom; they do not pollute
                // the cross-check.
                if (iso->residual < match_tol)
                    rep.max_isometry_residual =
                        std::max(rep.max_isometry_residual, iso->residual);
                if (!find_in(found, *iso)) found.push_back(*iso);
            }
        }
        rep.sampled_per_level.push_back(sampled);
        rep.distinct_per_level.push_back(static_cast<int>(found.size()));
        int fresh = 0;
        for (const auto& iso : found) {
            if (!find_in(all, iso)) {
                all.push_back(iso);
                ++fresh;
            }
        }
        if (level > 1 && fresh == 0) strictly_growing = false;
        cumulative += fresh;
        per_level.push_back(std::move(found));
    }
    rep.total_distinct = cumulative;

    // The scaling chains behind countability: every isometry found in a ring
    // reappears one ring deeper with its translation contracted by the golden
    // square. A vanishing translation would collapse its chain to a single
    // repeated value; a nonvanishing one makes the chain strictly decreasing,
    // so the atom supply never ends.
    bool chains_ok = true;
    for (int level = 0; level + 1 < levels; ++level) {
        for (const auto& iso : per_level[level]) {
            if (std::abs(iso.translation) < match_tol) {
                rep.translations_repeat = true;
                continue;
            }
            ReturnIsometry scaled = iso;
            scaled.translation *= phi2;
            if (!find_in(per_level[level + 1], scaled)) chains_ok = false;
        }
    }
    rep.growth = levels >= 2 && strictly_growing && chains_ok && !rep.translations_repeat;
    return rep;
}

}  // namespace tce
