#include "tce/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tce {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPhi = 0.61803398874989484820458683436563811772;
}  // namespace

ReflectiveResult reflective_test(const std::vector<double>& alpha, const std::vector<int>& tau) {
    if (alpha.size() != tau.size() || !is_permutation(tau))
        throw std::domain_error("reflective_test: invalid permutation");
    ReflectiveResult out;
    const int d = static_cast<int>(alpha.size());
    for (int j = 0; j < d; ++j) {
        double above = 0, before = 0;
        for (int k = 0; k < d; ++k) {
            if (tau[k] > tau[j]) above += alpha[k];
            if (k < j) before += alpha[k];
        }
        if (std::abs(above - before) < alpha[j]) out.witnesses.push_back(j + 1);
    }
    out.is_reflective = !out.witnesses.empty();
    return out;
}

MuSpecial mu_special(const TceParams& par, int j, int check_samples) {
    if (j < 1 || j > par.d) throw std::domain_error("mu_special: cone index out of range");
    MuSpecial out;
    const double theta = par.theta[j - 1];
    if (std::abs(theta) < 1e-14) {
        out.singular = true;  // tan(pi/2): vertical section line
        return out;
    }
    out.mu = std::tan((kPi + theta) / 2);
    out.mu_incoming = -out.mu;
    out.line_angle = (kPi - theta) / 2;
    out.line_in_cone =
        out.line_angle > par.boundary_angle[j - 1] && out.line_angle < par.boundary_angle[j];
    // Height preservation along L'_S(-mu_j).
    const PlanePoint dir = std::polar(1.0, out.line_angle);
    for (int i = 1; i <= check_samples; ++i) {
        const PlanePoint z = dir * (0.9 * i / check_samples + 1e-3);
        const PlanePoint w = F_apply(par, z);
        out.max_im_drift = std::max(out.max_im_drift, std::abs(w.imag() - z.imag()));
    }
    return out;
}

std::pair<double, double> p_window(double mu, double nu) {
    if (!(std::abs(mu) > nu)) throw std::domain_error("p_window: |mu| > nu required");
    const double C = 2 * mu / (mu + nu);
    const double D = 2 * mu / (mu - nu);
    if (mu > 0) return {1.0 / D, 1.0 / C};
    return {1.0 / C, 1.0 / D};
}

IslandSearchReport find_horizontal_orbits(const TceParams& par, int j, int terms, long cap) {
    IslandSearchReport rep;
    rep.slope = mu_special(par, j);
    if (rep.slope.singular) {
        rep.rejected.push_back("theta_j = 0: section line vertical, no finite slope");
        return rep;
    }
    if (!rep.slope.line_in_cone) {
        rep.rejected.push_back("section line not interior to the witness cone");
        return rep;
    }
    const double mu = rep.slope.mu;
    const double nu = par.nu;
    const auto [p_lo, p_hi] = p_window(mu, nu);

    GammaTable<DoubleDouble> table;
    if (par.golden_k) {
        table = golden_gamma_table<DoubleDouble>(*par.golden_k, 32 + 2 * (terms + 2));
    } else if (par.lambda_exact && !par.lambda_exact->is_rational()) {
        table = gamma_table_from_sequences<DoubleDouble>(
            gamma_sequences(*par.lambda_exact, 32 + 2 * (terms + 2)));
    } else {
        rep.rejected.push_back("lambda not available in exact form");
        return rep;
    }
    const auto [lam_dd, eta_dd] = dd_translation_lengths(par);
    const DynSeqParams<DoubleDouble> dpar{DoubleDouble(nu), DoubleDouble(mu), lam_dd, eta_dd};
    const DynSeqState<DoubleDouble> st = dynseq_compute(dpar, table, terms + 1);

    for (int n = 0; n <= terms && n + 1 < static_cast<int>(st.y.size()); ++n) {
        const double yn = st.y[n].to_double();
        const double yn1 = st.y[n + 1].to_double();
        const double pn = st.p[n].to_double();
        if (!(yn > 0) || !(yn1 > 0)) break;
        if (!(p_lo < pn && pn < p_hi)) {
            std::ostringstream os;
            os << "n=" << n << ": p_n=" << pn << " outside I_P";
            rep.rejected.push_back(os.str());
            continue;
        }
        // Both sides are affine in y: Re rho(y) = x_n + (y - y_n)/mu on the
        // segment, Re xi_S(y) = -y/mu_j; the root is closed-form.
        const double x_n = (pn - 0.5) * (2 * yn / nu);
        const double y_hat = (yn - mu * x_n) / 2;
        if (!(yn1 < y_hat && y_hat < yn)) {
            std::ostringstream os;
            os << "n=" << n << ": affine root " << y_hat << " left the gap (" << yn1 << ", " << yn
               << ")";
            rep.rejected.push_back(os.str());
            continue;
        }
        IslandCandidate cand;
        cand.n_index = n;
        cand.y_hat = y_hat;
        cand.seed = PlanePoint(-y_hat / mu, y_hat);

        // Forward verification: orbit closes at the return time, at constant
        // height, away from the (non-removable) partition boundary.
        PlanePoint w = cand.seed;
        double min_guard = std::numeric_limits<double>::infinity();
        std::vector<long> counts(par.d + 2, 0);
        bool closed = false;
        for (long stp = 1; stp <= cap; ++stp) {
            const ConeInfo info = classify(par, w);
            min_guard = std::min(min_guard, info.boundary_dist);
            ++counts[info.cone];
            double guard = std::numeric_limits<double>::infinity();
            w = F_apply(par, w, guard);
            min_guard = std::min(min_guard, guard);
            cand.im_drift = std::max(cand.im_drift, std::abs(w.imag() - y_hat));
            if (in_middle_cone(par, w)) {
                cand.period = stp;
                closed = true;
                break;
            }
        }
        if (!closed) {
            rep.rejected.push_back("return cap exceeded");
            continue;
        }
        cand.closure_error = std::abs(w - cand.seed);
        if (cand.closure_error > 1e-10) {
            std::ostringstream os;
            os << "n=" << n << ": orbit did not close (|F^k(seed)-seed|=" << cand.closure_error
               << ")";
            rep.rejected.push_back(os.str());
            continue;
        }
        if (min_guard < par.boundary_guard) {
            std::ostringstream os;
            os << "n=" << n << ": orbit within guard band of the partition boundary";
            rep.rejected.push_back(os.str());
            continue;
        }
        cand.symbol_counts = counts;
        double angle = 0;
        for (int c = 1; c <= par.d; ++c) angle += counts[c] * par.theta[c - 1];
        cand.rotation_angle = std::remainder(angle, 2 * kPi);
        cand.epsilon = 0.9 * min_guard;
        rep.islands.push_back(cand);
    }
    return rep;
}

namespace {

std::vector<long> float_cf_prefix(double x, int depth) {
    std::vector<long> out;
    double rest = x - std::floor(x);
    for (int i = 0; i < depth; ++i) {
        if (rest < 1e-12) break;
        const double inv = 1.0 / rest;
        if (inv > 1e12) break;
        out.push_back(static_cast<long>(std::floor(inv)));
        rest = inv - std::floor(inv);
    }
    return out;
}

}  // namespace

IslandVerification verify_island(const TceParams& par, const IslandCandidate& cand,
                                 const std::vector<double>& deltas, int circle_samples,
                                 int revolutions) {
    IslandVerification rep;
    rep.deltas = deltas;

    // An itinerary of only 0 and d+1 symbols cannot be periodic for
    // irrational lambda; such a candidate is malformed.
    long middle = 0;
    for (int c = 1; c <= par.d && c + 1 <= static_cast<int>(cand.symbol_counts.size()); ++c)
        middle += cand.symbol_counts[c];
    if (middle == 0) {
        rep.failure = "itinerary contains no middle-cone symbol";
        return rep;
    }

    for (const double delta : deltas) {
        if (!(delta > 0) || delta >= cand.epsilon) {
            rep.failure = "delta outside (0, epsilon)";
            return rep;
        }
    }

    double fitted_rotation = 0;
    bool fitted = false;
    for (const double delta : deltas) {
        for (int s = 0; s < circle_samples; ++s) {
            const double ang = 2 * kPi * s / circle_samples;
            PlanePoint z = cand.seed + std::polar(delta, ang);
            PlanePoint center = cand.seed;
            for (int rev = 0; rev < revolutions; ++rev) {
                PlanePoint w = z, c = center;
                for (long stp = 0; stp < cand.period; ++stp) {
                    w = F_apply(par, w);
                    c = F_apply(par, c);
                    const double drift = std::abs(std::abs(w - c) - delta);
                    rep.max_radius_drift = std::max(rep.max_radius_drift, drift);
                }
                z = w;
                center = c;
            }
            if (!fitted) {
                const double a0 = std::arg(std::polar(delta, ang));
                const double a1 = std::arg(z - center);
                fitted_rotation = std::remainder((a1 - a0) / revolutions, 2 * kPi);
                fitted = true;
            }
        }
    }
    rep.rotation_mismatch =
        std::abs(std::remainder(fitted_rotation - cand.rotation_angle, 2 * kPi));
    rep.cf_of_rotation_over_pi = float_cf_prefix(std::abs(cand.rotation_angle) / kPi, 20);
    rep.ok = rep.failure.empty();
    return rep;
}

AlphaConstruction construct_island_alpha(const std::vector<int>& tau, int j_prime, int j_double,
                                         double delta, double total) {
    const int d = static_cast<int>(tau.size());
    if (d < 2) throw std::domain_error("construct_island_alpha: d >= 2 required");
    if (!is_permutation(tau)) throw std::domain_error("construct_island_alpha: invalid tau");
    if (j_prime < 1 || j_prime > d || j_double < 1 || j_double > d || j_prime == j_double)
        throw std::domain_error("construct_island_alpha: invalid witness indices");
    if (!(delta > 0 && delta < 1) || !(total > 0 && total < kPi))
        throw std::domain_error("construct_island_alpha: need 0 < delta < 1, 0 < total < pi");

    AlphaConstruction out;
    out.alpha.assign(d, 0.0);
    if (d == 2) {
        out.alpha[j_prime - 1] = total * delta / 2;
        out.alpha[j_double - 1] = total * (1 - delta / 2);
    } else {
        for (int j = 0; j < d; ++j) out.alpha[j] = total * delta / (12 * (d - 2));
        out.alpha[j_prime - 1] = total * delta / 6;
        out.alpha[j_double - 1] = total * (1 - delta / 4);
    }

    // Witness inequality at j'.
    const ReflectiveResult refl = reflective_test(out.alpha, tau);
    out.reflective_ok =
        std::find(refl.witnesses.begin(), refl.witnesses.end(), j_prime) != refl.witnesses.end();

    // theta_{j'}(alpha/|alpha|) within delta of +-1 (the dominance that drives
    // mu_{j'}/nu toward the island regime).
    double theta_jp = 0;
    for (int k = 0; k < d; ++k) {
        if (tau[k] < tau[j_prime - 1]) theta_jp += out.alpha[k];
        if (k < j_prime - 1) theta_jp -= out.alpha[k];
    }
    out.dominance_ok = std::abs(theta_jp) / total > 1 - delta;

    // Hyperplane avoidance: |alpha| - theta_{j'} - 2 sum_{j<=k} alpha_j != 0.
    out.hyperplanes_clear = true;
    double partial = 0;
    for (int k = 0; k <= d; ++k) {
        if (k > 0) partial += out.alpha[k - 1];
        const double h = total - theta_jp - 2 * partial;
        out.hyperplane_values.push_back(h);
        if (std::abs(h) < 1e-9) out.hyperplanes_clear = false;
    }
    if (!out.reflective_ok || !out.dominance_ok) {
        out.advice = "decrease delta: the witness inequalities fail at this size";
    } else if (!out.hyperplanes_clear) {
        out.advice = "perturb delta slightly: alpha lies on a section-line hyperplane";
    }
    return out;
}

}  // namespace tce
