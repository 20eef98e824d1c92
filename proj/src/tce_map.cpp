#include "tce/tce_map.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tce {

namespace {

constexpr double kPi = std::numbers::pi;

void fill_derived(TceParams& p) {
    p.d = static_cast<int>(p.alpha.size());
    if (p.d < 2) throw std::domain_error("TceParams: d >= 2 required");
    p.abs_alpha = 0;
    for (const double a : p.alpha) {
        if (!(a > 0)) throw std::domain_error("TceParams: cone angles must be positive");
        p.abs_alpha += a;
    }
    if (!(p.abs_alpha > 0 && p.abs_alpha < kPi))
        throw std::domain_error("TceParams: alpha must satisfy 0 < |alpha| < pi");
    if (p.tau.size() != p.alpha.size() || !is_permutation(p.tau))
        throw std::domain_error("TceParams: tau must be a permutation of the cone indices");
    if (!(p.lambda > 0)) throw std::domain_error("TceParams: lambda must be positive");
    if (!(p.eta > 0 && p.eta < p.lambda))
        throw std::domain_error("TceParams: 0 < eta < lambda required");

    p.beta = kPi / 2 - p.abs_alpha / 2;
    p.nu = std::tan(p.beta);

    p.theta.assign(p.d, 0.0);
    for (int j = 0; j < p.d; ++j) {
        double t = 0;
        for (int k = 0; k < p.d; ++k) {
            if (p.tau[k] < p.tau[j]) t += p.alpha[k];
            if (k < j) t -= p.alpha[k];
        }
        p.theta[j] = t;
    }
    p.rotation.clear();
    for (const double t : p.theta) p.rotation.push_back(std::polar(1.0, t));

    p.boundary_angle.assign(1, p.beta);
    for (const double a : p.alpha) p.boundary_angle.push_back(p.boundary_angle.back() + a);
    p.boundary_dir.clear();
    for (const double b : p.boundary_angle) p.boundary_dir.push_back(std::polar(1.0, b));

    // A middle/middle ray is removable when the cones on both sides rotate by
    // the same angle (the translation, -eta, already agrees): crossing it does
    // not change the germ of F, so it cannot cause classification ambiguity.
    p.boundary_removable.assign(p.boundary_angle.size(), false);
    for (int m = 1; m + 1 <= p.d; ++m) {
        if (std::abs(p.theta[m - 1] - p.theta[m]) < 1e-12) p.boundary_removable[m] = true;
    }
}

void detect_golden(TceParams& p) {
    if (!p.lambda_exact || !p.eta_exact) return;
    if (p.lambda_exact->is_rational()) return;
    const GoldenRational u =
        GoldenRational(1) / *p.lambda_exact - GoldenRational::phi();  // should be the integer k
    if (!u.is_rational()) return;
    const mpq_class k = u.unit_part();
    if (k.get_den() != 1 || k.get_num() <= 0 || !k.get_num().fits_sint_p()) return;
    const int kk = static_cast<int>(k.get_num().get_si());
    const GoldenRational eta_expected =
        GoldenRational(1) - GoldenRational(kk) * *p.lambda_exact;
    if (*p.eta_exact == eta_expected) p.golden_k = kk;
}

}  // namespace

TceParams TceParams::create(std::vector<double> alpha, std::vector<int> tau, double lambda,
                            double eta) {
    TceParams p;
    p.alpha = std::move(alpha);
    p.tau = std::move(tau);
    p.lambda = lambda;
    p.eta = eta;
    fill_derived(p);
    return p;
}

TceParams TceParams::create_exact(std::vector<double> alpha, std::vector<int> tau,
                                  const GoldenRational& lambda, const GoldenRational& eta) {
    TceParams p;
    p.alpha = std::move(alpha);
    p.tau = std::move(tau);
    p.lambda_exact = lambda;
    p.eta_exact = eta;
    p.lambda = lambda.to_double();
    p.eta = eta.to_double();
    fill_derived(p);
    detect_golden(p);
    return p;
}

ConeInfo classify(const TceParams& par, PlanePoint z) {
    const double x = z.real();
    const double y = z.imag();
    if (x == 0 && y == 0) throw std::domain_error("classify: argument of 0 is undefined");
    if (y < 0) throw std::domain_error("classify: point below the real axis");

    // cross[m] = |z| sin(arg z - b_m): sign locates arg z against ray m,
    // magnitude is the distance of z to the ray's line.
    const int nb = static_cast<int>(par.boundary_dir.size());
    double dist = std::abs(y);  // distance to the real axis (rays arg 0 and pi)
    std::vector<double> cross(nb);
    for (int m = 0; m < nb; ++m) {
        cross[m] = par.boundary_dir[m].real() * y - par.boundary_dir[m].imag() * x;
        if (!par.boundary_removable[m]) dist = std::min(dist, std::abs(cross[m]));
    }

    ConeInfo info;
    info.boundary_dist = dist;
    if (y == 0) {
        info.cone = x > 0 ? 0 : par.d + 1;
        return info;
    }
    if (cross[0] < 0) {
        info.cone = 0;
        return info;
    }
    if (cross[nb - 1] > 0) {
        info.cone = par.d + 1;
        return info;
    }
    for (int j = 1; j <= par.d; ++j) {
        const bool lo_ok = j == 1 ? cross[j - 1] >= 0 : cross[j - 1] > 0;
        if (lo_ok && cross[j] <= 0) {
            info.cone = j;
            return info;
        }
    }
    throw std::runtime_error("classify: inconsistent cone resolution");
}

PlanePoint F_apply(const TceParams& par, PlanePoint z, double& guard_dist) {
    const ConeInfo c1 = classify(par, z);
    guard_dist = std::min(guard_dist, c1.boundary_dist);
    PlanePoint w = z;
    if (c1.cone >= 1 && c1.cone <= par.d) w = z * par.rotation[c1.cone - 1];
    const ConeInfo c2 = classify(par, w);
    guard_dist = std::min(guard_dist, c2.boundary_dist);
    if (c2.cone == 0) return w - 1.0;
    if (c2.cone == par.d + 1) return w + par.lambda;
    return w - par.eta;
}

PlanePoint F_apply(const TceParams& par, PlanePoint z) {
    double unused = std::numeric_limits<double>::infinity();
    return F_apply(par, z, unused);
}

IetSpec<double> hat_iet(const TceParams& par) {
    IetSpec<double> spec;
    spec.lengths.push_back(par.beta);
    for (const double a : par.alpha) spec.lengths.push_back(a);
    spec.lengths.push_back(par.beta);
    spec.perm.assign(par.d + 2, 0);
    spec.perm[0] = 0;
    spec.perm[par.d + 1] = par.d + 1;
    for (int j = 0; j < par.d; ++j) spec.perm[j + 1] = par.tau[j] + 1;
    return spec;
}

std::optional<long> hitting_time_to_middle(const TceParams& par, PlanePoint z, long cap) {
    PlanePoint w = z;
    for (long n = 1; n <= cap; ++n) {
        w = F_apply(par, w);
        if (in_middle_cone(par, w)) return n;
    }
    return std::nullopt;
}

std::optional<ReturnResult> return_map(const TceParams& par, PlanePoint z, long cap) {
    PlanePoint w = z;
    double guard = std::numeric_limits<double>::infinity();
    for (long n = 1; n <= cap; ++n) {
        w = F_apply(par, w, guard);
        const ConeInfo info = classify(par, w);
        if (info.cone >= 1 && info.cone <= par.d) return ReturnResult{w, n, guard};
    }
    return std::nullopt;
}

OrbitTrace orbit(const TceParams& par, PlanePoint z, long steps) {
    OrbitTrace trace;
    trace.symbol_counts.assign(par.d + 2, 0);
    trace.min_boundary_dist = std::numeric_limits<double>::infinity();
    trace.points.push_back(z);
    PlanePoint w = z;
    for (long n = 0; n < steps; ++n) {
        const ConeInfo info = classify(par, w);
        trace.min_boundary_dist = std::min(trace.min_boundary_dist, info.boundary_dist);
        if (info.boundary_dist < par.boundary_guard) {
            trace.status = OrbitStatus::hit_boundary;
            return trace;
        }
        trace.symbols.push_back(info.cone);
        ++trace.symbol_counts[info.cone];
        double guard = std::numeric_limits<double>::infinity();
        w = F_apply(par, w, guard);
        trace.min_boundary_dist = std::min(trace.min_boundary_dist, guard);
        if (guard < par.boundary_guard) {
            trace.status = OrbitStatus::hit_boundary;
            trace.points.push_back(w);
            return trace;
        }
        trace.points.push_back(w);
    }
    trace.status = OrbitStatus::completed;
    return trace;
}

bool in_conjugacy_region(const TceParams& par, PlanePoint z) {
    if (in_middle_cone(par, z)) return false;
    const double cot_beta = 1.0 / par.nu;
    const double shifted = z.real() + z.imag() * cot_beta;
    return shifted >= -1.0 && shifted <= par.lambda && 2 * z.imag() * cot_beta <= par.lambda;
}

ConjugacyReport conjugacy_check(const TceParams& par, PlanePoint z, long n, double tol) {
    ConjugacyReport rep;
    if (!in_conjugacy_region(par, z)) {
        rep.failure = "point outside the conjugacy region";
        return rep;
    }
    const double ell = 2 * z.imag() / par.nu;
    const GapMap<double> m{par.lambda, ell};
    const double shift = 1.0 + ell / 2;  // s(x) = x + 1 + ell/2
    double x = z.real() + shift;
    PlanePoint w = z;
    rep.ok = true;
    for (long i = 1; i <= n; ++i) {
        w = F_apply(par, w);
        x = gap_apply(m, x);
        if (in_middle_cone(par, w)) break;  // conjugacy asserted up to k(z) only
        const double dev =
            std::max(std::abs((x - shift) - w.real()), std::abs(w.imag() - z.imag()));
        rep.max_deviation = std::max(rep.max_deviation, dev);
        rep.steps_checked = i;
        if (dev > tol) {
            rep.ok = false;
            rep.failure = "orbit deviates from the one-dimensional model";
            return rep;
        }
    }
    return rep;
}

}  // namespace tce
