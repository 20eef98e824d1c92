#include "tce/bifurcation.hpp"

#include <stdexcept>

namespace tce {

BifurcationData compute_bifurcation_sequences(const GoldenRational& lambda, int terms, long cap) {
    if (lambda.is_rational() || lambda.sign() <= 0 || lambda >= GoldenRational(1))
        throw std::domain_error("compute_bifurcation_sequences: lambda must be irrational in (0,1)");
    const GoldenRational one(1);
    BifurcationData out;
    GoldenRational z = one;
    std::optional<GoldenRational> best_below, best_above;
    for (long n = 1; n <= cap; ++n) {
        z = g_apply(lambda, z);
        if (z < one) {
            if (!best_below || z > *best_below) {
                best_below = z;
                const GoldenRational s = one - z;
                if (s <= lambda && static_cast<int>(out.lambda_prime.size()) < terms) {
                    out.lambda_prime.push_back(s);
                    out.k_prime.push_back(n);
                }
            }
        } else if (z > one) {
            if (!best_above || z < *best_above) {
                best_above = z;
                const GoldenRational s = z - one;
                if (s <= lambda && static_cast<int>(out.lambda_double.size()) < terms) {
                    out.lambda_double.push_back(s);
                    out.k_double.push_back(n);
                }
            }
        }
        if (static_cast<int>(out.lambda_prime.size()) >= terms &&
            static_cast<int>(out.lambda_double.size()) >= terms) {
            out.complete = true;
            break;
        }
    }
    // Greatest-first merge, mirroring the intercalation of the error sequences.
    size_t ip = 0, id = 0;
    while (ip < out.lambda_prime.size() || id < out.lambda_double.size()) {
        const bool take_prime = id >= out.lambda_double.size() ||
                                (ip < out.lambda_prime.size() &&
                                 out.lambda_prime[ip] > out.lambda_double[id]);
        out.merged.push_back(take_prime ? out.lambda_prime[ip++] : out.lambda_double[id++]);
    }
    return out;
}

std::optional<bool> is_bifurcation_point(const GoldenRational& lambda, const GoldenRational& ell,
                                         BifSide side, long cap) {
    if (ell.sign() <= 0 || ell > lambda)
        throw std::domain_error("is_bifurcation_point: need 0 < ell <= lambda");
    const GapMap<GoldenRational> m{lambda, ell};
    const GoldenRational one(1);
    if (side == BifSide::right) {
        const auto hit = first_hitting(m, one + ell, cap);
        if (!hit) return std::nullopt;
        return hit->point == one;
    }
    const auto hit = first_hitting(m, one, cap);
    if (!hit) return std::nullopt;
    return hit->point == one + ell;
}

BifurcationEquivalenceReport verify_bifurcation_equivalence(int k, int terms, long cap) {
    if (k < 1) throw std::domain_error("verify_bifurcation_equivalence: k >= 1 required");
    BifurcationEquivalenceReport report;
    report.k = k;
    report.terms = terms;
    const GoldenRational lambda = GoldenRational(1) / (GoldenRational(k) + GoldenRational::phi());
    report.orbit = compute_bifurcation_sequences(lambda, terms, cap);
    report.complete = report.orbit.complete || terms == 0;
    for (int n = 0; n < terms; ++n) {
        report.gamma_prime.push_back(gamma_closed_form(k, n, SemiSide::upper));
        report.gamma_double.push_back(gamma_closed_form(k, n, SemiSide::lower));
    }
    report.all_equal = report.complete;
    for (int n = 0; n < terms && report.complete; ++n) {
        if (report.orbit.lambda_prime[n] != report.gamma_prime[n]) {
            report.all_equal = false;
            report.mismatches.push_back(
                {SemiSide::upper, n, report.orbit.lambda_prime[n], report.gamma_prime[n]});
        }
        if (report.orbit.lambda_double[n] != report.gamma_double[n]) {
            report.all_equal = false;
            report.mismatches.push_back(
                {SemiSide::lower, n, report.orbit.lambda_double[n], report.gamma_double[n]});
        }
    }
    return report;
}

std::optional<EndpointReport> endpoint_hitting_report(const GoldenRational& lambda,
                                                      const GoldenRational& ell, long cap) {
    if (lambda.is_rational())
        throw std::domain_error("endpoint_hitting_report: lambda must be irrational");
    if (ell.sign() <= 0 || ell > lambda)
        throw std::domain_error("endpoint_hitting_report: need 0 < ell <= lambda");

    // Locate the brackets gamma'_{n1+1} <= ell < gamma'_{n1} and
    // gamma''_{n2+1} <= ell < gamma''_{n2}.
    int terms = 8;
    GammaSequences gs = gamma_sequences(lambda, terms);
    auto bracket = [&](const std::vector<GoldenRational>& seq, long& idx) -> bool {
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            if (seq[i + 1] <= ell && ell < seq[i]) {
                idx = static_cast<long>(i);
                return true;
            }
        }
        return false;
    };
    long n1 = -1, n2 = -1;
    while (!bracket(gs.gamma_prime, n1) || !bracket(gs.gamma_double, n2)) {
        terms *= 2;
        if (terms > 4096)
            throw std::runtime_error("endpoint_hitting_report: ell too small to bracket");
        gs = gamma_sequences(lambda, terms);
    }

    const GoldenRational one(1);
    const GapMap<GoldenRational> m{lambda, ell};
    const auto hit_right = first_hitting(m, one + ell, cap);
    const auto hit_left = first_hitting(m, one, cap);
    if (!hit_right || !hit_left) return std::nullopt;

    const BifurcationData bif =
        compute_bifurcation_sequences(lambda, static_cast<int>(std::max(n1, n2)) + 2, cap);
    if (!bif.complete) return std::nullopt;

    EndpointReport rep;
    rep.n_right = hit_right->time;
    rep.r_right = hit_right->point;
    rep.n_left = hit_left->time;
    rep.r_left = hit_left->point;
    rep.bracket_prime = n1;
    rep.bracket_double = n2;
    rep.predicted_r_right = one + ell - gs.gamma_prime[n1 + 1];
    rep.predicted_r_left = one + gs.gamma_double[n2 + 1];
    rep.predicted_n_right = bif.k_prime[n1 + 1];
    rep.predicted_n_left = bif.k_double[n2 + 1];
    rep.right_value_matches = rep.r_right == rep.predicted_r_right;
    rep.left_value_matches = rep.r_left == rep.predicted_r_left;
    rep.right_time_matches = rep.n_right == rep.predicted_n_right;
    rep.left_time_matches = rep.n_left == rep.predicted_n_left;
    return rep;
}

}  // namespace tce
