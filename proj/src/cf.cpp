#include "tce/cf.hpp"

#include <stdexcept>

namespace tce {

CfExpansion cf_expand(const GoldenRational& x, int depth) {
    if (x.sign() <= 0 || x >= GoldenRational(1))
        throw std::domain_error("cf_expand: x must lie in (0, 1)");
    CfExpansion out;
    out.source = x;
    GoldenRational rest = x;
    for (int i = 0; i < depth; ++i) {
        if (rest.is_zero()) {
            out.terminated = true;
            break;
        }
        const GoldenRational inv = GoldenRational(1) / rest;
        const long a = inv.floor_long();
        out.coeffs.push_back(a);
        rest = inv - GoldenRational(a);
    }
    if (!out.terminated && !out.coeffs.empty() && rest.is_zero()) out.terminated = true;
    return out;
}

std::vector<Fraction> convergents(const CfExpansion& e, int terms) {
    if (terms > static_cast<int>(e.coeffs.size()) + 1)
        throw std::domain_error("convergents: expansion too shallow");
    std::vector<Fraction> out;
    out.reserve(terms);
    if (terms <= 0) return out;
    out.push_back({0, 1});
    if (terms == 1) return out;
    out.push_back({1, e.coeffs[0]});
    for (int n = 2; n < terms; ++n) {
        const long c = e.coeffs[n - 1];
        out.push_back({c * out[n - 1].num + out[n - 2].num, c * out[n - 1].den + out[n - 2].den});
    }
    return out;
}

SemiconvergentLadder semiconvergents(const CfExpansion& e, int terms) {
    SemiconvergentLadder out;
    const int depth = static_cast<int>(e.coeffs.size());
    const std::vector<Fraction> conv = convergents(e, depth + 1);
    // Upper ladder: (p_{2m-1} + n p_{2m}) / (q_{2m-1} + n q_{2m}), n = 1..c_{2m+1},
    // with the m = 0 block anchored at p_{-1}/q_{-1} = 1/0.
    Fraction prev{1, 0};
    for (int m = 0; static_cast<int>(out.upper.size()) < terms; ++m) {
        if (2 * m >= depth) break;
        const Fraction& anchor = (m == 0) ? prev : conv[2 * m - 1];
        const Fraction& step = conv[2 * m];
        const long block = e.coeffs[2 * m];
        for (long n = 1; n <= block && static_cast<int>(out.upper.size()) < terms; ++n)
            out.upper.push_back({anchor.num + n * step.num, anchor.den + n * step.den});
    }
    // Lower ladder: p_0/q_0 then (p_{2m} + n p_{2m+1}) / (q_{2m} + n q_{2m+1}), n = 1..c_{2m+2}.
    out.lower.push_back(conv[0]);
    for (int m = 0; static_cast<int>(out.lower.size()) < terms; ++m) {
        if (2 * m + 1 >= depth) break;
        const Fraction& anchor = conv[2 * m];
        const Fraction& step = conv[2 * m + 1];
        const long block = e.coeffs[2 * m + 1];
        for (long n = 1; n <= block && static_cast<int>(out.lower.size()) < terms; ++n)
            out.lower.push_back({anchor.num + n * step.num, anchor.den + n * step.den});
    }
    if (static_cast<int>(out.upper.size()) < terms || static_cast<int>(out.lower.size()) < terms)
        throw std::domain_error("semiconvergents: expansion too shallow for requested terms");
    return out;
}

namespace {

GoldenRational upper_error(const Fraction& f, const GoldenRational& lambda) {
    const GoldenRational p(mpq_class(f.num), mpq_class(0));
    const GoldenRational q(mpq_class(f.den), mpq_class(0));
    return p - q * lambda;
}

GoldenRational lower_error(const Fraction& f, const GoldenRational& lambda) {
    const GoldenRational p(mpq_class(f.num), mpq_class(0));
    const GoldenRational q(mpq_class(f.den), mpq_class(0));
    return q * lambda - p;
}

}  // namespace

GammaSequences gamma_sequences(const GoldenRational& lambda, int terms) {
    if (lambda.is_rational())
        throw std::domain_error("gamma_sequences: lambda must be irrational");
    // Each error term consumes at most one CF coefficient beyond the first
    // block of size c1, so expand past 2*(terms + c1) coefficients.
    const long c1 = cf_expand(lambda, 1).coeffs.at(0);
    const CfExpansion e = cf_expand(lambda, 2 * (terms + static_cast<int>(c1)) + 8);

    GammaSequences out;
    out.lambda = lambda;
    out.coeffs = e.coeffs;
    out.convergent_pairs = convergents(e, std::min<int>(2 * terms + 4, e.coeffs.size() + 1));
    const SemiconvergentLadder ladder =
        semiconvergents(e, terms + static_cast<int>(c1) + 1);
    out.upper = ladder.upper;
    out.lower = ladder.lower;

    for (int n = 0; n < terms; ++n) {
        out.gamma_prime.push_back(upper_error(ladder.upper.at(n + c1 - 1), lambda));
        out.gamma_double.push_back(lower_error(ladder.lower.at(n), lambda));
    }

    // Greatest-first merge of the two strictly decreasing error sequences.
    size_t ip = 0, id = 0;
    while (out.gamma.size() < static_cast<size_t>(terms)) {
        const bool take_prime =
            id >= out.gamma_double.size() ||
            (ip < out.gamma_prime.size() && out.gamma_prime[ip] > out.gamma_double[id]);
        if (take_prime) {
            out.gamma.push_back(out.gamma_prime[ip]);
            out.gamma_source.push_back(SemiSide::upper);
            out.gamma_index.push_back(static_cast<int>(ip++));
        } else {
            out.gamma.push_back(out.gamma_double[id]);
            out.gamma_source.push_back(SemiSide::lower);
            out.gamma_index.push_back(static_cast<int>(id++));
        }
    }
    return out;
}

GoldenRational gamma_closed_form(int k, int n, SemiSide which) {
    if (k < 1 || n < 0) throw std::domain_error("gamma_closed_form: need k >= 1, n >= 0");
    const GoldenRational lambda = GoldenRational(1) / (GoldenRational(k) + GoldenRational::phi());
    const long exponent = which == SemiSide::upper ? 2L * n + 1 : 2L * n;
    return lambda * pow(GoldenRational::phi(), exponent);
}

}  // namespace tce
