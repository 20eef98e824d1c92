#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tce/cf.hpp"

using tce::CfExpansion;
using tce::GoldenRational;
using tce::SemiSide;

namespace {
const GoldenRational kPhi = GoldenRational::phi();
const GoldenRational kOne(1);

GoldenRational golden_lambda(int k) { return kOne / (GoldenRational(k) + kPhi); }

mpz_class fib(int n) {
    mpz_class a = 0, b = 1;
    for (int i = 0; i < n; ++i) {
        mpz_class t = a + b;
        a = b;
        b = t;
    }
    return a;
}
}  // namespace

TEST_CASE("continued fraction expansions") {
    const CfExpansion phi_exp = cf_expand(kPhi, 10);
    REQUIRE(phi_exp.coeffs.size() == 10);
    for (const long c : phi_exp.coeffs) CHECK(c == 1);
    CHECK_FALSE(phi_exp.terminated);

    const CfExpansion lam2 = cf_expand(golden_lambda(2), 8);
    CHECK(lam2.coeffs[0] == 2);
    for (size_t i = 1; i < lam2.coeffs.size(); ++i) CHECK(lam2.coeffs[i] == 1);

    const CfExpansion half = cf_expand(GoldenRational(mpq_class(1, 2), mpq_class(0)), 8);
    CHECK(half.terminated);
    REQUIRE(half.coeffs.size() == 1);
    CHECK(half.coeffs[0] == 2);

    CHECK_THROWS_AS(cf_expand(GoldenRational(2), 4), std::domain_error);
}

TEST_CASE("convergents of the golden family are Fibonacci pairs") {
    for (int k = 1; k <= 5; ++k) {
        const CfExpansion e = cf_expand(golden_lambda(k), 24);
        const auto conv = convergents(e, 21);
        CHECK(conv[0].num == 0);
        CHECK(conv[0].den == 1);
        for (int n = 1; n <= 20; ++n) {
            CHECK(conv[n].num == fib(n));
            CHECK(conv[n].den == fib(n) * k + fib(n - 1));
        }
    }
    const auto conv1 = convergents(cf_expand(kPhi, 8), 4);
    CHECK(conv1[3].num == 2);
    CHECK(conv1[3].den == 3);
}

TEST_CASE("semiconvergent ladders start as listed") {
    const auto golden = semiconvergents(cf_expand(kPhi, 12), 5);
    CHECK(golden.upper[0].num == 1);
    CHECK(golden.upper[0].den == 1);
    CHECK(golden.lower[0].num == 0);
    CHECK(golden.lower[0].den == 1);
    CHECK(golden.lower[1].num == 1);
    CHECK(golden.lower[1].den == 2);

    const auto l2 = semiconvergents(cf_expand(golden_lambda(2), 12), 5);
    CHECK(l2.upper[0].num == 1);
    CHECK(l2.upper[0].den == 1);
    CHECK(l2.upper[1].num == 1);
    CHECK(l2.upper[1].den == 2);
}

TEST_CASE("upper semiconvergents are the best approximations from above") {
    for (const int k : {1, 2}) {
        const GoldenRational lambda = golden_lambda(k);
        const auto gs = gamma_sequences(lambda, 8);
        for (const auto& f : gs.upper) {
            if (f.den > 50) break;
            const GoldenRational err =
                GoldenRational(mpq_class(f.num), mpq_class(0)) -
                GoldenRational(mpq_class(f.den), mpq_class(0)) * lambda;
            if (err.sign() <= 0) continue;
            for (long b = 1; b <= f.den.get_si(); ++b) {
                // Smallest positive a - b*lambda over a is at a = ceil(b*lambda).
                const long a = (lambda * GoldenRational(b)).floor_long() + 1;
                if (a == f.num && b == f.den) continue;
                const GoldenRational other =
                    GoldenRational(a) - GoldenRational(b) * lambda;
                CHECK(other > err);
            }
        }
    }
}

TEST_CASE("error sequences match the golden closed forms exactly") {
    for (const int k : {1, 2, 3, 5}) {
        const auto gs = gamma_sequences(golden_lambda(k), 21);
        for (int n = 0; n <= 20; ++n) {
            CHECK(gs.gamma_prime[n] == gamma_closed_form(k, n, SemiSide::upper));
            CHECK(gs.gamma_double[n] == gamma_closed_form(k, n, SemiSide::lower));
        }
    }
    CHECK(gamma_closed_form(1, 0, SemiSide::upper) == kPhi * kPhi);
    CHECK(gamma_closed_form(1, 1, SemiSide::lower) == pow(kPhi, 3));
    CHECK(gamma_closed_form(2, 0, SemiSide::lower) == kPhi * kPhi);  // lambda = Phi^2 at k = 2
}

TEST_CASE("error sequences decrease strictly and merge greatest-first") {
    const auto gs = gamma_sequences(golden_lambda(3), 16);
    for (int n = 1; n < 16; ++n) {
        CHECK(gs.gamma_prime[n] < gs.gamma_prime[n - 1]);
        CHECK(gs.gamma_double[n] < gs.gamma_double[n - 1]);
        CHECK(gs.gamma[n] < gs.gamma[n - 1]);
    }
    // The merge contains every element of both sources.
    for (int n = 0; n < 8; ++n) {
        CHECK(std::find(gs.gamma.begin(), gs.gamma.end(), gs.gamma_prime[n]) != gs.gamma.end());
        CHECK(std::find(gs.gamma.begin(), gs.gamma.end(), gs.gamma_double[n]) != gs.gamma.end());
    }
    // Intercalation parity: odd entries from the upper errors, even from the lower.
    for (int n = 0; n < 16; ++n) {
        if (n % 2 == 1)
            CHECK(gs.gamma[n] == gs.gamma_prime[(n - 1) / 2]);
        else
            CHECK(gs.gamma[n] == gs.gamma_double[n / 2]);
    }
}

TEST_CASE("Fibonacci linear forms for the golden error values") {
    for (int k = 1; k <= 5; ++k) {
        const GoldenRational lambda = golden_lambda(k);
        for (int n = 0; n <= 20; ++n) {
            const GoldenRational f_odd(mpq_class(fib(2 * n + 1)), mpq_class(0));
            const GoldenRational q_odd(mpq_class(fib(2 * n + 1) * k + fib(2 * n)), mpq_class(0));
            CHECK(lambda * pow(kPhi, 2 * n + 1) == f_odd - q_odd * lambda);
            if (n >= 1) {
                const GoldenRational f_even(mpq_class(fib(2 * n)), mpq_class(0));
                const GoldenRational q_even(mpq_class(fib(2 * n) * k + fib(2 * n - 1)),
                                            mpq_class(0));
                CHECK(lambda * pow(kPhi, 2 * n) == q_even * lambda - f_even);
            }
        }
    }
}

TEST_CASE("rational lambda is rejected for error sequences") {
    CHECK_THROWS_AS(gamma_sequences(GoldenRational(mpq_class(1, 2), mpq_class(0)), 4),
                    std::domain_error);
}
