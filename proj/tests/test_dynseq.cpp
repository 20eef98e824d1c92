#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tce/dynseq.hpp"

using tce::Branch;
using tce::DoubleDouble;
using tce::DynSeqParams;
using tce::DynSeqState;
using tce::GammaTable;
using tce::GoldenRational;
using tce::MuRegime;

namespace {
const GoldenRational kPhi = GoldenRational::phi();
const GoldenRational kOne(1);
constexpr double kPhiD = 0.61803398874989484820458683436563811772;

GoldenRational q(long num, long den = 1) {
    return GoldenRational(mpq_class(num, den), mpq_class(0));
}

DynSeqState<GoldenRational> exact_run(long mu_num, long mu_den, int k, int terms) {
    GammaTable<GoldenRational> table = tce::golden_gamma_table<GoldenRational>(k, 96);
    const GoldenRational lambda = kOne / (GoldenRational(k) + kPhi);
    const DynSeqParams<GoldenRational> par{kOne, q(mu_num, mu_den), lambda,
                                           kOne - GoldenRational(k) * lambda};
    return dynseq_compute(par, table, terms);
}
}  // namespace

TEST_CASE("first terms at nu=1, mu=10 in the golden family") {
    const auto st = exact_run(10, 1, 1, 4);
    const GoldenRational C = q(20, 11);
    CHECK(st.C == C);
    CHECK(st.D == q(20, 9));
    const GoldenRational lambda = kOne / (kOne + kPhi);
    // ell(y_0) = C lambda Phi and p_0 = 1/(C Phi).
    CHECK(GoldenRational(2) * st.y[0] == C * lambda * kPhi);
    CHECK(st.p[0] == kOne / (C * kPhi));
    CHECK(st.kappa[0] == 0);
    CHECK(st.upsilon[0] == lambda);
    // p_1 = 1 - 1/(D Phi).
    CHECK(st.p[1] == kOne - kOne / (q(20, 9) * kPhi));
}

TEST_CASE("termination at the degenerate ratio") {
    // A synthetic error table forcing p_0 = 1/C exactly: then y_1 = 0 and the
    // state records the terminal branch.
    const GoldenRational mu = q(3);          // C = 3/2, 1/C = 2/3
    const GoldenRational eta = q(2, 5);
    const GoldenRational y0 = eta * mu / (mu + kOne);
    const GoldenRational l0 = GoldenRational(2) * y0;
    GammaTable<GoldenRational> table;
    table.lambda = kPhi;
    table.dbl = {l0 * q(2, 3), l0 * q(1, 3)};
    table.prime = {l0 * q(1, 2), l0 * q(1, 4)};
    const DynSeqParams<GoldenRational> par{kOne, mu, kPhi, eta};
    const auto st = dynseq_compute(par, table, 5);
    CHECK(st.p[0] == q(2, 3));
    CHECK(st.terminated);
    CHECK(st.branch[0] == Branch::terminal);
    CHECK(st.y[1].is_zero());
    CHECK(st.p[1].is_zero());
    CHECK(st.kappa[1] == st.kappa[0]);
}

TEST_CASE("closed forms in the three regimes") {
    // Alternating: nu=1, mu=10, n=2.
    const auto cf2 = tce::dynseq_closed_form(1.0, 10.0, 1, 2);
    CHECK(cf2.regime == MuRegime::alternating);
    const double C10 = 20.0 / 11.0;
    const double lam = 1.0 / (1 + kPhiD);
    CHECK(cf2.p == doctest::Approx(1.0 / (C10 * kPhiD)).epsilon(1e-15));
    CHECK(cf2.ell_y == doctest::Approx(C10 * lam * std::pow(kPhiD, 3)).epsilon(1e-15));

    // Small positive: nu=1, mu=2, n=3: p = Phi/C = 3 Phi / 4.
    const auto cf3 = tce::dynseq_closed_form(1.0, 2.0, 1, 3);
    CHECK(cf3.regime == MuRegime::positive_constant);
    CHECK(cf3.p == doctest::Approx(3 * kPhiD / 4).epsilon(1e-15));
    CHECK(cf3.ell_y == doctest::Approx((4.0 / 3.0) * lam * std::pow(kPhiD, 7)).epsilon(1e-15));

    // Small negative: nu=1, mu=-3, n=1: p = 1 - Phi/D with D = 3/2.
    const auto cf1 = tce::dynseq_closed_form(1.0, -3.0, 1, 1);
    CHECK(cf1.regime == MuRegime::negative_constant);
    CHECK(cf1.p == doctest::Approx(1 - kPhiD / 1.5).epsilon(1e-15));
    CHECK_FALSE(tce::dynseq_closed_form(1.0, -3.0, 1, 0).defined);

    // Boundary |mu| = mubar is flagged.
    const double mubar = 1.0 / (kPhiD * kPhiD * kPhiD);
    CHECK(tce::dynseq_closed_form(1.0, mubar, 1, 2).regime == MuRegime::boundary);
}

TEST_CASE("exact recursion equals exact closed forms, all regimes") {
    for (const auto& [num, den] : {std::pair<long, long>{10, 1}, {2, 1}, {-3, 1}, {9, 2}}) {
        const auto st = exact_run(num, den, 1, 20);
        for (int n = 0; n <= 20; ++n) {
            const auto p = tce::dynseq_closed_form_exact_p(kOne, q(num, den), 1, n);
            if (!p) continue;
            CHECK(st.p[n] == *p);
        }
    }
}

TEST_CASE("closed single-step formula matches the recursion branches") {
    // Wherever p_n appears in its reflected form (the step n-1 branch was
    // 'above'), the three-case expression reproduces y_{n+1} exactly.
    const auto st = exact_run(10, 1, 1, 16);
    const DynSeqParams<GoldenRational> par{kOne, q(10), kOne / (kOne + kPhi), kPhi * kPhi};
    int checked = 0;
    for (int n = 1; n + 1 < static_cast<int>(st.y.size()); ++n) {
        if (st.branch[n - 1] != Branch::above) continue;
        CHECK(tce::y_next_closed(par, st.y[n], st.upsilon[n]) == st.y[n + 1]);
        ++checked;
    }
    CHECK(checked >= 5);
    // Threshold case: y exactly at (1/nu - 1/mu)^{-1} gamma collapses to 0.
    const GoldenRational gamma_val = q(1, 7);
    const GoldenRational lead = kOne / (kOne / par.nu - kOne / par.mu);
    CHECK(tce::y_next_closed(par, lead * gamma_val, gamma_val).is_zero());
}

TEST_CASE("recursive product identities along the state") {
    const auto st = exact_run(10, 1, 1, 18);
    const GoldenRational invC = kOne / st.C;
    auto chi = [&](int n, const GoldenRational& x) {
        if (st.p[n] < invC) return x;
        if (st.p[n] > invC) return kOne - x;
        return kOne;
    };
    auto omega = [&](int n) {
        if (st.p[n] < invC) return st.C;
        if (st.p[n] > invC) return st.D;
        return kOne;
    };
    for (int n = 1; n + 1 < static_cast<int>(st.y.size()); ++n) {
        CHECK(st.y[n] == (kOne - omega(n - 1) * chi(n - 1, st.p[n - 1])) * st.y[n - 1]);
        if (n >= 2) {
            const GoldenRational lhs = chi(n - 1, st.p[n]);
            const GoldenRational rhs = (st.upsilon[n] / st.upsilon[n - 1]) *
                                       chi(n - 2, st.p[n - 1]) /
                                       (kOne - omega(n - 1) * chi(n - 1, st.p[n - 1]));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("regime bounds for the conjugate exponents") {
    const double mubar = 1.0 / (kPhiD * kPhiD * kPhiD);
    for (const double mu : {10.0, -8.0, 4.5, -30.0}) {
        const double C = 2 * mu / (mu + 1), D = 2 * mu / (mu - 1);
        CHECK(C > 1 / kPhiD);
        CHECK(C < 1 / (kPhiD * kPhiD));
        CHECK(D > 1 / kPhiD);
        CHECK(D < 1 / (kPhiD * kPhiD));
        REQUIRE(std::abs(mu) > mubar);
    }
    for (const double mu : {-1.5, -2.5, -4.0}) {
        const double D = 2 * mu / (mu - 1);
        CHECK(D > kPhiD);
        CHECK(D < 1 / kPhiD);
        REQUIRE((-mubar < mu && mu < -1));
    }
    for (const double mu : {1.5, 2.5, 4.0}) {
        const double C = 2 * mu / (mu + 1);
        CHECK(C > 1);
        CHECK(C < 1 / kPhiD);
        REQUIRE((1 < mu && mu < mubar));
    }
}

TEST_CASE("heights decrease strictly toward zero") {
    // Alternating regime: the two-step contraction is exactly the golden
    // square; constant regimes contract by it every single step (from n = 1).
    const auto alt = exact_run(10, 1, 1, 20);
    for (size_t n = 1; n < alt.y.size(); ++n) {
        CHECK(alt.y[n] < alt.y[n - 1]);
        CHECK(alt.y[n].sign() == 1);
    }
    for (size_t n = 2; n < alt.y.size(); ++n) CHECK(alt.y[n] == alt.y[n - 2] * kPhi * kPhi);

    for (const long mu : {2L, -3L}) {
        const auto st = exact_run(mu, 1, 1, 16);
        for (size_t n = 1; n < st.y.size(); ++n) CHECK(st.y[n] < st.y[n - 1]);
        for (size_t n = 2; n < st.y.size(); ++n) CHECK(st.y[n] == st.y[n - 1] * kPhi * kPhi);
    }
}

TEST_CASE("conjugate exponents split the unit") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 500; ++i) {
        const long nu_num = static_cast<long>(rng() % 50) + 1;
        const long mu_num = static_cast<long>(rng() % 300) + nu_num + 1;
        const GoldenRational nu = q(nu_num, 7);
        const GoldenRational mu = q((rng() & 1) ? -mu_num : mu_num, 7);
        const GoldenRational C = GoldenRational(2) * mu / (mu + nu);
        const GoldenRational D = GoldenRational(2) * mu / (mu - nu);
        CHECK(kOne / C + kOne / D == kOne);
    }
}

TEST_CASE("compensated backend reproduces the exact state") {
    GammaTable<DoubleDouble> table = tce::golden_gamma_table<DoubleDouble>(1, 64);
    const DoubleDouble phi = DoubleDouble::phi();
    const DoubleDouble lam = DoubleDouble(1) / (DoubleDouble(1) + phi);
    const DynSeqParams<DoubleDouble> par{DoubleDouble(1.0), DoubleDouble(10.0), lam,
                                         DoubleDouble(1) - lam};
    const auto st = dynseq_compute(par, table, 20);
    const auto ref = exact_run(10, 1, 1, 20);
    for (size_t n = 0; n < st.y.size(); ++n) {
        CHECK(st.y[n].to_double() ==
              doctest::Approx(ref.y[n].to_double()).epsilon(1e-14));
        CHECK(st.kappa[n] == ref.kappa[n]);
    }
}

TEST_CASE("table exhaustion surfaces as an error") {
    GammaTable<GoldenRational> tiny = tce::golden_gamma_table<GoldenRational>(1, 2);
    const DynSeqParams<GoldenRational> par{kOne, q(10), kOne / (kOne + kPhi), kPhi * kPhi};
    CHECK_THROWS_AS(dynseq_compute(par, tiny, 20), std::runtime_error);
}

TEST_CASE("parameter validation") {
    GammaTable<GoldenRational> table = tce::golden_gamma_table<GoldenRational>(1, 8);
    CHECK_THROWS_AS(
        dynseq_compute(DynSeqParams<GoldenRational>{-kOne, q(10), kPhi, kPhi * kPhi}, table, 2),
        std::domain_error);
    CHECK_THROWS_AS(
        dynseq_compute(DynSeqParams<GoldenRational>{kOne, q(1, 2), kPhi, kPhi * kPhi}, table, 2),
        std::domain_error);
}
