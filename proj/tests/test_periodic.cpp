#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tce/periodic.hpp"

using tce::GoldenRational;
using tce::PlanePoint;
using tce::TceParams;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPhiD = 0.61803398874989484820458683436563811772;
const GoldenRational kPhi = GoldenRational::phi();

TceParams fig3() {
    return TceParams::create_exact({0.7, kPi - 2.7}, {1, 0}, kPhi, GoldenRational(1) - kPhi);
}
}  // namespace

TEST_CASE("reflective witnesses") {
    // For the transposition, the first cone is always a witness: the
    // entries with larger image vanish, so the bound reads 0 < alpha_1.
    const auto r = tce::reflective_test({0.7, kPi - 2.7}, {1, 0});
    CHECK(r.is_reflective);
    CHECK(std::find(r.witnesses.begin(), r.witnesses.end(), 1) != r.witnesses.end());

    // Identity permutation: j is a witness iff the tail/head sums differ by
    // less than alpha_j; a balanced middle entry qualifies.
    const auto rid = tce::reflective_test({1.0, 0.5, 1.0}, {0, 1, 2});
    CHECK(std::find(rid.witnesses.begin(), rid.witnesses.end(), 2) != rid.witnesses.end());

    // A vanishing entry cannot be a witness (the inequality is strict).
    const auto rthin = tce::reflective_test({1e-12, 1.0, 1.0 + 1e-12}, {0, 1, 2});
    CHECK(std::find(rthin.witnesses.begin(), rthin.witnesses.end(), 2) ==
          rthin.witnesses.end());
}

TEST_CASE("special slope and height preservation along the section line") {
    const TceParams p = fig3();
    const tce::MuSpecial ms = tce::mu_special(p, 1);
    CHECK_FALSE(ms.singular);
    CHECK(ms.mu == doctest::Approx(std::tan((2 * kPi - 2.7) / 2)).epsilon(1e-13));
    CHECK(ms.mu_incoming == -ms.mu);
    CHECK(ms.line_in_cone);
    CHECK(ms.max_im_drift < 1e-12);

    // theta_j = 0 has no finite special slope.
    const TceParams ident = TceParams::create({0.5, kPi - 2.5}, {0, 1}, 0.61, 0.3);
    CHECK(tce::mu_special(ident, 1).singular);
}

TEST_CASE("admissible ratio window") {
    const auto [lo, hi] = tce::p_window(5.0, 1.0);
    CHECK(lo == doctest::Approx(4.0 / 10.0));   // 1/D = (mu-nu)/(2mu)
    CHECK(hi == doctest::Approx(6.0 / 10.0));   // 1/C = (mu+nu)/(2mu)
    CHECK((lo + hi) == doctest::Approx(1.0));   // conjugate exponents
    const auto [lo2, hi2] = tce::p_window(-5.0, 1.0);
    CHECK(lo2 == doctest::Approx(4.0 / 10.0));  // 1/C now sits on the left
    CHECK(hi2 == doctest::Approx(6.0 / 10.0));
    // mu -> infinity shrinks the window to its midpoint.
    const auto [lo3, hi3] = tce::p_window(1e9, 1.0);
    CHECK(hi3 - lo3 == doctest::Approx(0.0).epsilon(1e-8));
    CHECK_THROWS_AS(tce::p_window(0.5, 1.0), std::domain_error);
}

TEST_CASE("island ladder at the figure parameters") {
    const TceParams p = fig3();
    const tce::IslandSearchReport rep = tce::find_horizontal_orbits(p, 1, 5, 200000);
    REQUIRE(rep.islands.size() >= 5);
    CHECK(rep.islands[0].n_index == 0);
    CHECK(rep.islands[0].period == 2);
    CHECK(rep.islands[1].period == 7);
    CHECK(rep.islands[2].period == 20);
    CHECK(rep.islands[3].period == 54);
    for (const auto& isl : rep.islands) {
        CHECK(isl.closure_error < 1e-12);
        CHECK(isl.im_drift < 1e-12);
        CHECK(isl.epsilon > 0);
        CHECK(isl.seed.imag() == doctest::Approx(isl.y_hat));
    }
    for (size_t i = 0; i + 1 < rep.islands.size(); ++i) {
        const double ratio = rep.islands[i + 1].y_hat / rep.islands[i].y_hat;
        CHECK(ratio == doctest::Approx(kPhiD * kPhiD).epsilon(1e-9));
    }
}

TEST_CASE("ratio outside the window yields no candidates") {
    // theta_1 small makes |mu_1| > mubar, and this alpha puts both alternating
    // ratios outside the window: every gap is rejected with a reason.
    const TceParams p =
        TceParams::create_exact({0.9, kPi - 2.9}, {1, 0}, kPhi, GoldenRational(1) - kPhi);
    const tce::IslandSearchReport rep = tce::find_horizontal_orbits(p, 1, 4, 100000);
    CHECK(rep.islands.empty());
    CHECK(rep.rejected.size() >= 4);
    for (const auto& why : rep.rejected) CHECK(why.find("outside I_P") != std::string::npos);
}

TEST_CASE("invariant circles on a verified island") {
    const TceParams p = fig3();
    const auto rep = tce::find_horizontal_orbits(p, 1, 3, 200000);
    REQUIRE(!rep.islands.empty());
    const auto& isl = rep.islands.front();

    const tce::IslandVerification v =
        tce::verify_island(p, isl, {isl.epsilon / 2}, 200, 3);
    CHECK(v.ok);
    CHECK(v.max_radius_drift < 1e-10);
    CHECK(v.rotation_mismatch < 1e-8);
    CHECK_FALSE(v.cf_of_rotation_over_pi.empty());

    // Radii at or beyond the certified bound are rejected.
    const tce::IslandVerification bad = tce::verify_island(p, isl, {isl.epsilon * 1.5}, 8, 1);
    CHECK_FALSE(bad.ok);

    // Long-run drift over many revolutions stays tiny.
    const tce::IslandVerification long_run =
        tce::verify_island(p, isl, {isl.epsilon / 3}, 16, 1000);
    CHECK(long_run.ok);
    CHECK(long_run.max_radius_drift < 1e-9 * isl.epsilon / 3 + 1e-12);
}

TEST_CASE("periodic seeds produce periodic itineraries") {
    const TceParams p = fig3();
    const auto rep = tce::find_horizontal_orbits(p, 1, 2, 200000);
    REQUIRE(rep.islands.size() >= 2);
    const auto& isl = rep.islands[1];  // period 7
    const tce::OrbitTrace trace = tce::orbit(p, isl.seed, 3 * isl.period);
    REQUIRE(trace.status == tce::OrbitStatus::completed);
    for (size_t i = 0; i + isl.period < trace.symbols.size(); ++i)
        CHECK(trace.symbols[i] == trace.symbols[i + isl.period]);
    for (size_t i = 0; i < trace.points.size(); ++i)
        CHECK(trace.points[i].imag() == doctest::Approx(isl.y_hat).epsilon(1e-12));
}

TEST_CASE("translation-only itineraries are rejected") {
    const TceParams p = fig3();
    const auto rep = tce::find_horizontal_orbits(p, 1, 2, 200000);
    REQUIRE(!rep.islands.empty());
    tce::IslandCandidate forged = rep.islands.front();
    forged.symbol_counts.assign(p.d + 2, 0);
    forged.symbol_counts[0] = forged.period;
    const tce::IslandVerification v = tce::verify_island(p, forged, {forged.epsilon / 2}, 8, 1);
    CHECK_FALSE(v.ok);
    CHECK(v.failure.find("middle-cone") != std::string::npos);
}

TEST_CASE("constructed rotation parameters") {
    const std::vector<int> tau{2, 0, 1};
    const auto built = tce::construct_island_alpha(tau, 1, 2, 0.1, kPi - 0.1);
    const double total = kPi - 0.1;
    REQUIRE(built.alpha.size() == 3);
    CHECK(built.alpha[0] == doctest::Approx(total / 60));
    CHECK(built.alpha[1] == doctest::Approx(total * 39.0 / 40));
    CHECK(built.alpha[2] == doctest::Approx(total / 120));
    CHECK(built.reflective_ok);
    CHECK(built.dominance_ok);
    CHECK(built.hyperplanes_clear);
    CHECK(built.advice.empty());
    REQUIRE(built.hyperplane_values.size() == 4);

    const auto flat = tce::construct_island_alpha({1, 0}, 1, 2, 0.1, kPi - 0.1);
    CHECK(flat.alpha[0] == doctest::Approx(total * 0.05));
    CHECK(flat.alpha[1] == doctest::Approx(total * 0.95));
    CHECK(flat.reflective_ok);

    CHECK_THROWS_AS(tce::construct_island_alpha(tau, 1, 1, 0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(tce::construct_island_alpha(tau, 1, 2, 1.5, 1.0), std::domain_error);
}

TEST_CASE("constructed parameters carry an island ladder end to end") {
    const std::vector<int> tau{2, 0, 1};
    const auto built = tce::construct_island_alpha(tau, 1, 2, 0.1, kPi - 0.1);
    const TceParams p =
        TceParams::create_exact(built.alpha, tau, kPhi, GoldenRational(1) - kPhi);
    const auto rep = tce::find_horizontal_orbits(p, 1, 4, 200000);
    CHECK(rep.islands.size() >= 3);
    for (size_t i = 0; i + 1 < rep.islands.size(); ++i)
        CHECK(rep.islands[i + 1].y_hat / rep.islands[i].y_hat ==
              doctest::Approx(kPhiD * kPhiD).epsilon(1e-9));
}
