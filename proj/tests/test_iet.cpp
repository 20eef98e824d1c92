#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "tce/iet.hpp"

using tce::GapMap;
using tce::GoldenRational;
using tce::IetSpec;

namespace {
const GoldenRational kPhi = GoldenRational::phi();
const GoldenRational kOne(1);

GoldenRational q(long num, long den = 1) {
    return GoldenRational(mpq_class(num, den), mpq_class(0));
}

// Independent oracle: rearrange the intervals by the permutation and read
// each interval's offset from its new position.
template <class S>
std::vector<S> brute_translations(const IetSpec<S>& spec) {
    const int d = static_cast<int>(spec.lengths.size());
    std::vector<S> left_src(d, S(0)), left_dst(d, S(0));
    for (int j = 1; j < d; ++j) left_src[j] = left_src[j - 1] + spec.lengths[j - 1];
    for (int j = 0; j < d; ++j) {
        S acc(0);
        for (int m = 0; m < d; ++m)
            if (spec.perm[m] < spec.perm[j]) acc += spec.lengths[m];
        left_dst[j] = acc;
    }
    std::vector<S> w(d, S(0));
    for (int j = 0; j < d; ++j) w[j] = left_dst[j] - left_src[j];
    return w;
}
}  // namespace

TEST_CASE("translation vector: two-interval swap and three-interval reversal") {
    const IetSpec<GoldenRational> swap{{q(3), kPhi}, {1, 0}};
    const auto w2 = translation_vector(swap);
    CHECK(w2[0] == kPhi);
    CHECK(w2[1] == -q(3));

    const IetSpec<GoldenRational> rev{{q(1), q(2), q(3)}, {2, 1, 0}};
    const auto w3 = translation_vector(rev);
    CHECK(w3[0] == q(5));
    CHECK(w3[1] == q(2));
    CHECK(w3[2] == -q(3));
    CHECK(w3 == brute_translations(rev));

    const IetSpec<GoldenRational> ident{{q(1), q(2), q(3)}, {0, 1, 2}};
    for (const auto& w : translation_vector(ident)) CHECK(w == GoldenRational());
}

TEST_CASE("translation vector agrees with the rearrangement oracle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 4);
        IetSpec<GoldenRational> spec;
        for (int j = 0; j < d; ++j)
            spec.lengths.push_back(q(static_cast<long>(rng() % 9) + 1, 3));
        spec.perm.resize(d);
        for (int j = 0; j < d; ++j) spec.perm[j] = j;
        std::shuffle(spec.perm.begin(), spec.perm.end(), rng);
        CHECK(translation_vector(spec) == brute_translations(spec));
    }
}

TEST_CASE("interval exchange application") {
    const IetSpec<GoldenRational> spec{{kOne, kPhi}, {1, 0}};
    CHECK(iet_apply(spec, q(1, 2)) == q(1, 2) + kPhi);
    CHECK(iet_apply(spec, q(6, 5)) == q(1, 5));
    const IetSpec<GoldenRational> rev{{q(1), q(2), q(3)}, {2, 1, 0}};
    CHECK(iet_apply(rev, GoldenRational()) == q(5));
    CHECK_THROWS_AS(iet_apply(spec, q(7)), std::domain_error);
    CHECK_THROWS_AS(iet_apply(spec, -kPhi), std::domain_error);
}

TEST_CASE("interval exchange is a bijection on an exact grid") {
    const IetSpec<GoldenRational> spec{{kOne, kPhi, kPhi * kPhi}, {2, 0, 1}};
    GoldenRational total(0);
    for (const auto& a : spec.lengths) total += a;
    std::vector<GoldenRational> images;
    for (long i = 0; i < 240; ++i) {
        const GoldenRational x = total * q(i, 240);
        images.push_back(iet_apply(spec, x));
        CHECK(images.back() >= GoldenRational());
        CHECK(images.back() < total);
    }
    std::sort(images.begin(), images.end());
    CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());

    // The images of the interval endpoints tile [0, total) with the lengths
    // rearranged by the permutation.
    std::vector<GoldenRational> left_images;
    GoldenRational left(0);
    for (size_t j = 0; j < spec.lengths.size(); ++j) {
        left_images.push_back(iet_apply(spec, left));
        left += spec.lengths[j];
    }
    std::vector<size_t> order(spec.lengths.size());
    for (size_t j = 0; j < order.size(); ++j) order[spec.perm[j]] = j;
    GoldenRational expect(0);
    for (const size_t j : order) {
        CHECK(left_images[j] == expect);
        expect += spec.lengths[j];
    }
    CHECK(expect == total);
}

TEST_CASE("base map values and a golden orbit") {
    CHECK(g_apply(kPhi, kOne) == kOne + kPhi);
    CHECK(g_apply(kPhi, kOne + kPhi) == kPhi);
    GoldenRational z = kOne;
    for (int i = 0; i < 5; ++i) z = g_apply(kPhi, z);
    CHECK(z == q(3) * kPhi - kOne);       // g^5(1) = 3 Phi - 1
    CHECK(z == kOne - pow(kPhi, 4));      // = 1 - Phi^4
    CHECK_THROWS_AS(g_apply(kPhi, q(9)), std::domain_error);
}

TEST_CASE("gap map branches") {
    const GapMap<GoldenRational> m{kPhi, q(3, 10)};
    CHECK(gap_apply(m, kOne) == kOne + kPhi);
    CHECK(gap_apply(m, q(11, 10)) == q(11, 10));
    CHECK(gap_apply(m, q(7, 5)) == q(2, 5));
    CHECK_THROWS_AS(validate_gap(GapMap<GoldenRational>{kPhi, kPhi + kOne}), std::domain_error);
    CHECK_THROWS_AS(gap_apply(m, q(2)), std::domain_error);
}

TEST_CASE("first hitting of the gap endpoints, golden lambda") {
    const GapMap<GoldenRational> m{kPhi, q(3, 10)};
    const auto right = first_hitting(m, kOne + m.ell, 1000);
    REQUIRE(right.has_value());
    CHECK(right->time == 5);
    CHECK(right->point == q(13, 10) - pow(kPhi, 4));

    const auto left = first_hitting(m, kOne, 1000);
    REQUIRE(left.has_value());
    CHECK(left->time == 3);
    CHECK(left->point == kOne + pow(kPhi, 3));

    const auto stay = first_hitting_or_stay(m, kOne + q(3, 20), 1000);
    REQUIRE(stay.has_value());
    CHECK(stay->time == 0);
    CHECK(stay->point == kOne + q(3, 20));
}

TEST_CASE("hitting cap exhaustion is reported, not silent") {
    const GapMap<GoldenRational> m{kPhi, q(1, 1000000)};
    CHECK_FALSE(first_hitting(m, kOne, 3).has_value());
}

TEST_CASE("displacement bounds of the golden orbit") {
    const auto [d1m, d1p] = displacement_bounds(kPhi, 1);
    CHECK(d1m == kOne);
    CHECK(d1p == kPhi);
    const auto [d2m, d2p] = displacement_bounds(kPhi, 2);
    CHECK(d2m == kPhi * kPhi);
    CHECK(d2p == kPhi);
    const auto [d4m, d4p] = displacement_bounds(kPhi, 4);
    CHECK(d4m == kPhi * kPhi);
    CHECK(d4p == pow(kPhi, 3));
}

TEST_CASE("local displacement bound") {
    const GapMap<GoldenRational> m{kPhi, q(3, 10)};
    const GoldenRational near_one = kOne - q(1, 1000000);
    const auto d = local_displacement_bound(m, near_one, 1000);
    REQUIRE(d.has_value());
    CHECK(*d <= q(1, 1000000));  // the zeroth orbit point already gives 1 - x

    const auto d2 = local_displacement_bound(m, kOne + m.ell, 1000);
    REQUIRE(d2.has_value());
    CHECK(d2->sign() == 1);
    CHECK_THROWS_AS(local_displacement_bound(m, kOne + q(1, 10), 1000), std::domain_error);
}

TEST_CASE("orbit displacement identities for the base map") {
    std::mt19937_64 rng(5);
    for (long N = 2; N <= 30; N += 3) {
        const auto [d_minus, d_plus] = displacement_bounds(kPhi, N);
        for (int rep = 0; rep < 3; ++rep) {
            const GoldenRational u = q(static_cast<long>(rng() % 1000), 1000);
            const GoldenRational ell_plus = d_plus * u * q(999, 1000);  // < d+
            GoldenRational a = kOne - ell_plus, b = kOne;
            for (long n = 1; n <= N; ++n) {
                a = g_apply(kPhi, a);
                b = g_apply(kPhi, b);
                CHECK(a == b - ell_plus);
            }
            const GoldenRational ell_minus = d_minus * u;  // <= d-
            a = kOne + ell_minus;
            b = kOne;
            for (long n = 1; n <= N; ++n) {
                a = g_apply(kPhi, a);
                b = g_apply(kPhi, b);
                if (n >= 2) CHECK(a == b + ell_minus);
            }
        }
    }
}

TEST_CASE("two-parameter orbit comparison identity") {
    std::mt19937_64 rng(17);
    int verified = 0;
    while (verified < 25) {
        const GoldenRational ell = q(static_cast<long>(rng() % 200) + 50, 1000);
        const GoldenRational ellp = ell * q(static_cast<long>(rng() % 900) + 1, 1000);
        GoldenRational x = q(static_cast<long>(rng() % 1500), 1000);
        if (x >= kOne && x <= kOne + ell) x += ell + q(1, 997);
        if (x > kOne + kPhi) x = kOne + kPhi;
        const GapMap<GoldenRational> m{kPhi, ell};
        const GapMap<GoldenRational> mp{kPhi, ellp};
        const auto hit = first_hitting(m, x, 100000);
        if (!hit) continue;
        const auto dloc = local_displacement_bound(m, x, 100000);
        if (!dloc) continue;
        const GoldenRational span = (ell - ellp) + *dloc;
        const GoldenRational u = q(static_cast<long>(rng() % 997) + 1, 999);
        const GoldenRational xp = x - (ell - ellp) + span * u;
        if (xp <= GoldenRational() || xp > kOne + kPhi) continue;
        GoldenRational zx = x, zxp = xp;
        for (long n = 1; n <= hit->time; ++n) {
            zx = gap_apply(m, zx);
            zxp = gap_apply(mp, zxp);
            CHECK(zx - zxp == x - xp);
        }
        const auto hitp = first_hitting(mp, xp, 200000);
        REQUIRE(hitp.has_value());
        CHECK(hitp->time >= hit->time);
        ++verified;
    }
}

TEST_CASE("exact and floating backends agree through the hitting map") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 30; ++rep) {
        const GoldenRational ell = q(static_cast<long>(rng() % 400) + 20, 1000);
        const GoldenRational x0 = q(static_cast<long>(rng() % 999), 1000);
        const GapMap<GoldenRational> m{kPhi, ell};
        const GapMap<double> mf{kPhi.to_double(), ell.to_double()};
        const auto he = first_hitting(m, x0, 100000);
        const auto hf = first_hitting(mf, x0.to_double(), 100000);
        REQUIRE(he.has_value());
        REQUIRE(hf.has_value());
        CHECK(he->time == hf->time);
        CHECK(he->point.to_double() == doctest::Approx(hf->point).epsilon(1e-9));
    }
}

TEST_CASE("irreducibility detector") {
    CHECK(tce::is_irreducible_permutation({1, 0}));
    CHECK_FALSE(tce::is_irreducible_permutation({0, 1}));
    CHECK(tce::is_irreducible_permutation({2, 1, 0}));
    CHECK_FALSE(tce::is_irreducible_permutation({1, 0, 2}));
}
