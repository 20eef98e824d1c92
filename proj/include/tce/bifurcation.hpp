#pragma once

#include <optional>
#include <vector>

#include "tce/cf.hpp"
#include "tce/golden.hpp"
#include "tce/iet.hpp"

namespace tce {

/// Bifurcation sequences of the base map g, computed dynamically from the
/// exact orbit of 1: lambda_prime[n] = 1 - g^{k'_n}(1) (right bifurcation
/// points, successive orbit maxima below 1 that stay within (0, lambda]),
/// lambda_double[n] = g^{k''_n}(1) - 1 (left, successive minima above 1).
struct BifurcationData {
    std::vector<GoldenRational> lambda_prime, lambda_double, merged;
    std::vector<long> k_prime, k_double;
    bool complete = false;  // all requested terms found within the cap
};

BifurcationData compute_bifurcation_sequences(const GoldenRational& lambda, int terms, long cap);

enum class BifSide { right, left };

/// Exact endpoint identity: right means r_ell(1+ell) == 1, left means
/// r_ell(1) == 1+ell. nullopt when the hitting orbit exceeds the cap.
std::optional<bool> is_bifurcation_point(const GoldenRational& lambda, const GoldenRational& ell,
                                         BifSide side, long cap);

struct BifurcationEquivalenceReport {
    int k = 0;
    int terms = 0;
    bool all_equal = false;
    bool complete = false;
    struct Mismatch {
        SemiSide side;
        int index;
        GoldenRational orbit_value, cf_value;
    };
    std::vector<Mismatch> mismatches;
    BifurcationData orbit;
    std::vector<GoldenRational> gamma_prime, gamma_double;
};

/// Orbit-based bifurcation sequences vs the semiconvergent error sequences,
/// exact equality, for lambda = 1/(k+Phi).
BifurcationEquivalenceReport verify_bifurcation_equivalence(int k, int terms, long cap);

/// First-hitting data of both endpoints of the middle gap, with the
/// predictions r_ell(1+ell) = 1+ell-gamma'_{n1+1}, n = k'_{n1+1} (and the
/// lower-sequence analogue for the left endpoint).
struct EndpointReport {
    long n_right = 0, n_left = 0;
    GoldenRational r_right, r_left;
    long bracket_prime = 0, bracket_double = 0;  // n1, n2
    GoldenRational predicted_r_right, predicted_r_left;
    long predicted_n_right = 0, predicted_n_left = 0;
    bool right_value_matches = false, left_value_matches = false;
    bool right_time_matches = false, left_time_matches = false;
};

std::optional<EndpointReport> endpoint_hitting_report(const GoldenRational& lambda,
                                                      const GoldenRational& ell, long cap);

}  // namespace tce
