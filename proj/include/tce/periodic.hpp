#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "tce/renorm.hpp"
#include "tce/tce_map.hpp"

namespace tce {

/// Reflective witnesses: indices j with
/// |sum_{tau(k)>tau(j)} alpha_k - sum_{k<j} alpha_k| < alpha_j.
struct ReflectiveResult {
    bool is_reflective = false;
    std::vector<int> witnesses;  // 1-based cone indices
};

ReflectiveResult reflective_test(const std::vector<double>& alpha, const std::vector<int>& tau);

/// The special slope mu_j = tan((pi + theta_j)/2) whose section line
/// L'_S(-mu_j) is height-preserving under F.
struct MuSpecial {
    double mu = 0;           // mu_j
    double mu_incoming = 0;  // -mu_j, slope of the section line
    double line_angle = 0;   // (pi - theta_j)/2
    bool singular = false;   // theta_j = 0 gives a vertical tangent
    bool line_in_cone = false;
    double max_im_drift = 0;  // sampled |Im F(z) - Im z| along the line
};

MuSpecial mu_special(const TceParams& par, int j, int check_samples = 100);

/// Open interval I_P of p-values admitting a horizontal periodic orbit:
/// (1/D, 1/C) for mu > nu, (1/C, 1/D) for mu < -nu.
std::pair<double, double> p_window(double mu, double nu);

struct IslandCandidate {
    double y_hat = 0;           // solved orbit height
    PlanePoint seed;            // xi_S(y_hat) on L'_S(-mu_j)
    long period = 0;            // F-steps of the closed orbit
    int n_index = 0;            // gap (y_{n+1}, y_n) that produced it
    double rotation_angle = 0;  // sum m'_j theta_j mod 2pi
    double epsilon = 0;         // certified island radius
    double closure_error = 0;   // |F^period(seed) - seed|
    double im_drift = 0;        // max |Im F^r(seed) - y_hat|
    std::vector<long> symbol_counts;
};

struct IslandSearchReport {
    std::vector<IslandCandidate> islands;
    std::vector<std::string> rejected;  // reasons for discarded n indices
    MuSpecial slope;
};

/// For each n <= terms with p_n(mu_j) in I_P: the exact intersection of the
/// affine maps y -> Re rho(y) and y -> Re xi_S(y) inside (y_{n+1}, y_n),
/// verified by forward iteration.
IslandSearchReport find_horizontal_orbits(const TceParams& par, int j, int terms, long cap);

struct IslandVerification {
    bool ok = false;
    double max_radius_drift = 0;     // over all sampled circles and revolutions
    double rotation_mismatch = 0;    // fitted circle rotation vs itinerary angle
    std::vector<double> deltas;
    std::vector<long> cf_of_rotation_over_pi;  // continued-fraction prefix of theta'/pi
    std::string failure;
};

/// Invariant-circle verification: for each delta < epsilon, points of
/// S_delta(seed) keep their distance to the orbit along every step of
/// `revolutions` full periods. The rotation number theta'/pi is reported via
/// its continued-fraction prefix (irrationality is not decidable here).
IslandVerification verify_island(const TceParams& par, const IslandCandidate& cand,
                                 const std::vector<double>& deltas, int circle_samples,
                                 int revolutions = 1);

/// The explicit construction of rotation parameters with infinitely many
/// islands: alpha_{j'} = |alpha| delta/2 and alpha_{j''} = |alpha|(1-delta/2)
/// for d = 2; the (delta/6, 1-delta/4, delta/(12(d-2))) pattern for d > 2.
struct AlphaConstruction {
    std::vector<double> alpha;
    bool reflective_ok = false;     // witness inequality at j'
    bool dominance_ok = false;      // theta_{j'}/|alpha| within delta of its extreme
    bool hyperplanes_clear = false; // alpha avoids every H_k
    std::vector<double> hyperplane_values;
    std::string advice;
};

AlphaConstruction construct_island_alpha(const std::vector<int>& tau, int j_prime, int j_double,
                                         double delta, double total);

}  // namespace tce
