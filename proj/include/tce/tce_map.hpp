#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "tce/golden.hpp"
#include "tce/iet.hpp"

namespace tce {

using PlanePoint = std::complex<double>;

/// Full parameter record of a translated cone exchange transformation:
/// d middle cones of angles alpha (0 < |alpha| < pi), exchange permutation
/// tau, translations lambda (right cone), eta (middle), 1 (left cone).
/// Derived: beta = pi/2 - |alpha|/2, nu = tan(beta), cone rotation angles
/// theta_j and the partition boundary rays.
struct TceParams {
    int d = 0;
    std::vector<double> alpha;
    std::vector<int> tau;  // 0-based images
    double lambda = 0, eta = 0;
    std::optional<GoldenRational> lambda_exact, eta_exact;
    std::optional<int> golden_k;  // set when lambda = 1/(k+Phi), eta = 1 - k*lambda exactly

    double abs_alpha = 0, beta = 0, nu = 0;
    std::vector<double> theta;                       // theta_j, j = 1..d (0-based storage)
    std::vector<double> boundary_angle;              // rays beta, beta+a1, ..., pi-beta
    std::vector<std::complex<double>> boundary_dir;  // unit vectors of those rays
    std::vector<std::complex<double>> rotation;      // e^{i theta_j}
    std::vector<bool> boundary_removable;  // middle/middle rays with identical germ both sides

    double boundary_guard = 1e-12;

    /// Validates alpha in A, tau a permutation, 0 < eta < lambda and fills in
    /// the derived quantities. Exact lambda/eta trigger golden-family detection.
    static TceParams create(std::vector<double> alpha, std::vector<int> tau, double lambda,
                            double eta);
    static TceParams create_exact(std::vector<double> alpha, std::vector<int> tau,
                                  const GoldenRational& lambda, const GoldenRational& eta);
};

struct ConeInfo {
    int cone = -1;             // 0..d+1
    double boundary_dist = 0;  // distance to the nearest non-removable partition ray
};

/// Cone membership with the half-open conventions: W_0 = [0, beta),
/// W_1 = [beta, beta+a_1], W_j = (.,.] for 2 <= j <= d, W_{d+1} = (pi-beta, pi].
/// Throws std::domain_error for z = 0 or Im z < 0.
ConeInfo classify(const TceParams& par, PlanePoint z);

/// One step of F = G o E: rotate the middle cone of z by theta_j, then
/// translate by -1 / -eta / +lambda according to the cone of the rotated
/// point. guard_dist, when given, is lowered to the minimum boundary
/// distance seen at both classifications.
PlanePoint F_apply(const TceParams& par, PlanePoint z);
PlanePoint F_apply(const TceParams& par, PlanePoint z, double& guard_dist);

/// The circle-at-infinity interval exchange on [0, pi]: lengths
/// (beta, alpha_1..alpha_d, beta), permutation fixing the outer slots.
IetSpec<double> hat_iet(const TceParams& par);

inline bool in_middle_cone(const TceParams& par, PlanePoint z) {
    const int c = classify(par, z).cone;
    return c >= 1 && c <= par.d;
}

/// k(z) = min{n >= 1 : F^n(z) in P_c}. nullopt when cap is exceeded.
std::optional<long> hitting_time_to_middle(const TceParams& par, PlanePoint z, long cap);

struct ReturnResult {
    PlanePoint point;
    long steps = 0;
    double min_boundary_dist = 0;  // over the whole excursion, including rotated points
};

/// First return R(z) = F^{k(z)}(z) for z in the middle cone.
std::optional<ReturnResult> return_map(const TceParams& par, PlanePoint z, long cap);

enum class OrbitStatus { completed, hit_boundary, cap_exceeded };

struct OrbitTrace {
    std::vector<PlanePoint> points;   // z, F(z), ..., F^steps(z)
    std::vector<int> symbols;         // cone index of points[k], k < steps
    std::vector<long> symbol_counts;  // m'_j tallies, indexed 0..d+1
    OrbitStatus status = OrbitStatus::completed;
    double min_boundary_dist = 0;
};

/// Forward orbit with itinerary capture; stops early (status hit_boundary)
/// when the orbit enters the guard band around the non-removable partition
/// boundary.
OrbitTrace orbit(const TceParams& par, PlanePoint z, long steps);

struct ConjugacyReport {
    bool ok = false;
    long steps_checked = 0;
    double max_deviation = 0;
    std::string failure;
};

/// Cross-check of the planar orbit against the one-dimensional gap map
/// through s(x) = x + 1 + ell/2 with ell = 2 Im(z) cot(beta); valid inside
/// the slab region until the orbit first enters the middle cone.
ConjugacyReport conjugacy_check(const TceParams& par, PlanePoint z, long n, double tol);

/// Membership test for R_{lambda,beta} (the slab where the conjugacy holds).
bool in_conjugacy_region(const TceParams& par, PlanePoint z);

}  // namespace tce
