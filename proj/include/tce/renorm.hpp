#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tce/dynseq.hpp"
#include "tce/tce_map.hpp"

namespace tce {

/// Slope correspondence of a section line: the incoming line of slope
/// mu_prime inside cone P_j maps under F to a line of slope
/// mu = (mu' + tan theta_j)/(1 - mu' tan theta_j); heights stretch by
/// gamma = sqrt((1 + mu'^-2)/(1 + mu^-2)).
struct SlopePair {
    double mu_prime = 0, mu = 0, gamma = 0;
    int cone = 0;          // j with L'_S(mu') inside P_j
    bool singular = false;  // mu' tan(theta_j) = 1, vertical image
    double line_angle = 0;  // phi' = angle of the incoming line in [0, pi)
};

SlopePair slope_pair(const TceParams& par, double mu_prime, int j);

/// (lambda, eta) at double-double accuracy: golden closed forms when the
/// record is golden, conversion of the exact values otherwise, plain doubles
/// as a last resort. The compensated dynamical-sequence recursion needs
/// inputs consistent with its error-sequence table at this accuracy.
std::pair<DoubleDouble, DoubleDouble> dd_translation_lengths(const TceParams& par);

/// gamma_j(phi) = |cos theta_j - sin theta_j cot phi|^{-1} as a function of
/// the image angle phi = phi' + theta_j.
double gamma_of_image_angle(const TceParams& par, int j, double phi);
/// gamma as a function of the source angle phi' (equal to the above).
double gamma_of_source_angle(const TceParams& par, int j, double phi_prime);

/// xi_S(y) = (1/mu' + i) y / gamma: the point of L'_S(mu') whose image under
/// F has imaginary part y.
PlanePoint xi_S(const SlopePair& pair, double y);

/// Height-preservation regime 2 y cot(beta) <= lambda, under which the whole
/// excursion reduces to the one-dimensional gap map.
bool rho_in_regime(const TceParams& par, double y);

/// rho(y) = R(xi_S(y)).
std::optional<ReturnResult> rho(const TceParams& par, const SlopePair& pair, double y, long cap);

/// Empirical reconstruction of the piecewise affine return profile between
/// consecutive discontinuity heights y_n, checked against the dynamical
/// sequences: segment slopes 1/mu, breakpoints at y_n, landing side by the
/// p_{n-1} vs 1/C rule, p_n = x_n/ell(y_n) + 1/2 at every breakpoint.
struct RhoProfile {
    std::vector<double> breakpoints;     // y_0 .. y_N from the dynamical sequences
    std::vector<double> segment_slopes;  // fitted d Re rho / dy per segment
    std::vector<double> x_n;             // Re rho(y_n^-)
    std::vector<int> landing_side;       // +1 -> L'_1, -1 -> L'_d, at y_n for n >= 1
    std::vector<int> predicted_side;     // from p_{n-1} vs 1/C
    std::vector<double> jump_magnitude;  // |jump| at y_n, should equal upsilon_n
    std::vector<double> breakpoint_residual; // |p_n - (x_n/ell(y_n) + 1/2)|
    double max_slope_deviation = 0;      // |slope - 1/mu| over all segments
    double max_height_deviation = 0;     // |Im rho(y) - y| over all samples
    bool sides_match = true;
    bool structure_ok = true;
    std::string failure;
};

RhoProfile rho_profile(const TceParams& par, const SlopePair& pair, int terms,
                       int samples_per_segment, long cap);

/// Lower bound for the first discontinuity height, uniform over section
/// lines: ybar_0 minimizes y_0(tan phi) against the stretch factor over each
/// middle cone (dense grid plus golden-section refinement; both gamma
/// orientations are taken so the bound is conservative), then
/// ybar_1 = Phi^2 * ybar_0, shrunk by 1% before use.
struct Y1Bound {
    double ybar0 = 0, ybar1 = 0;
};

Y1Bound y1_lower_bound(const TceParams& par);

/// Renormalization check R(Phi^{2m} z) = Phi^{2m} R(z) on uniform samples of
/// U = {z in P_c : Im z < ybar_1}, for m = 1..depth.
struct RenormReport {
    double ybar1 = 0;
    double max_deviation = 0;
    std::vector<double> per_level_deviation;
    long resample_count = 0;
    int samples = 0;
    int depth = 0;
    bool pass = false;
    double tol = 0;
};

RenormReport renorm_check(const TceParams& par, int samples, int depth, double tol, long cap,
                          std::uint64_t seed);

/// Census of distinct return-map isometries on the rings
/// Phi^{2(l-1)} U \ Phi^{2l} U: grid points are clustered by the recovered
/// (rotation, translation) action. Demonstrates countably many atoms: every
/// deeper ring reveals fresh isometries, each found isometry reappears one
/// ring deeper with its translation contracted by the golden square, and no
/// translation part vanishes (so the scaled chains never repeat a value).
struct AtomCensusReport {
    std::vector<int> distinct_per_level;
    std::vector<int> sampled_per_level;
    int total_distinct = 0;           // cumulative distinct isometries
    bool translations_repeat = false; // a vanishing translation collapses its chain
    bool growth = false;              // fresh isometries at every level + intact chains
    double max_isometry_residual = 0;
};

AtomCensusReport atom_census(const TceParams& par, int levels, int grid, long cap);

}  // namespace tce
