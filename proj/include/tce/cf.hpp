#pragma once

#include <gmpxx.h>

#include <vector>

#include "tce/golden.hpp"

namespace tce {

/// Continued fraction expansion x = [0; c_1, c_2, ...] of x in (0, 1),
/// computed by exact floor/reciprocal steps in Q(sqrt5).
struct CfExpansion {
    std::vector<long> coeffs;
    bool terminated = false;  // x rational, expansion ended before depth
    GoldenRational source;
};

CfExpansion cf_expand(const GoldenRational& x, int depth);

struct Fraction {
    mpz_class num, den;
};

/// p_0/q_0 = 0/1, p_n/q_n = [0; c_1..c_n] via the standard recurrence.
std::vector<Fraction> convergents(const CfExpansion& e, int terms);

/// Upper semiconvergents [0,1],...,[0,c1],[0,c1,c2,1],...,[0,c1,c2,c3],...
/// and lower semiconvergents 0,[0,c1,1],...,[0,c1,c2],...; the best rational
/// approximations from above resp. below.
struct SemiconvergentLadder {
    std::vector<Fraction> upper, lower;
};

SemiconvergentLadder semiconvergents(const CfExpansion& e, int terms);

enum class SemiSide { upper, lower };

/// Error sequences of the semiconvergents of lambda:
///   gamma_prime[n]  = p'_{n+c1-1} - q'_{n+c1-1} lambda   (upper, the shift by
///                     c1-1 drops the upper errors exceeding lambda)
///   gamma_double[n] = q''_n lambda - p''_n               (lower)
/// and their greatest-first merge gamma.
struct GammaSequences {
    GoldenRational lambda;
    std::vector<long> coeffs;
    std::vector<Fraction> convergent_pairs, upper, lower;
    std::vector<GoldenRational> gamma_prime, gamma_double, gamma;
    std::vector<SemiSide> gamma_source;  // provenance of each merged entry
    std::vector<int> gamma_index;        // index within its source sequence
};

GammaSequences gamma_sequences(const GoldenRational& lambda, int terms);

/// Golden-family closed forms for lambda = 1/(k+Phi):
/// gamma' = lambda Phi^{2n+1}, gamma'' = lambda Phi^{2n}, exact in Q(sqrt5).
GoldenRational gamma_closed_form(int k, int n, SemiSide which);

}  // namespace tce
