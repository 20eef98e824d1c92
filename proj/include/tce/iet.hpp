#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tce/golden.hpp"

namespace tce {

/// Interval exchange transformation of d subintervals with positive lengths
/// and an irreducible permutation, generic over the scalar backend
/// (double for speed, GoldenRational for exactness).
template <class S>
struct IetSpec {
    std::vector<S> lengths;
    std::vector<int> perm;  // 0-based images: interval j moves to slot perm[j]
};

/// perm({0..k}) != {0..k} for every proper prefix.
inline bool is_irreducible_permutation(const std::vector<int>& perm) {
    int max_seen = -1;
    const int d = static_cast<int>(perm.size());
    for (int k = 0; k + 1 < d; ++k) {
        max_seen = std::max(max_seen, perm[k]);
        if (max_seen == k) return false;
    }
    return true;
}

inline bool is_permutation(const std::vector<int>& perm) {
    std::vector<bool> seen(perm.size(), false);
    for (const int v : perm) {
        if (v < 0 || v >= static_cast<int>(perm.size()) || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

template <class S>
void validate_iet(const IetSpec<S>& spec) {
    if (spec.lengths.size() < 2 || spec.lengths.size() != spec.perm.size())
        throw std::domain_error("IetSpec: need d >= 2 matching lengths and permutation");
    for (const S& a : spec.lengths)
        if (!(a > S(0))) throw std::domain_error("IetSpec: lengths must be positive");
    if (!is_permutation(spec.perm)) throw std::domain_error("IetSpec: invalid permutation");
}

/// w_j = sum_{perm(k) < perm(j)} a_k - sum_{k < j} a_k.
template <class S>
std::vector<S> translation_vector(const IetSpec<S>& spec) {
    const int d = static_cast<int>(spec.lengths.size());
    std::vector<S> w(d, S(0));
    for (int j = 0; j < d; ++j) {
        S before_image(0), before_source(0);
        for (int k = 0; k < d; ++k) {
            if (spec.perm[k] < spec.perm[j]) before_image += spec.lengths[k];
            if (k < j) before_source += spec.lengths[k];
        }
        w[j] = before_image - before_source;
    }
    return w;
}

/// x + w_j for the unique j with x in [x_{j-1}, x_j).
template <class S>
S iet_apply(const IetSpec<S>& spec, const S& x) {
    if (x < S(0)) throw std::domain_error("iet_apply: x below domain");
    S right(0);
    const std::vector<S> w = translation_vector(spec);
    for (size_t j = 0; j < spec.lengths.size(); ++j) {
        right += spec.lengths[j];
        if (x < right) return x + w[j];
    }
    throw std::domain_error("iet_apply: x above domain");
}

/// The base map g on [0, 1+lambda]: x+lambda on [0,1], x-1 on (1, 1+lambda].
template <class S>
S g_apply(const S& lambda, const S& x) {
    if (x < S(0) || x > S(1) + lambda) throw std::domain_error("g_apply: x outside [0, 1+lambda]");
    if (x <= S(1)) return x + lambda;
    return x - S(1);
}

/// The three-branch family g_ell on [0, 1+lambda]:
/// x+lambda on I_1 = [0,1], identity on I_c = (1, 1+ell), x-1 on I_2 = [1+ell, 1+lambda].
template <class S>
struct GapMap {
    S lambda, ell;
};

template <class S>
void validate_gap(const GapMap<S>& m) {
    if (!(m.lambda > S(0))) throw std::domain_error("GapMap: lambda must be positive");
    if (m.ell < S(0) || m.ell > m.lambda) throw std::domain_error("GapMap: need 0 <= ell <= lambda");
}

template <class S>
S gap_apply(const GapMap<S>& m, const S& x) {
    if (x < S(0) || x > S(1) + m.lambda)
        throw std::domain_error("gap_apply: x outside [0, 1+lambda]");
    if (x <= S(1)) return x + m.lambda;
    if (x < S(1) + m.ell) return x;
    return x - S(1);
}

template <class S>
bool in_gap_closure(const GapMap<S>& m, const S& x) {
    return x >= S(1) && x <= S(1) + m.ell;
}

template <class S>
struct Hit {
    long time = 0;
    S point;
};

/// n_ell(x) = min{n >= 1 : g_ell^n(x) in [1, 1+ell]} and r_ell(x) = g_ell^{n}(x).
/// nullopt when no hit occurs within cap.
template <class S>
std::optional<Hit<S>> first_hitting(const GapMap<S>& m, const S& x, long cap) {
    if (cap <= 0) throw std::domain_error("first_hitting: cap must be positive");
    S z = x;
    for (long n = 1; n <= cap; ++n) {
        z = gap_apply(m, z);
        if (in_gap_closure(m, z)) return Hit<S>{n, z};
    }
    return std::nullopt;
}

/// The r'_ell variant: points already inside the closed gap stay put with n = 0.
template <class S>
std::optional<Hit<S>> first_hitting_or_stay(const GapMap<S>& m, const S& x, long cap) {
    if (in_gap_closure(m, x)) return Hit<S>{0, x};
    return first_hitting(m, x, cap);
}

/// d^-(N) and d^+(N): displacement bounds of the g-orbit of 1.
/// d^-(N) = 1 - max{g^n(1) <= 1, 1<=n<=N} (or 1 when the orbit stays above 1),
/// d^+(N) = min{g^n(1) >= 1, 1<=n<=N} - 1 (or lambda when it stays below).
template <class S>
std::pair<S, S> displacement_bounds(const S& lambda, long N) {
    if (N < 1) throw std::domain_error("displacement_bounds: N >= 1 required");
    S z(1);
    std::optional<S> best_below, best_above;
    for (long n = 1; n <= N; ++n) {
        z = g_apply(lambda, z);
        if (z <= S(1)) {
            if (!best_below || z > *best_below) best_below = z;
        }
        if (z >= S(1)) {
            if (!best_above || z < *best_above) best_above = z;
        }
    }
    const S d_minus = best_below ? S(1) - *best_below : S(1);
    const S d_plus = best_above ? *best_above - S(1) : lambda;
    return {d_minus, d_plus};
}

/// d^-(x, n_ell(x)) = 1 - max{0<=n<=n_ell(x) : g^n(x) <= 1}.
template <class S>
std::optional<S> local_displacement_bound(const GapMap<S>& m, const S& x, long cap) {
    if (in_gap_closure(m, x) && x > S(1) && x < S(1) + m.ell)
        throw std::domain_error("local_displacement_bound: x must lie outside [1, 1+ell]");
    const auto hit = first_hitting(m, x, cap);
    if (!hit) return std::nullopt;
    std::optional<S> best;
    S z = x;
    for (long n = 0; n <= hit->time; ++n) {
        if (z <= S(1)) {
            if (!best || z > *best) best = z;
        }
        if (n < hit->time) z = gap_apply(m, z);
    }
    return best ? S(1) - *best : S(1);
}

}  // namespace tce
