#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tce/cf.hpp"
#include "tce/dd.hpp"
#include "tce/golden.hpp"

namespace tce {

/// Semiconvergent error values consumed by the dynamical-sequence recursion,
/// generic over the scalar backend. For the golden family the entries are the
/// closed forms lambda * Phi^m; for general lambda they are converted from an
/// exact GammaSequences.
template <class S>
struct GammaTable {
    S lambda;
    std::vector<S> prime, dbl;

    const S& prime_at(int i) const { return at(prime, i); }
    const S& double_at(int i) const { return at(dbl, i); }
    int size() const { return static_cast<int>(prime.size()); }

private:
    static const S& at(const std::vector<S>& v, int i) {
        if (i < 0 || i >= static_cast<int>(v.size()))
            throw std::runtime_error("GammaTable: index beyond precomputed range");
        return v[static_cast<size_t>(i)];
    }
};

template <class S>
S golden_phi();
template <>
inline double golden_phi<double>() { return 0.61803398874989484820458683436563811772; }
template <>
inline DoubleDouble golden_phi<DoubleDouble>() { return DoubleDouble::phi(); }
template <>
inline GoldenRational golden_phi<GoldenRational>() { return GoldenRational::phi(); }

/// Faithful double-double image of an exact field element.
inline DoubleDouble to_double_double(const GoldenRational& x) {
    const double hi = x.to_double();
    const double lo = (x - GoldenRational(mpq_class(hi), mpq_class(0))).to_double();
    return DoubleDouble(hi) + DoubleDouble(lo);
}

template <class S>
GammaTable<S> golden_gamma_table(int k, int size) {
    if (k < 1) throw std::domain_error("golden_gamma_table: k >= 1 required");
    GammaTable<S> t;
    const S phi = golden_phi<S>();
    t.lambda = S(1) / (S(k) + phi);
    const S phi2 = phi * phi;
    S odd = t.lambda * phi;  // lambda Phi^{2n+1}
    S even = t.lambda;       // lambda Phi^{2n}
    for (int i = 0; i < size; ++i) {
        t.prime.push_back(odd);
        t.dbl.push_back(even);
        odd *= phi2;
        even *= phi2;
    }
    return t;
}

template <class S>
GammaTable<S> gamma_table_from_sequences(const GammaSequences& gs) {
    GammaTable<S> t;
    t.lambda = S(gs.lambda.to_double());
    for (const auto& g : gs.gamma_prime) t.prime.push_back(S(g.to_double()));
    for (const auto& g : gs.gamma_double) t.dbl.push_back(S(g.to_double()));
    return t;
}

template <>
inline GammaTable<GoldenRational> gamma_table_from_sequences<GoldenRational>(
    const GammaSequences& gs) {
    GammaTable<GoldenRational> t;
    t.lambda = gs.lambda;
    t.prime = gs.gamma_prime;
    t.dbl = gs.gamma_double;
    return t;
}

/// Parameters (nu, mu, lambda, eta) with nu > 0, |mu| > nu, lambda irrational
/// in (0,1), 0 < eta < lambda.
template <class S>
struct DynSeqParams {
    S nu, mu, lambda, eta;

    S C() const { return S(2) * mu / (mu + nu); }
    S D() const { return S(2) * mu / (mu - nu); }
};

/// ell(y) = 2y / nu, the width of the middle cone at height y.
template <class S>
S ell_of_y(const S& nu, const S& y) {
    return S(2) * y / nu;
}

enum class Branch { below, above, terminal };  // p_n < 1/C, p_n > 1/C, p_n = 1/C

template <class S>
struct DynSeqState {
    std::vector<S> y, p, upsilon;
    std::vector<int> kappa;
    std::vector<Branch> branch;  // branch taken at step n (comparing p_n with 1/C)
    bool terminated = false;     // p_n = 1/C occurred
    S C, D;
};

/// The recursion: y_0 = eta mu nu/(mu+nu); kappa_0 minimal with
/// gamma''_{kappa_0} < ell(y_0); upsilon_0 = gamma''_{kappa_0};
/// p_0 = upsilon_0/ell(y_0); then the three-branch step on p_n vs 1/C for
/// y_{n+1}, the side-dependent kappa search, the three-case upsilon rule
/// (including the integer-part case) and p_{n+1}.
template <class S>
DynSeqState<S> dynseq_compute(const DynSeqParams<S>& par, const GammaTable<S>& gamma, int terms) {
    using std::abs;
    const S zero(0), one(1);
    if (!(par.nu > zero)) throw std::domain_error("dynseq: nu must be positive");
    if (!(abs(par.mu) > par.nu)) throw std::domain_error("dynseq: |mu| > nu required");
    DynSeqState<S> st;
    st.C = par.C();
    st.D = par.D();
    const S inv_C = one / st.C;

    const S y0 = par.eta * par.mu * par.nu / (par.mu + par.nu);
    st.y.push_back(y0);
    {
        const S l0 = ell_of_y(par.nu, y0);
        int k0 = 0;
        while (!(gamma.double_at(k0) < l0)) ++k0;
        st.kappa.push_back(k0);
        st.upsilon.push_back(gamma.double_at(k0));
        st.p.push_back(st.upsilon[0] / l0);
    }

    for (int n = 0; n < terms; ++n) {
        const S& pn = st.p[n];
        const S& yn = st.y[n];
        Branch br;
        if (pn < inv_C)
            br = Branch::below;
        else if (pn > inv_C)
            br = Branch::above;
        else
            br = Branch::terminal;
        st.branch.push_back(br);

        if (br == Branch::terminal) {
            st.y.push_back(zero);
            st.kappa.push_back(st.kappa[n]);
            st.upsilon.push_back(st.upsilon[n]);
            st.p.push_back(zero);
            st.terminated = true;
            break;
        }

        const S yn1 = br == Branch::below ? (one - st.C * pn) * yn : (one - st.D * (one - pn)) * yn;
        const S ln1 = ell_of_y(par.nu, yn1);
        int kk = 0;
        S ups;
        if (br == Branch::below) {
            while (!(gamma.double_at(kk) < ln1)) ++kk;
            ups = gamma.double_at(kk);
        } else {
            while (!(gamma.prime_at(kk) < ln1)) ++kk;
            if (ln1 > one) {
                ups = one;
            } else if (ln1 > gamma.prime_at(0)) {
                const long bracket = floor_long((one - ln1) / par.lambda);
                ups = one - (S(1 + bracket)) * par.lambda;
            } else {
                ups = gamma.prime_at(kk);
            }
        }
        st.y.push_back(yn1);
        st.kappa.push_back(kk);
        st.upsilon.push_back(ups);
        st.p.push_back(br == Branch::below ? ups / ln1 : one - ups / ln1);
    }
    return st;
}

/// The three-case closed expression for y_{n+1} given y_n and the bracketing
/// error value on the active side; algebraically equal to the recursion step.
template <class S>
S y_next_closed(const DynSeqParams<S>& par, const S& y_n, const S& gamma_val) {
    const S one(1);
    const S lead = one / (one / par.nu - one / par.mu);  // (1/nu - 1/mu)^{-1}
    const S threshold = lead * gamma_val;
    if (y_n == threshold) return S(0);
    if (y_n > threshold) return y_n - threshold;
    const S lead2 = one / (one / par.nu + one / par.mu);
    return lead2 * gamma_val - ((par.mu - par.nu) / (par.mu + par.nu)) * y_n;
}

enum class MuRegime { alternating, negative_constant, positive_constant, boundary };

/// Regime of the periodic closed forms: |mu| > nu assumed. |mu| = mubar is
/// classified with the (<= mubar) constant branches and flagged as boundary.
inline MuRegime classify_mu_regime(double nu, double mu) {
    const double phi = 0.61803398874989484820458683436563811772;
    const double mubar = nu / (phi * phi * phi);
    const double amu = std::abs(mu);
    if (amu > mubar) return MuRegime::alternating;
    if (amu == mubar) return MuRegime::boundary;
    return mu < 0 ? MuRegime::negative_constant : MuRegime::positive_constant;
}

struct ClosedFormValue {
    double p = 0, ell_y = 0;
    MuRegime regime = MuRegime::alternating;
    bool defined = true;  // negative-constant forms start at n = 1
};

/// Golden-family closed forms: for |mu| > mubar, p alternates between
/// 1/(C Phi) (even n) and 1 - 1/(D Phi) (odd n) with ell(y_n) = C resp.
/// D times lambda Phi^{n+1}; for -mubar < mu < -nu, p_n = 1 - Phi/D and
/// ell(y_n) = D lambda Phi^{2n} from n = 1; for nu < mu < mubar,
/// p_n = Phi/C with ell(y_n) = C lambda Phi^{2n+1}.
ClosedFormValue dynseq_closed_form(double nu, double mu, int k, int n);

/// Exact counterpart for rational nu, mu.
std::optional<GoldenRational> dynseq_closed_form_exact_p(const GoldenRational& nu,
                                                         const GoldenRational& mu, int k, int n);

}  // namespace tce
