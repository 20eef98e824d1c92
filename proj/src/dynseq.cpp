#include "tce/dynseq.hpp"

namespace tce {

namespace {
constexpr double kPhi = 0.61803398874989484820458683436563811772;
}

ClosedFormValue dynseq_closed_form(double nu, double mu, int k, int n) {
    if (k < 1) throw std::domain_error("dynseq_closed_form: k >= 1 required");
    if (!(nu > 0) || !(std::abs(mu) >= nu))
        throw std::domain_error("dynseq_closed_form: need nu > 0 and |mu| >= nu");
    const double lambda = 1.0 / (k + kPhi);
    const double C = 2 * mu / (mu + nu);
    const double D = 2 * mu / (mu - nu);
    ClosedFormValue out;
    out.regime = classify_mu_regime(nu, mu);
    switch (out.regime) {
        case MuRegime::alternating:
            if (n % 2 == 0) {
                out.p = 1.0 / (C * kPhi);
                out.ell_y = C * lambda * std::pow(kPhi, n + 1);
            } else {
                out.p = 1.0 - 1.0 / (D * kPhi);
                out.ell_y = D * lambda * std::pow(kPhi, n + 1);
            }
            break;
        case MuRegime::negative_constant:
            if (n < 1) {
                out.defined = false;
                break;
            }
            out.p = 1.0 - kPhi / D;
            out.ell_y = D * lambda * std::pow(kPhi, 2 * n);
            break;
        case MuRegime::positive_constant:
            out.p = kPhi / C;
            out.ell_y = C * lambda * std::pow(kPhi, 2 * n + 1);
            break;
        case MuRegime::boundary:
            // |mu| = mubar sits on the statement's "<=" side; report the
            // constant-branch value and let the caller see the flag.
            if (n < 1 && mu < 0) {
                out.defined = false;
                break;
            }
            if (mu < 0) {
                out.p = 1.0 - kPhi / D;
                out.ell_y = D * lambda * std::pow(kPhi, 2 * n);
            } else {
                out.p = kPhi / C;
                out.ell_y = C * lambda * std::pow(kPhi, 2 * n + 1);
            }
            break;
    }
    return out;
}

std::optional<GoldenRational> dynseq_closed_form_exact_p(const GoldenRational& nu,
                                                         const GoldenRational& mu, int k, int n) {
    (void)k;  // the ratio closed forms involve only the conjugate exponents and phi
    const GoldenRational phi = GoldenRational::phi();
    const GoldenRational C = GoldenRational(2) * mu / (mu + nu);
    const GoldenRational D = GoldenRational(2) * mu / (mu - nu);
    const GoldenRational mubar = nu / pow(phi, 3);
    const GoldenRational amu = abs(mu);
    if (amu > mubar) {
        if (n % 2 == 0) return GoldenRational(1) / (C * phi);
        return GoldenRational(1) - GoldenRational(1) / (D * phi);
    }
    if (mu.sign() < 0) {
        if (n < 1) return std::nullopt;
        return GoldenRational(1) - phi / D;
    }
    return phi / C;
}

}  // namespace tce
