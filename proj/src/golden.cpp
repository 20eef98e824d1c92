#include "tce/golden.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tce {

namespace {

// Two-sided rational enclosure lo/2^bits <= sqrt5 <= (lo+1)/2^bits.
struct Sqrt5Enclosure {
    mpq_class lo, hi;
};

Sqrt5Enclosure sqrt5_enclosure(unsigned bits) {
    mpz_class scaled = 5;
    scaled <<= 2 * bits;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());  // floor(sqrt(5) * 2^bits)
    mpz_class denom = 1;
    denom <<= bits;
    return {mpq_class(root, denom), mpq_class(root + 1, denom)};
}

// Enclosure of a + b*Phi, Phi = (sqrt5 - 1)/2.
void value_enclosure(const mpq_class& a, const mpq_class& b, unsigned bits, mpq_class& lo,
                     mpq_class& hi) {
    const Sqrt5Enclosure s = sqrt5_enclosure(bits);
    const mpq_class phi_lo = (s.lo - 1) / 2;
    const mpq_class phi_hi = (s.hi - 1) / 2;
    if (b >= 0) {
        lo = a + b * phi_lo;
        hi = a + b * phi_hi;
    } else {
        lo = a + b * phi_hi;
        hi = a + b * phi_lo;
    }
}

constexpr unsigned kMaxRefineBits = 1u << 16;

}  // namespace

GoldenRational GoldenRational::from_fraction(long num, long den) {
    if (den == 0) throw std::domain_error("GoldenRational: zero denominator");
    return GoldenRational(mpq_class(num, den), mpq_class(0));
}

GoldenRational& GoldenRational::operator+=(const GoldenRational& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

GoldenRational& GoldenRational::operator-=(const GoldenRational& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

GoldenRational& GoldenRational::operator*=(const GoldenRational& o) {
    // (a1 + b1 P)(a2 + b2 P) with P^2 = 1 - P.
    const mpq_class cross = a_ * o.b_ + b_ * o.a_;
    const mpq_class bb = b_ * o.b_;
    a_ = a_ * o.a_ + bb;
    b_ = cross - bb;
    return *this;
}

mpq_class GoldenRational::norm() const {
    // (a + bP)(a - b - bP) = a^2 - ab - b^2.
    return a_ * a_ - a_ * b_ - b_ * b_;
}

GoldenRational& GoldenRational::operator/=(const GoldenRational& o) {
    const mpq_class n = o.norm();
    if (n == 0) throw std::domain_error("GoldenRational: division by zero");
    GoldenRational inv = o.conjugate();
    inv.a_ /= n;
    inv.b_ /= n;
    return *this *= inv;
}

GoldenRational operator+(GoldenRational x, const GoldenRational& y) { return x += y; }
GoldenRational operator-(GoldenRational x, const GoldenRational& y) { return x -= y; }
GoldenRational operator*(const GoldenRational& x, const GoldenRational& y) {
    GoldenRational r = x;
    return r *= y;
}
GoldenRational operator/(const GoldenRational& x, const GoldenRational& y) {
    GoldenRational r = x;
    return r /= y;
}

int GoldenRational::sign() const {
    // a + b*Phi = ((2a - b) + b*sqrt5) / 2.
    const mpq_class u = 2 * a_ - b_;
    const int su = sgn(u);
    const int sv = sgn(b_);
    if (sv == 0) return su;
    if (sv > 0) {
        if (su >= 0) return 1;
        const int c = cmp(5 * b_ * b_, u * u);
        return c > 0 ? 1 : (c < 0 ? -1 : 0);
    }
    if (su <= 0) return -1;
    const int c = cmp(u * u, 5 * b_ * b_);
    return c > 0 ? 1 : (c < 0 ? -1 : 0);
}

mpz_class GoldenRational::floor() const {
    mpz_class q;
    if (b_ == 0) {
        mpz_fdiv_q(q.get_mpz_t(), a_.get_num_mpz_t(), a_.get_den_mpz_t());
        return q;
    }
    // b != 0 makes the value irrational, so the floor becomes unambiguous
    // once the enclosure is narrow enough.
    for (unsigned bits = 32; bits <= kMaxRefineBits; bits *= 2) {
        mpq_class lo, hi;
        value_enclosure(a_, b_, bits, lo, hi);
        mpz_class flo, fhi;
        mpz_fdiv_q(flo.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
        mpz_fdiv_q(fhi.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
        if (flo == fhi) return flo;
    }
    throw std::runtime_error("GoldenRational::floor: refinement cap exceeded");
}

long GoldenRational::floor_long() const {
    const mpz_class f = floor();
    if (!f.fits_slong_p()) throw std::overflow_error("GoldenRational::floor_long: out of range");
    return f.get_si();
}

namespace {

// Nearest double to an exact rational, chosen by exact comparison among the
// truncated conversion and its two neighbours.
double nearest_double(const mpq_class& q) {
    const double guess = q.get_d();  // truncated toward zero, within 1 ulp
    if (!std::isfinite(guess)) return guess;
    double best = guess;
    mpq_class best_err = ::abs(mpq_class(guess) - q);
    for (const double cand : {std::nextafter(guess, -INFINITY), std::nextafter(guess, INFINITY)}) {
        if (!std::isfinite(cand)) continue;
        const mpq_class err = ::abs(mpq_class(cand) - q);
        if (err < best_err) {
            best = cand;
            best_err = err;
        }
    }
    return best;
}

}  // namespace

double GoldenRational::to_double() const {
    if (b_ == 0) return nearest_double(a_);
    // b != 0 makes the value irrational: both enclosure ends eventually round
    // to the same double, which is then the correctly rounded result.
    for (unsigned bits = 128; bits <= kMaxRefineBits; bits *= 2) {
        mpq_class lo, hi;
        value_enclosure(a_, b_, bits, lo, hi);
        const double dlo = nearest_double(lo);
        const double dhi = nearest_double(hi);
        if (dlo == dhi) return dlo;
    }
    throw std::runtime_error("GoldenRational::to_double: refinement cap exceeded");
}

GoldenRational pow(const GoldenRational& x, long n) {
    if (n < 0) return pow(GoldenRational(1) / x, -n);
    GoldenRational result(1);
    GoldenRational base = x;
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

GoldenRational abs(const GoldenRational& x) { return x.sign() < 0 ? -x : x; }

long floor_long(double x) { return static_cast<long>(std::floor(x)); }

namespace {

std::string rational_str(const mpq_class& q) {
    std::ostringstream os;
    os << q.get_num() << "/" << q.get_den();
    return os.str();
}

}  // namespace

std::string GoldenRational::str() const {
    std::string out = rational_str(a_);
    out += b_ >= 0 ? " + " : " - ";
    out += rational_str(::abs(b_));
    out += "*phi";
    return out;
}

std::ostream& operator<<(std::ostream& os, const GoldenRational& x) { return os << x.str(); }

namespace {

void skip_ws(std::string_view& s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
}

// Parses [sign] digits [/ digits]; returns false on malformed input.
bool parse_rational(std::string_view& s, mpq_class& out) {
    skip_ws(s);
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    const size_t digits_begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits_begin) return false;
    if (i < s.size() && s[i] == '/') {
        ++i;
        const size_t den_begin = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == den_begin) return false;
    }
    const std::string token(s.substr(0, i));
    if (mpq_set_str(out.get_mpq_t(), token.c_str(), 10) != 0) return false;
    if (out.get_den() == 0) return false;
    out.canonicalize();
    s.remove_prefix(i);
    return true;
}

bool consume(std::string_view& s, std::string_view word) {
    skip_ws(s);
    if (s.substr(0, word.size()) != word) return false;
    s.remove_prefix(word.size());
    return true;
}

}  // namespace

std::optional<GoldenRational> GoldenRational::parse(std::string_view text) {
    std::string_view s = text;
    mpq_class a(0), b(0);
    skip_ws(s);
    if (s.empty()) return std::nullopt;

    auto parse_term = [&](bool leading) -> bool {
        skip_ws(s);
        int sign = 1;
        if (leading) {
            if (consume(s, "-")) {
                sign = -1;
            } else {
                (void)consume(s, "+");
            }
        } else {
            if (consume(s, "+")) {
                sign = 1;
            } else if (consume(s, "-")) {
                sign = -1;
            } else {
                return false;
            }
        }
        skip_ws(s);
        // Bare "phi" term.
        if (!s.empty() && (s.front() == 'p' || s.front() == 'P')) {
            if (!consume(s, "phi") && !consume(s, "Phi")) return false;
            b += sign;
            return true;
        }
        mpq_class coeff;
        if (!parse_rational(s, coeff)) return false;
        skip_ws(s);
        if (!s.empty() && s.front() == '*') {
            s.remove_prefix(1);
            if (!consume(s, "phi") && !consume(s, "Phi")) return false;
            b += sign * coeff;
        } else {
            a += sign * coeff;
        }
        return true;
    };

    if (!parse_term(true)) return std::nullopt;
    skip_ws(s);
    while (!s.empty()) {
        if (!parse_term(false)) return std::nullopt;
        skip_ws(s);
    }
    return GoldenRational(a, b);
}

}  // namespace tce
