#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace tce {

/// Exact element a + b*Phi of the quadratic field Q(sqrt5), written on the
/// basis {1, Phi} with Phi = (sqrt5 - 1)/2, so that Phi^2 = 1 - Phi.
/// Coefficients are arbitrary-precision rationals kept in canonical form
/// (lowest terms, positive denominator) by mpq_class.
class GoldenRational {
public:
    GoldenRational() : a_(0), b_(0) {}
    GoldenRational(long n) : a_(n), b_(0) {}  // NOLINT: implicit by design
    GoldenRational(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
        a_.canonicalize();
        b_.canonicalize();
    }

    static GoldenRational phi() { return GoldenRational(mpq_class(0), mpq_class(1)); }
    static GoldenRational from_fraction(long num, long den);

    const mpq_class& unit_part() const { return a_; }
    const mpq_class& phi_part() const { return b_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    GoldenRational operator-() const { return GoldenRational(-a_, -b_); }
    GoldenRational& operator+=(const GoldenRational& o);
    GoldenRational& operator-=(const GoldenRational& o);
    GoldenRational& operator*=(const GoldenRational& o);
    GoldenRational& operator/=(const GoldenRational& o);

    /// Exact sign (-1, 0, +1), computed without floating point by comparing
    /// (2a - b)^2 against 5 b^2 with case analysis on the signs.
    int sign() const;

    /// Exact floor via interval refinement of sqrt5 with rational endpoints.
    /// Throws std::runtime_error if the hard refinement cap is hit.
    mpz_class floor() const;
    long floor_long() const;

    /// Nearest double, half-even ties, resolved by exact rational comparison
    /// against a tight two-sided enclosure of sqrt5.
    double to_double() const;

    /// Galois conjugate: Phi -> -1/Phi = -(1+Phi), i.e. a + b*Phi -> (a - b) - b*Phi.
    GoldenRational conjugate() const { return GoldenRational(a_ - b_, -b_); }

    /// Rational field norm (a + b*Phi)(a - b - b*Phi).
    mpq_class norm() const;

    /// Canonical text form "a/b + c/d*phi".
    std::string str() const;
    /// Parses "a/b + c/d*phi"; integers accepted as degenerate rationals,
    /// a bare "phi" term is allowed, either term may be omitted.
    static std::optional<GoldenRational> parse(std::string_view text);

    friend bool operator==(const GoldenRational& x, const GoldenRational& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }

private:
    mpq_class a_;  // coefficient of 1
    mpq_class b_;  // coefficient of Phi
};

GoldenRational operator+(GoldenRational x, const GoldenRational& y);
GoldenRational operator-(GoldenRational x, const GoldenRational& y);
GoldenRational operator*(const GoldenRational& x, const GoldenRational& y);
GoldenRational operator/(const GoldenRational& x, const GoldenRational& y);

inline bool operator!=(const GoldenRational& x, const GoldenRational& y) { return !(x == y); }
inline bool operator<(const GoldenRational& x, const GoldenRational& y) { return (x - y).sign() < 0; }
inline bool operator>(const GoldenRational& x, const GoldenRational& y) { return (x - y).sign() > 0; }
inline bool operator<=(const GoldenRational& x, const GoldenRational& y) { return (x - y).sign() <= 0; }
inline bool operator>=(const GoldenRational& x, const GoldenRational& y) { return (x - y).sign() >= 0; }

/// x^n for integer n (negative n inverts; requires x != 0 then).
GoldenRational pow(const GoldenRational& x, long n);

GoldenRational abs(const GoldenRational& x);

std::ostream& operator<<(std::ostream& os, const GoldenRational& x);

// Scalar helpers shared by code generic over {double, GoldenRational}.
inline double to_double(double x) { return x; }
inline double to_double(const GoldenRational& x) { return x.to_double(); }
long floor_long(double x);
inline long floor_long(const GoldenRational& x) { return x.floor_long(); }

}  // namespace tce
