#pragma once

#include <cmath>
#include <limits>

namespace tce {

/// Compensated double-double value (~106-bit mantissa), used as the float
/// backend where a plain double loses too much ground to cancellation.
/// Standard error-free transformations (two_sum / FMA two_prod).
class DoubleDouble {
public:
    constexpr DoubleDouble() : hi_(0), lo_(0) {}
    constexpr DoubleDouble(double x) : hi_(x), lo_(0) {}  // NOLINT: implicit by design
    constexpr DoubleDouble(long x) : hi_(static_cast<double>(x)), lo_(0) {}  // NOLINT
    constexpr DoubleDouble(int x) : hi_(x), lo_(0) {}  // NOLINT

    double hi() const { return hi_; }
    double lo() const { return lo_; }
    double to_double() const { return hi_ + lo_; }

    static DoubleDouble sqrt5() {
        const double r = std::sqrt(5.0);
        // One Newton step x + (5 - x^2)/(2x) carried in double-double.
        DoubleDouble x(r);
        DoubleDouble corr = (DoubleDouble(5.0) - x * x) / DoubleDouble(2 * r);
        return x + corr;
    }
    static DoubleDouble phi() { return (sqrt5() - DoubleDouble(1.0)) / DoubleDouble(2.0); }

    DoubleDouble operator-() const { return raw(-hi_, -lo_); }

    friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
        double s, e;
        two_sum(a.hi_, b.hi_, s, e);
        e += a.lo_ + b.lo_;
        return renorm(s, e);
    }
    friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }
    friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
        double p, e;
        two_prod(a.hi_, b.hi_, p, e);
        e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
        return renorm(p, e);
    }
    friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
        const double q1 = a.hi_ / b.hi_;
        DoubleDouble r = a - DoubleDouble(q1) * b;
        const double q2 = r.hi_ / b.hi_;
        r = r - DoubleDouble(q2) * b;
        const double q3 = r.hi_ / b.hi_;
        DoubleDouble q = renorm(q1, q2);
        return q + DoubleDouble(q3);
    }

    DoubleDouble& operator+=(const DoubleDouble& o) { return *this = *this + o; }
    DoubleDouble& operator-=(const DoubleDouble& o) { return *this = *this - o; }
    DoubleDouble& operator*=(const DoubleDouble& o) { return *this = *this * o; }
    DoubleDouble& operator/=(const DoubleDouble& o) { return *this = *this / o; }

    friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
        return a.hi_ == b.hi_ && a.lo_ == b.lo_;
    }
    friend bool operator!=(const DoubleDouble& a, const DoubleDouble& b) { return !(a == b); }
    friend bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
        return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_);
    }
    friend bool operator>(const DoubleDouble& a, const DoubleDouble& b) { return b < a; }
    friend bool operator<=(const DoubleDouble& a, const DoubleDouble& b) { return !(b < a); }
    friend bool operator>=(const DoubleDouble& a, const DoubleDouble& b) { return !(a < b); }

    friend DoubleDouble floor(const DoubleDouble& a) {
        const double fh = std::floor(a.hi_);
        if (fh != a.hi_) return DoubleDouble(fh);
        return renorm(fh, std::floor(a.lo_));
    }

private:
    static DoubleDouble raw(double h, double l) {
        DoubleDouble r;
        r.hi_ = h;
        r.lo_ = l;
        return r;
    }
    static void two_sum(double a, double b, double& s, double& e) {
        s = a + b;
        const double bb = s - a;
        e = (a - (s - bb)) + (b - bb);
    }
    static void two_prod(double a, double b, double& p, double& e) {
        p = a * b;
        e = std::fma(a, b, -p);
    }
    static DoubleDouble renorm(double h, double l) {
        double s, e;
        two_sum(h, l, s, e);
        return raw(s, e);
    }

    double hi_, lo_;
};

inline double to_double(const DoubleDouble& x) { return x.to_double(); }
inline long floor_long(const DoubleDouble& x) { return static_cast<long>(floor(x).to_double()); }
inline DoubleDouble abs(const DoubleDouble& x) { return x < DoubleDouble(0.0) ? -x : x; }

}  // namespace tce
