#ifndef SNT_NUMERIC_HPP
#define SNT_NUMERIC_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace snt {

using cplx = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846264338327950288;
inline constexpr double TWO_PI = 2.0 * PI;
inline constexpr double EULER_GAMMA = 0.57721566490153286060651209008240243;

/// Compensated (Kahan) accumulator.  Keeps the low-order bits that a plain
/// sum of many small terms would drop.
class kahan {
    double s_ = 0.0, c_ = 0.0;

public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    kahan& operator+=(double x) {
        add(x);
        return *this;
    }
    double sum() const { return s_; }
};

/// Kahan accumulator over complex values.
class kahan_cplx {
    kahan re_, im_;

public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx sum() const { return {re_.sum(), im_.sum()}; }
};

/// sin(pi*x) with the argument reduced in exact double arithmetic, so the
/// result is exactly zero at integers and keeps full accuracy at large |x|.
inline double sinpi(double x) {
    double r = std::remainder(x, 2.0);  // r in [-1, 1], exact
    double ar = std::abs(r);
    double sign = r < 0 ? -1.0 : 1.0;
    if (ar > 0.5) {
        ar = 1.0 - ar;  // exact: both representable
    }
    return sign * std::sin(PI * ar);
}

/// cos(pi*x), exactly zero at half-integers.
inline double cospi(double x) {
    double r = std::remainder(std::abs(x), 2.0);
    r = std::abs(r);            // r in [0, 1]
    double half = r - 0.5;      // exact
    // cos(pi r) = -sin(pi (r - 1/2)); reuse the reduced sine
    double s = std::sin(PI * (std::abs(half) > 0.5 ? 1.0 - std::abs(half)
                                                   : std::abs(half)));
    return half > 0 ? -s : s;
}

/// sin(pi*z) for complex z, via the reduced real part.
inline cplx sinpi(cplx z) {
    double x = z.real(), y = z.imag();
    if (y == 0.0) return {sinpi(x), 0.0};
    double r = std::remainder(x, 2.0);
    // sin(pi(r + iy)) = sin(pi r)cosh(pi y) + i cos(pi r)sinh(pi y)
    return {sinpi(r) * std::cosh(PI * y), cospi(r) * std::sinh(PI * y)};
}

inline cplx cospi(cplx z) {
    double x = z.real(), y = z.imag();
    if (y == 0.0) return {cospi(x), 0.0};
    double r = std::remainder(x, 2.0);
    return {cospi(r) * std::cosh(PI * y), -sinpi(r) * std::sinh(PI * y)};
}

/// n! as a double; exact for n <= 22.
inline double factorial(int n) {
    static const auto table = [] {
        std::array<double, 171> t{};
        t[0] = 1.0;
        for (int i = 1; i < 171; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return n >= 0 && n < 171 ? table[n]
                             : std::numeric_limits<double>::infinity();
}

/// Falling factorial n!/(n-j)! = n(n-1)...(n-j+1).
inline double falling(int n, int j) {
    double p = 1.0;
    for (int i = 0; i < j; ++i) p *= (n - i);
    return p;
}

/// Bernoulli numbers B_2, B_4, ..., B_24 (index k holds B_{2k}).
inline constexpr std::array<double, 13> BERNOULLI_EVEN = {
    1.0,  // unused slot for B_0
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
};

/// exp(-a) * sum_{i=0}^{p} a^i/i!, the truncated exponential series.
/// Appears in closed forms of integrals of sigma^p e^{-a sigma}.
inline double exp_partial_sum(double a, int p) {
    double term = 1.0, s = 1.0;
    for (int i = 1; i <= p; ++i) {
        term *= a / i;
        s += term;
    }
    return std::exp(-a) * s;
}

/// integral over [1, inf) of u^p e^{-a u} du  =  p! e^{-a}/a^{p+1} * sum_{i<=p} a^i/i!
inline double int_up_exp_tail(double a, int p) {
    return factorial(p) / std::pow(a, p + 1) * exp_partial_sum(a, p);
}

/// C2-smooth step: 0 for u <= 0, 1 for u >= 1, quintic blend between.
inline double smoothstep(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

/// antiderivative helper: integral of u^j log|u| du = u^{j+1}(log|u|/(j+1) - 1/(j+1)^2)
inline double int_pow_log(double u, int j) {
    if (u == 0.0) return 0.0;
    double p = std::pow(u, j + 1);
    return p * (std::log(std::abs(u)) / (j + 1) - 1.0 / ((j + 1.0) * (j + 1.0)));
}

/// binomial coefficient as a double
inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace snt

#endif
