#ifndef SNT_SPECIALFN_HPP
#define SNT_SPECIALFN_HPP

#include <cmath>
#include <string>

#include "snt/errors.hpp"
#include "snt/numeric.hpp"
#include "snt/quad.hpp"

namespace snt {

/// The kernel family f_n.  f_0(x) = arctan(1/x) - x/(1+x^2) with f_0(0) := 0
/// (midpoint of the jump).  Odd-index kernels are even, nonnegative, and decay
/// like x^-2; even-index kernels are odd functions decaying like x^-3.  Each
/// f_n is of class C^{n-1}.  Half-line integrals are exact:
///   int_0^inf f_{2m+1} = pi/(2(2m+1)(2m+2)),   int_0^inf f_{2m} = 1/(2m+1)^2
/// (the second via int f_{2m} = -f_{2m+1}' and f_{2m+1}(0) = 1/(2m+1)^2).
///
/// Two evaluation regimes: closed arctan-polynomial form for small |x| and a
/// convergent inverse-power series beyond an order-dependent switch point.
/// The closed form cancels catastrophically as |x|^{2m} grows against a
/// result of size ~x^-2, so everything runs in long double and the switch
/// moves toward 1 as n grows (rule calibrated against 40-digit references;
/// worst case ~2e-14 relative at the switch, series side ~1e-16).

enum class kernel_regime { closed_form, tail_series };

struct kernel_value {
    double value;
    kernel_regime regime;
    int terms;  // series terms consumed (0 for closed form)
};

namespace detail {

using ldbl = long double;

inline constexpr int KERNEL_MAX_TERMS = 2000;
inline constexpr ldbl KERNEL_TERM_EPS = 1e-19L;

inline double kernel_switch(int n) {
    if (n <= 9) return 2.0;
    if (n <= 15) return 1.6;
    if (n <= 23) return 1.2;
    if (n <= 35) return 1.05;
    return 1.02;
}

inline ldbl pow_int(ldbl x, int p) {
    ldbl r = 1.0L;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

// closed form for odd n = 2m+1:
//   (2m+1) f(x) = (-1)^{m+1} x^{2m+1} arctan(1/x)
//                 + sum_{k=0}^{m} (-1)^{m-k} x^{2m-2k} / (2k+1)
inline double f_odd_closed(int m, double axd) {
    ldbl ax = axd;
    ldbl at = ax > 0 ? std::atan(1.0L / ax) : 0.0L;
    ldbl x2 = ax * ax;
    // Horner with k ascending: the k = m term is the constant, earlier terms
    // pick up one factor of x2 per remaining iteration
    ldbl poly = 0.0L;
    for (int k = 0; k <= m; ++k) {
        int sign = ((m - k) % 2 == 0) ? 1 : -1;
        poly = poly * x2 + (ldbl)sign / (2 * k + 1);
    }
    ldbl s = poly;
    if (ax > 0) {
        ldbl sign = (m % 2 == 0) ? -1.0L : 1.0L;  // (-1)^{m+1}
        s += sign * pow_int(ax, 2 * m + 1) * at;
    }
    return (double)(s / (2 * m + 1));
}

// closed form for even n = 2m:
//   f(x) = (-1)^m x^{2m} arctan(1/x)
//          + sum_{k=0}^{m-1} (-1)^{m-k+1} x^{2m-2k-1}/(2k+1)
//          - x / ((2m+1)(1+x^2))
inline double f_even_closed(int m, double axd) {
    ldbl ax = axd;
    ldbl at = std::atan(1.0L / ax);
    ldbl x2 = ax * ax;
    ldbl sign_m = (m % 2 == 0) ? 1.0L : -1.0L;
    ldbl s = sign_m * pow_int(ax, 2 * m) * at;
    ldbl poly = 0.0L;
    for (int k = 0; k <= m - 1; ++k) {
        int sign = ((m - k + 1) % 2 == 0) ? 1 : -1;
        poly = poly * x2 + (ldbl)sign / (2 * k + 1);
    }
    if (m >= 1) s += poly * ax;  // common factor x^{2m-2k-1}, lowest power x
    s -= ax / ((2 * m + 1) * (1.0L + x2));
    return (double)s;
}

// tail series for odd n = 2m+1, |x| > 1:
//   f(x) = 1/(2m+1) sum_{k>=1} (-1)^{k-1} / ((2k+2m+1) x^{2k})
inline kernel_value f_odd_tail(int m, double axd) {
    ldbl ax = axd;
    ldbl ix2 = 1.0L / (ax * ax);
    ldbl p = ix2, acc = 0.0L;
    int k = 1;
    for (; k <= KERNEL_MAX_TERMS; ++k) {
        acc += (k % 2 ? p : -p) / (2 * k + 2 * m + 1);
        ldbl next = p * ix2 / (2 * k + 2 * m + 3);
        if (next < KERNEL_TERM_EPS * std::abs(acc)) break;
        p *= ix2;
    }
    return {(double)(acc / (2 * m + 1)), kernel_regime::tail_series, k};
}

// tail series for even n = 2m, |x| > 1:
//   f(x) = 1/(2m+1) sum_{j>=1} (-1)^{j-1} (2j) / ((2j+2m+1) x^{2j+1})
// obtained by integrating the odd-order derivative series; leading term
// 2/((2m+1)(2m+3) x^3).
inline kernel_value f_even_tail(int m, double axd) {
    ldbl ax = axd;
    ldbl ix2 = 1.0L / (ax * ax);
    ldbl p = ix2 / ax;  // x^{-3}
    ldbl acc = 0.0L;
    int j = 1;
    for (; j <= KERNEL_MAX_TERMS; ++j) {
        acc += (j % 2 ? p : -p) * (2 * j) / (2 * j + 2 * m + 1);
        ldbl next = (2 * j + 2) * p * ix2 / (2 * j + 2 * m + 3);
        if (next < KERNEL_TERM_EPS * std::abs(acc)) break;
        p *= ix2;
    }
    return {(double)(acc / (2 * m + 1)), kernel_regime::tail_series, j};
}

// derivative of the odd kernel, closed form:
//   (2m+1) f'(x) = (-1)^{m+1} [ (2m+1) x^{2m} arctan(1/x) - x^{2m+1}/(1+x^2) ]
//                  + sum_{k=0}^{m-1} (-1)^{m-k} (2m-2k) x^{2m-2k-1}/(2k+1)
inline double fp_odd_closed(int m, double axd) {
    ldbl ax = axd;
    ldbl at = std::atan(1.0L / ax);
    ldbl x2 = ax * ax;
    ldbl sign = (m % 2 == 0) ? -1.0L : 1.0L;  // (-1)^{m+1}
    ldbl s = sign * ((2 * m + 1) * pow_int(ax, 2 * m) * at -
                     pow_int(ax, 2 * m + 1) / (1.0L + x2));
    ldbl poly = 0.0L;
    for (int k = 0; k <= m - 1; ++k) {
        int sg = ((m - k) % 2 == 0) ? 1 : -1;
        poly = poly * x2 + (ldbl)(sg * (2 * m - 2 * k)) / (2 * k + 1);
    }
    if (m >= 1) s += poly * ax;
    return (double)(s / (2 * m + 1));
}

// derivative tail series, |x| > 1:
//   f'(x) = 1/(2m+1) sum_{k>=1} (-1)^k (2k) / ((2k+2m+1) x^{2k+1})
inline double fp_odd_tail(int m, double axd) {
    ldbl ax = axd;
    ldbl ix2 = 1.0L / (ax * ax);
    ldbl p = ix2 / ax;
    ldbl acc = 0.0L;
    for (int k = 1; k <= KERNEL_MAX_TERMS; ++k) {
        acc += (k % 2 ? -p : p) * (2 * k) / (2 * k + 2 * m + 1);
        ldbl next = (2 * k + 2) * p * ix2 / (2 * k + 2 * m + 3);
        if (next < KERNEL_TERM_EPS * std::abs(acc)) break;
        p *= ix2;
    }
    return (double)(acc / (2 * m + 1));
}

inline void check_order(int n) {
    if (n < 0 || n > 60)
        throw domain_error("kernel order n out of range: " + std::to_string(n));
}

}  // namespace detail

/// f_n(x) with regime bookkeeping.
inline kernel_value eval_f_detail(int n, double x) {
    detail::check_order(n);
    double ax = std::abs(x);
    bool odd = n % 2 != 0;
    int m = n / 2;
    if (ax == 0.0) {
        // odd: only the k=m polynomial term survives; even: odd function,
        // and for n=0 the jump is symmetrized to 0
        double v = odd ? 1.0 / ((2.0 * m + 1) * (2.0 * m + 1)) : 0.0;
        return {v, kernel_regime::closed_form, 0};
    }
    double sgn = (!odd && x < 0.0) ? -1.0 : 1.0;  // even index: odd function
    if (ax <= detail::kernel_switch(n)) {
        double v = odd ? detail::f_odd_closed(m, ax) : detail::f_even_closed(m, ax);
        return {sgn * v, kernel_regime::closed_form, 0};
    }
    kernel_value kv = odd ? detail::f_odd_tail(m, ax) : detail::f_even_tail(m, ax);
    kv.value *= sgn;
    return kv;
}

inline double eval_f(int n, double x) { return eval_f_detail(n, x).value; }

/// f_n'(x) for odd n only.  The even kernels are one degree less smooth and
/// their derivative is not needed; asking for it is a usage error.
inline double eval_f_prime(int n, double x) {
    detail::check_order(n);
    if (n % 2 == 0)
        throw domain_error("eval_f_prime requires odd order n");
    int m = n / 2;
    double ax = std::abs(x);
    double sgn = x < 0 ? -1.0 : 1.0;  // derivative of an even function is odd
    if (ax == 0.0) return 0.0;
    double v = ax <= detail::kernel_switch(n) ? detail::fp_odd_closed(m, ax)
                                              : detail::fp_odd_tail(m, ax);
    return sgn * v;
}

/// integral over R of f_{2m+1} = pi/((2m+1)(2m+2)).
inline double integral_f_odd(int m) {
    if (m < 0) throw domain_error("integral_f_odd: m must be >= 0");
    return PI / ((2.0 * m + 1) * (2.0 * m + 2));
}

/// Independent oracle route for the odd kernels:
///   f_{2m+1}(x) = 1/2 integral_0^1 sigma^{2m} log((1+x^2)/(sigma^2+x^2)) dsigma
/// evaluated by adaptive quadrature (integrable log singularity at
/// sigma = 0 when x = 0).
inline double eval_f_integralform(int m, double x,
                                  const quad_options& opt = {}) {
    if (m < 0) throw domain_error("eval_f_integralform: m must be >= 0");
    double x2 = x * x;
    auto integrand = [&](double s) {
        return std::pow(s, 2 * m) * std::log((1.0 + x2) / (s * s + x2));
    };
    auto r = integrate(integrand, 0.0, 1.0, opt);
    if (!r.converged)
        throw convergence_error("kernel integral form did not converge",
                                r.error);
    return 0.5 * r.value;
}

}  // namespace snt

#endif
