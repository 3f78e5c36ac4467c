#ifndef SNT_ARGMOMENTS_HPP
#define SNT_ARGMOMENTS_HPP

/// The iterated argument moments S_n(t), computed two independent ways: the
/// sigma-integral of (sigma-1/2)^n zeta'/zeta along Re s in [1/2, inf), and
/// the kernel sum over zero ordinates.  The two differ by the representation
/// lemma's additive O(1), which is surfaced as a measured discrepancy.

#include <cmath>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "quad.hpp"
#include "specialfn.hpp"
#include "zerodata.hpp"
#include "zetakernel.hpp"

namespace snt {

enum class moment_method { integral, zero_sum };

struct moment_value {
    int n = 0;
    double t = 0.0;
    double value = 0.0;
    moment_method method = moment_method::integral;
    double error_budget = 0.0;
};

/// Prime-power cutoff for the closed-form [2, inf) piece of the
/// sigma-integral; per-term tail contribution ~ log K / K^2.
inline constexpr size_t SN_PRIME_CUTOFF = 100000;

/// Exclusion radius around zero ordinates for the n <= 1 integrals, whose
/// integrands are singular on the critical line at the zeros.
inline constexpr double SN_ORDINATE_GUARD = 1e-6;

namespace detail {

// int_2^inf (sigma-1/2)^n k^-sigma dsigma
//   = k^-2 sum_{j<=n} n!/(n-j)! (3/2)^{n-j} / (log k)^{j+1}
inline double sigma_tail_weight(int n, double logk) {
    double pref = 1.0;  // n!/(n-j)!
    double pw = std::pow(1.5, n);
    double lp = logk;
    kahan acc;
    for (int j = 0; j <= n; ++j) {
        acc.add(pref * pw / lp);
        pref *= n - j;
        pw /= 1.5;
        lp *= logk;
    }
    return acc.sum();
}

inline cplx i_power(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace detail

/// S_n(t) = -(1/pi) Im{ i^n/n! int_{1/2}^inf (sigma-1/2)^n z'/z dsigma }.
/// The strip [1/2, 2] goes by adaptive quadrature; [2, inf) collapses to an
/// absolutely convergent prime-power sum with a closed-form sigma weight.
inline moment_value s_n_integral(int n, double t, const quad_options& q = {}) {
    if (n < 0) throw domain_error("s_n_integral: n >= 0 required");
    if (!(t > 0.0)) throw domain_error("s_n_integral: t > 0 required");
    auto strip = [&](double sigma) -> cplx {
        return std::pow(sigma - 0.5, n) * log_deriv_zeta(cplx(sigma, t));
    };
    auto low = integrate(strip, 0.5, 2.0, q);
    if (!low.converged)
        throw convergence_error("s_n_integral: strip quadrature", low.error);

    const auto& vm = detail::vm_cache(SN_PRIME_CUTOFF);
    kahan_cplx acc;
    for (size_t k = 2; k <= SN_PRIME_CUTOFF; ++k) {
        if (vm.lam[k] == 0.0) continue;
        double lk = std::log((double)k);
        double w = vm.lam[k] * detail::sigma_tail_weight(n, lk) / double(k * k);
        double ph = t * lk;
        acc.add(cplx(-w * std::cos(ph), w * std::sin(ph)));
    }
    // Lambda(k) <= log k and the weight is decreasing beyond the cutoff:
    // sum_{k>K} log k k^-2 <= (log K + 1)/K
    double lK = std::log((double)SN_PRIME_CUTOFF);
    double tail = detail::sigma_tail_weight(n, lK) * (lK + 1.0) / SN_PRIME_CUTOFF;

    cplx total = low.value + acc.sum();
    double nf = factorial(n);
    double value = -(detail::i_power(n) * total).imag() / (PI * nf);
    double budget = (low.error + tail) / (PI * nf);
    return {n, t, value, moment_method::integral, budget};
}

/// Zero-sum main term of the representation lemma.  Even n = 2m:
/// (-1)^m/(pi (2m)!) sum f_{2m}(t-gamma); odd n = 2m+1 adds the log t term
/// and flips the sum's sign.  The lemma's additive O(1) is NOT included.
inline moment_value s_n_zero_sum(int n, double t, const zero_table& table,
                                 double window) {
    if (n < 1) throw domain_error("s_n_zero_sum: n >= 1 required");
    if (!(t >= 2.0)) throw domain_error("s_n_zero_sum: t >= 2 required");
    auto win = zeros_near(table, t, window);
    int m = n / 2;
    double sign = (m % 2) ? -1.0 : 1.0;
    kahan acc;
    for (size_t i = win.first; i < win.last; ++i)
        acc.add(eval_f(n, t - table.gamma[i]));
    double pref = sign / (PI * factorial(2 * m));
    double value = (n % 2 == 0)
                       ? pref * acc.sum()
                       : sign * std::log(t) / (TWO_PI * factorial(2 * m + 2)) -
                             pref * acc.sum();
    return {n, t, value, moment_method::zero_sum,
            std::abs(pref) * win.tail_bound};
}

/// |central difference of S_n - S_{n-1}| at step h; O(h^2) by the defining
/// relation S_n' = S_{n-1}.
inline double derivative_chain_check(int n, double t, double h,
                                     const quad_options& q = {}) {
    if (n < 2) throw domain_error("derivative_chain_check: n >= 2 required");
    if (!(h > 0.0)) throw domain_error("derivative_chain_check: h > 0");
    double up = s_n_integral(n, t + h, q).value;
    double dn = s_n_integral(n, t - h, q).value;
    double mid = s_n_integral(n - 1, t, q).value;
    return std::abs((up - dn) / (2.0 * h) - mid);
}

struct envelope_row {
    double t = 0.0;
    double value = 0.0;  // zero-sum main term
    double lower = 0.0, upper = 0.0;
    double ratio = 0.0;  // value against the binding envelope side
};

/// Zero-sum values against the asymptotic band.  The band's o(1) is not
/// explicit, so the slack defaults to 1 x logloglog/loglog (calibrated at
/// desk heights) and the only asserted property downstream is ratio < 5.
inline std::vector<envelope_row> envelope_report(int n,
                                                 const std::vector<double>& grid,
                                                 const zero_table& table,
                                                 double slack = 1.0) {
    std::vector<envelope_row> rows;
    rows.reserve(grid.size());
    for (double t : grid) {
        double window = table.max_height() - t - 1e-6;
        auto v = s_n_zero_sum(n, t, table, window);
        auto band = envelope_bounds(n, t, slack);
        double ratio =
            v.value >= 0.0 ? v.value / band.upper : v.value / band.lower;
        rows.push_back({t, v.value, band.lower, band.upper, ratio});
    }
    return rows;
}

}  // namespace snt

#endif
