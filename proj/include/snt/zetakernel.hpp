#ifndef SNT_ZETAKERNEL_HPP
#define SNT_ZETAKERNEL_HPP

#include <cmath>
#include <complex>
#include <mutex>
#include <string>
#include <vector>

#include "snt/errors.hpp"
#include "snt/numeric.hpp"

namespace snt {

/// Euler-Maclaurin evaluation of zeta and its logarithmic derivative on the
/// strip sigma >= -1, |t| <= 1e4, plus the complex digamma and the von
/// Mangoldt sieve.  All truncations carry certified remainder bounds.

namespace detail {

inline constexpr double ZETA_T_MAX = 1.0e4;
inline constexpr double ZETA_SIGMA_MIN = -1.0;
inline constexpr double ZETA_POLE_RADIUS = 1e-8;
inline constexpr double ZETA_ZERO_PROXIMITY = 1e-8;
inline constexpr double SIGMA_DIRICHLET = 4.0;

// shared log table for the Dirichlet sums
inline const double* log_table(size_t upto) {
    static std::vector<double> logs{0.0, 0.0};  // logs[k] = log k
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (logs.size() <= upto) logs.push_back(std::log((double)logs.size()));
    return logs.data();
}

struct em_result {
    cplx zeta, dzeta;
    double bound;  // certified remainder bound (same for both, conservative)
};

// Euler-Maclaurin for zeta(s) and zeta'(s) simultaneously:
//   zeta(s) = sum_{k<N} k^-s + N^{1-s}/(s-1) + N^-s/2
//             + sum_j B_{2j}/(2j)! (s)_{2j-1} N^{-s-2j+1} + R_J
//   |R_J| <= |next term| * |(s+2J+1)/(sigma+2J+1)|
// The derivative is the term-by-term d/ds of each piece; Pochhammer factors
// are differentiated by product-rule accumulation so s = 0 is exact.
inline em_result zeta_em(cplx s) {
    const double sigma = s.real(), t = s.imag();
    const int N = std::max(12, (int)std::ceil(1.3 * (std::abs(t) + 5.0)));
    const double* lg = log_table(N);
    kahan_cplx zs, dzs;
    for (int k = 1; k < N; ++k) {
        // k^-s = exp(-s log k)
        cplx p = std::exp(-s * lg[k]);
        zs.add(p);
        dzs.add(-lg[k] * p);
    }
    const double logN = lg[N];
    cplx Nms = std::exp(-s * logN);       // N^-s
    cplx N1ms = Nms * (double)N;          // N^{1-s}
    cplx sm1 = s - 1.0;
    cplx z = zs.sum() + N1ms / sm1 + 0.5 * Nms;
    cplx dz = dzs.sum() + (-logN) * N1ms / sm1 - N1ms / (sm1 * sm1) -
              0.5 * logN * Nms;

    // Bernoulli corrections with running Pochhammer (value, derivative)
    cplx poch = s, dpoch = 1.0;           // (s)_1 and its derivative
    cplx Npow = Nms / (double)N;          // N^{-s-1}
    const double invN2 = 1.0 / ((double)N * (double)N);
    double bound = 0.0;
    const int J = 10;
    for (int j = 1; j <= J + 1; ++j) {
        double coef = BERNOULLI_EVEN[j] / factorial(2 * j);
        cplx term = coef * poch * Npow;
        if (j <= J) {
            z += term;
            dz += coef * (dpoch * Npow - logN * poch * Npow);
        } else {
            double corr = std::abs(s + (2.0 * j - 1.0)) /
                          std::abs(sigma + (2.0 * j - 1.0));
            bound = std::abs(term) * corr;
        }
        // extend (s)_{2j-1} -> (s)_{2j+1}
        for (int step = 0; step < 2; ++step) {
            cplx fac = s + (double)(2 * j - 1 + step);
            dpoch = dpoch * fac + poch;
            poch *= fac;
        }
        Npow *= invN2;
    }
    // derivative remainder: same term magnitude times the log weight
    double dbound = bound * (logN + 2.0 * J + 4.0);
    return {z, dz, std::max(bound, dbound)};
}

inline void check_domain(cplx s) {
    if (std::abs(s.imag()) > ZETA_T_MAX)
        throw domain_error("zeta: |Im s| exceeds supported height 1e4");
    if (s.real() < ZETA_SIGMA_MIN)
        throw domain_error("zeta: Re s below supported strip (>= -1)");
    if (std::abs(s - cplx(1.0, 0.0)) < ZETA_POLE_RADIUS)
        throw domain_error("zeta: s at the pole");
}

}  // namespace detail

/// zeta(s) on sigma >= -1, |t| <= 1e4.  Throws domain_error at the pole and
/// convergence_error if the certified remainder exceeds tol.
inline cplx zeta(cplx s, double tol = 1e-12) {
    detail::check_domain(s);
    auto r = detail::zeta_em(s);
    if (r.bound > tol)
        throw convergence_error("zeta: Euler-Maclaurin bound above tolerance",
                                r.bound);
    return r.zeta;
}

inline double zeta_real(double sigma, double tol = 1e-12) {
    return zeta(cplx(sigma, 0.0), tol).real();
}

/// Dirichlet eta (1 - 2^{1-s}) zeta(s), used by the exact series forms.
inline double eta_real(double sigma) {
    return (1.0 - std::pow(2.0, 1.0 - sigma)) * zeta_real(sigma);
}

/// von Mangoldt function table over [0, limit].
struct von_mangoldt_table {
    size_t limit = 0;
    std::vector<double> lam;  // lam[k] = log p if k = p^e, else 0
    double operator()(size_t k) const {
        return k <= limit ? lam[k] : 0.0;
    }
};

inline von_mangoldt_table von_mangoldt(size_t limit) {
    von_mangoldt_table t;
    t.limit = limit;
    t.lam.assign(limit + 1, 0.0);
    std::vector<bool> composite(limit + 1, false);
    for (size_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        double lp = std::log((double)p);
        for (size_t q = p; q <= limit; q *= p) {
            t.lam[q] = lp;
            if (q > limit / p) break;
        }
        for (size_t q = p * p; q <= limit; q += p) composite[q] = true;
    }
    return t;
}

namespace detail {

// shared von Mangoldt cache for the large-sigma Dirichlet route
inline const von_mangoldt_table& vm_cache(size_t need) {
    static von_mangoldt_table table;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (table.limit < need) table = von_mangoldt(std::max<size_t>(need, 1 << 16));
    return table;
}

}  // namespace detail

/// zeta'/zeta.  For sigma >= 4 the absolutely convergent series
/// -sum Lambda(k) k^-s with a certified cutoff; otherwise simultaneous
/// Euler-Maclaurin of zeta and zeta'.  Throws if s is too close to a zero
/// of zeta (|zeta| < 1e-8) for the quotient to be meaningful.
inline cplx log_deriv_zeta(cplx s, double tol = 1e-12) {
    detail::check_domain(s);
    const double sigma = s.real();
    if (sigma >= detail::SIGMA_DIRICHLET) {
        // tail bound: sum_{k>K} log(k) k^-sigma <= K^{1-sigma}(log K/(sigma-1)
        //             + 1/(sigma-1)^2)
        size_t K = 64;
        auto tail = [&](size_t k) {
            double lk = std::log((double)k), sm = sigma - 1.0;
            return std::pow((double)k, -sm) * (lk / sm + 1.0 / (sm * sm));
        };
        while (tail(K) > tol && K < (1u << 24)) K *= 2;
        const auto& vm = detail::vm_cache(K);
        const double* lg = detail::log_table(std::min<size_t>(K, 1 << 16));
        kahan_cplx acc;
        for (size_t k = 2; k <= K; ++k) {
            if (vm.lam[k] == 0.0) continue;
            double lk = k < (1 << 16) ? lg[k] : std::log((double)k);
            acc.add(vm.lam[k] * std::exp(-s * lk));
        }
        return -acc.sum();
    }
    auto r = detail::zeta_em(s);
    if (std::abs(r.zeta) < detail::ZETA_ZERO_PROXIMITY)
        throw domain_error("log_deriv_zeta: s too close to a zero of zeta");
    if (r.bound > tol * std::abs(r.zeta))
        throw convergence_error("log_deriv_zeta: remainder above tolerance",
                                r.bound);
    return r.dzeta / r.zeta;
}

/// log|zeta(s)|.  At a zero this is -inf; the infinity is returned as an
/// integrable-singularity marker rather than thrown, so quadrature callers
/// can subtract the singularity or avoid the exact point.
inline double log_abs_zeta(cplx s, double tol = 1e-12) {
    detail::check_domain(s);
    auto r = detail::zeta_em(s);
    double a = std::abs(r.zeta);
    if (a == 0.0) return -std::numeric_limits<double>::infinity();
    if (r.bound > tol && r.bound > 1e-6 * a)
        throw convergence_error("log_abs_zeta: remainder above tolerance",
                                r.bound);
    return std::log(a);
}

/// Complex digamma by upward recurrence into |z| >= 12 and the Stirling
/// series psi(w) = log w - 1/(2w) - sum_j B_{2j}/(2j w^{2j}).
inline cplx digamma(cplx z) {
    if (z.real() <= 0.0 && std::abs(z - cplx(std::round(z.real()), 0.0)) < 1e-14)
        throw domain_error("digamma: nonpositive integer pole");
    cplx shift = 0.0;
    while (std::abs(z) < 12.0) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    cplx w2 = 1.0 / (z * z);
    cplx p = w2;
    cplx s = std::log(z) - 0.5 / z;
    for (int j = 1; j <= 7; ++j) {
        s -= BERNOULLI_EVEN[j] / (2.0 * j) * p;
        p *= w2;
    }
    return s + shift;
}

/// Re psi(1/4 + iu/2), the archimedean factor on the critical line.
inline double digamma_re_quarter(double u) {
    return digamma(cplx(0.25, 0.5 * u)).real();
}

}  // namespace snt

#endif
