#ifndef SNT_EXPLICITFORMULA_HPP
#define SNT_EXPLICITFORMULA_HPP

// Audit of the zero/prime duality for the extremal test functions
// h(z) = g(t - z): the ordinate sum must balance the boundary, log pi,
// archimedean, and prime-power terms, with every truncation charged to an
// explicit budget.  The identity itself is exact, so the residual defect is
// bounded by the budget alone.

#include <algorithm>
#include <cmath>
#include <string>

#include <snt/errors.hpp>
#include <snt/extremal.hpp>
#include <snt/numeric.hpp>
#include <snt/quad.hpp>
#include <snt/zerodata.hpp>
#include <snt/zetakernel.hpp>

namespace snt {

/// Every term of the five-term identity, plus the aggregate error budget.
/// Balance invariant:
///   |zero_side - (boundary - log_pi + archimedean - prime)| <= budget.
struct explicit_formula_ledger {
    double zero_side = 0.0;         // sum of g(t - gamma) over ordinates
    double boundary_term = 0.0;     // h(1/2i) + h(-1/2i) = 2 Re g(t + i/2)
    double log_pi_term = 0.0;       // (log pi / 2 pi) ghat(0)
    double archimedean_term = 0.0;  // (1/2 pi) int g(t-x) Re psi(1/4+ix/2)
    double prime_term = 0.0;        // (1/2 pi) von Mangoldt sum over k^-1/2
    double budget = 0.0;            // certified truncation + quadrature slack

    double defect() const {
        return zero_side -
               (boundary_term - log_pi_term + archimedean_term - prime_term);
    }
};

namespace detail {

struct arch_result {
    double value = 0.0;   // (1/2 pi) integral over |x| <= X
    double budget = 0.0;  // quadrature error + eval tails + envelope tail
};

/// Truncated archimedean term: (1/2 pi) integral over |x| <= 1e3 of
/// g(x) Re psi(1/4 + i(t-x)/2), with the quadratic-decay constant `K`
/// covering the discarded tail.
inline arch_result archimedean_quad(const approximant& ap, double t, double K,
                                    const quad_options& q) {
    const double X = 1e3;
    quad_options qa = q;
    qa.abs_tol = std::max(q.abs_tol, 1e-9);
    qa.rel_tol = std::max(q.rel_tol, 1e-9);
    auto r = integrate(
        [&](double x) {
            return ap.eval_g(x).value * digamma_re_quarter(t - x);
        },
        -X, X, qa);
    if (!r.converged)
        throw convergence_error("gw_audit: archimedean quadrature stalled",
                                r.error);
    // |Re psi(1/4 + iu/2)| on the integration range: interior dip at u = 0
    // never exceeds 4.3; the ends grow like log
    double psi_max = 4.3;
    for (double u : {t - X, t + X})
        psi_max = std::max(psi_max, std::abs(digamma_re_quarter(u)));
    double tmax = 0.0;  // worst certified eval tail across the range
    for (int i = 1; i <= 10; ++i)
        tmax = std::max(tmax, ap.eval_g(0.1 * i * X).certified_tail);
    double env_tail =
        2.0 * K * (5.8 + std::log1p(0.5 * (t + X)) + 1.0) / X;
    arch_result out;
    out.value = r.value / TWO_PI;
    out.budget = (r.error + 2.0 * X * tmax * psi_max + env_tail) / TWO_PI;
    return out;
}

}  // namespace detail

/// Evaluates every term of the explicit formula for h(z) = g(t - z) and
/// returns the ledger.  Ordinates are summed over |gamma - t| <= W with
/// W = max(200, 50/Delta), plus the mirrored lower-half ordinates with
/// gamma <= W; the discarded zero mass is charged via the quadratic decay
/// envelope times the local ordinate density.  The prime sum runs to
/// floor(e^{2 pi Delta}) exactly -- beyond that the transform vanishes --
/// using the closed-form series transform with its certified error bound.
inline explicit_formula_ledger gw_audit(const approximant_spec& sp, double t,
                                        const zero_table& table,
                                        const von_mangoldt_table& vmt,
                                        const quad_options& q = {}) {
    if (!(t > 0.0)) throw domain_error("gw_audit: t must be positive");
    const double window = std::max(200.0, 50.0 / sp.delta);
    if (table.size() == 0 || t + window > table.max_height())
        throw coverage_error(
            "gw_audit: zero side needs ordinates up to " +
            std::to_string(t + window) + " but the table stops at " +
            std::to_string(table.max_height()));
    const double kmaxf = std::floor(std::exp(TWO_PI * sp.delta));
    if (!(kmaxf < 9e15) || (size_t)kmaxf > vmt.limit)
        throw domain_error(
            "gw_audit: prime sum needs the von Mangoldt table up to " +
            std::to_string(kmaxf) + " but it stops at " +
            std::to_string(vmt.limit));

    approximant ap(sp);
    const double K = ap.decay_constant();
    explicit_formula_ledger led;
    double budget = 0.0;
    auto charge = [&budget](double amount, const char* term) {
        if (!(amount >= 0.0) || !std::isfinite(amount))
            throw convergence_error(
                std::string("gw_audit: budget overflow in the ") + term +
                    " term",
                amount);
        budget += amount;
    };

    {  // ordinate sum with density tail for the excluded mass
        kahan zs;
        double tails = 0.0;
        auto [a, b] = table.range(t - window, t + window);
        for (size_t i = a; i < b; ++i) {
            auto e = ap.eval_g(t - table.gamma[i]);
            zs.add(e.value);
            tails += e.certified_tail;
        }
        auto [c, d] = table.range(0.0, window);
        for (size_t i = c; i < d; ++i) {
            auto e = ap.eval_g(t + table.gamma[i]);
            zs.add(e.value);
            tails += e.certified_tail;
        }
        led.zero_side = zs.sum();
        double above = PI / 2.0 - std::atan(window);
        double mirror = PI / 2.0 - std::atan(t + window);
        double tail = 2.0 * K * zero_density(t + window) * (above + mirror);
        if (t - window > table.gamma.front())
            tail += 2.0 * K * zero_density(t) * above;
        charge(tails + tail, "zero-side");
    }

    {  // boundary: conjugate pair at t -+ 1/(2i)
        auto e = ap.eval_g(cplx(t, 0.5));
        led.boundary_term = 2.0 * e.value.real();
        charge(2.0 * e.certified_tail, "boundary");
    }

    {  // log pi: numeric transform at the origin
        auto ft0 = ap.fourier_transform(0.0, q);
        led.log_pi_term = std::log(PI) / TWO_PI * ft0.value;
        charge(std::log(PI) / TWO_PI * ft0.error_budget, "log-pi");
    }

    {  // archimedean quadrature
        auto aq = detail::archimedean_quad(ap, t, K, q);
        led.archimedean_term = aq.value;
        charge(aq.budget, "archimedean");
    }

    {  // prime powers: 2 Lambda(k) k^-1/2 ghat(log k / 2 pi) cos(t log k)
        kahan pr;
        double perr = 0.0;
        size_t kmax = (size_t)kmaxf;
        for (size_t k = 2; k <= kmax; ++k) {
            double lam = vmt(k);
            if (lam == 0.0) continue;
            double lk = std::log((double)k);
            double w = 2.0 * lam / std::sqrt((double)k);
            double xi = lk / TWO_PI;
            pr.add(w * ap.ft_series(xi) * std::cos(t * lk));
            perr += w * ap.ft_series_err(xi);
        }
        led.prime_term = pr.sum() / TWO_PI;
        charge(perr / TWO_PI, "prime");
    }

    led.budget = budget;
    return led;
}

/// Coefficient of log t beyond the main term in the archimedean model:
/// (2m)! zeta(2m+2) / (2 pi Delta)^{2m+2}, the minorant carrying the
/// negative (1 - 2^{-2m-1}) eta-factor variant.
inline double archimedean_correction(int m, double delta, side_t side) {
    if (m < 0 || m > 29)
        throw domain_error("archimedean_correction: m in 0..29");
    if (!(delta >= 1.0))
        throw domain_error("archimedean_correction: delta >= 1");
    double c = factorial(2 * m) * zeta_real(2 * m + 2) /
               std::pow(TWO_PI * delta, 2 * m + 2);
    if (side == side_t::minorant)
        c = -(1.0 - std::pow(2.0, -(2 * m + 1))) * c;
    return c;
}

/// Normalized remainder of the archimedean asymptotic: the quadrature term
/// minus log t [1/(2(2m+1)(2m+2)) + correction], divided by log t.  The
/// discarded remainder is O(e^{-pi Delta}) + O(1/log t) after normalizing,
/// so the value stays below a small recorded constant and shrinks in t.
inline double archimedean_asymptotic_check(const approximant_spec& sp,
                                           double t,
                                           const quad_options& q = {}) {
    if (!(t >= 10.0))
        throw domain_error("archimedean_asymptotic_check: t >= 10");
    approximant ap(sp);
    auto aq = detail::archimedean_quad(ap, t, ap.decay_constant(), q);
    double main = 0.5 / double((2 * sp.m + 1) * (2 * sp.m + 2));
    double model =
        std::log(t) *
        (main + archimedean_correction(sp.m, sp.delta, sp.side));
    return std::abs(aq.value - model) / std::log(t);
}

}  // namespace snt

#endif
