#ifndef SNT_QUAD_HPP
#define SNT_QUAD_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "snt/errors.hpp"
#include "snt/numeric.hpp"

namespace snt {

struct quad_options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    long max_evals = 2'000'000;
    double upper_cutoff = 64.0;  // truncation height for half-line integrals
};

template <class T>
struct quad_result_t {
    T value{};
    double error = 0.0;   // achieved absolute error estimate
    long evals = 0;
    bool converged = false;
};

using quad_result = quad_result_t<double>;

namespace detail {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss rule on the odd-indexed nodes.
inline constexpr double KX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double KW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double GW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F, class T>
struct k15_out {
    T integral;
    double err, resabs;
};

template <class T, class F>
k15_out<F, T> k15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T fc = f(c);
    T resg = GW[3] * fc;
    T resk = KW[7] * fc;
    double resabs = KW[7] * std::abs(fc);
    T fv[15];
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        double dx = h * KX[j];
        T f1 = f(c - dx), f2 = f(c + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        T fsum = f1 + f2;
        resk += KW[j] * fsum;
        resabs += KW[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += GW[j / 2] * fsum;
    }
    T reskh = resk * 0.5;
    double resasc = 0.0;
    for (int j = 0; j < 15; ++j)
        resasc += KW[j < 8 ? (j == 7 ? 7 : j) : 14 - j] * std::abs(fv[j] - reskh);
    resasc *= std::abs(h);
    double err = std::abs(h) * std::abs(resk - resg);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    // roundoff floor: never certify below what doubles can resolve
    double uncert =
        50.0 * std::numeric_limits<double>::epsilon() * resabs * std::abs(h);
    return {resk * h, std::max(err, uncert), resabs * std::abs(h)};
}

template <class T>
struct interval_t {
    double a, b, err;
    T val;
    bool operator<(const interval_t& o) const { return err < o.err; }
};

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b].
/// Splits the current worst interval until the summed error estimate meets
/// max(abs_tol, rel_tol*|I|) or the evaluation budget runs out.
template <class F,
          class T = std::decay_t<decltype(std::declval<F>()(0.0))>>
quad_result_t<T> integrate(F&& f, double a, double b,
                           const quad_options& opt = {}) {
    quad_result_t<T> out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    auto first = detail::k15<T>(f, a, b);
    out.evals = 15;
    std::vector<detail::interval_t<T>> heap;
    heap.push_back({a, b, first.err, first.integral});
    T total = first.integral;
    double toterr = first.err;
    double floor_err = 0.0;  // error stuck at machine-resolution intervals
    while (true) {
        double goal = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (toterr + floor_err <= goal) break;
        if (out.evals + 30 > opt.max_evals) break;
        if (heap.empty()) break;
        std::pop_heap(heap.begin(), heap.end());
        auto worst = heap.back();
        heap.pop_back();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            // interval at machine resolution; its estimate cannot improve
            toterr -= worst.err;
            floor_err += worst.err;
            worst.err = 0.0;
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end());
            continue;
        }
        auto l = detail::k15<T>(f, worst.a, mid);
        auto r = detail::k15<T>(f, mid, worst.b);
        out.evals += 30;
        total += l.integral + r.integral - worst.val;
        toterr += l.err + r.err - worst.err;
        heap.push_back({worst.a, mid, l.err, l.integral});
        std::push_heap(heap.begin(), heap.end());
        heap.push_back({mid, worst.b, r.err, r.integral});
        std::push_heap(heap.begin(), heap.end());
    }
    // re-sum from the heap for a tighter rounding profile
    kahan verr;
    T vsum{};
    std::sort(heap.begin(), heap.end(),
              [](const auto& x, const auto& y) { return x.a < y.a; });
    for (const auto& iv : heap) {
        vsum += iv.val;
        verr += iv.err;
    }
    out.value = vsum;
    out.error = verr.sum() + floor_err;
    out.converged =
        out.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value));
    return out;
}

/// Composite fixed-order Gauss-Kronrod rule over uniform panels no longer
/// than max_len.  Node placement and cost are fully deterministic (no
/// adaptivity); the error field sums the embedded per-panel estimates.
/// Suited to integrands whose oscillation scale is known in advance.
template <class F,
          class T = std::decay_t<decltype(std::declval<F>()(0.0))>>
quad_result_t<T> integrate_fixed(F&& f, double a, double b, double max_len) {
    quad_result_t<T> out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    long n = std::max(1L, (long)std::ceil((b - a) / max_len));
    double h = (b - a) / n;
    T val{};
    kahan err;
    for (long i = 0; i < n; ++i) {
        auto r = detail::k15<T>(f, a + i * h, a + (i + 1) * h);
        val += r.integral;
        err += r.err;
        out.evals += 15;
    }
    out.value = val;
    out.error = err.sum();
    out.converged = true;
    return out;
}

/// Integrate through a sorted list of breakpoints.
template <class F,
          class T = std::decay_t<decltype(std::declval<F>()(0.0))>>
quad_result_t<T> integrate_path(F&& f, const std::vector<double>& pts,
                                const quad_options& opt = {}) {
    quad_result_t<T> out;
    out.converged = true;
    quad_options sub = opt;
    sub.abs_tol = opt.abs_tol / std::max<size_t>(1, pts.size() - 1);
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        auto r = integrate(f, pts[i], pts[i + 1], sub);
        out.value += r.value;
        out.error += r.error;
        out.evals += r.evals;
        out.converged = out.converged && r.converged;
    }
    return out;
}

/// Integrate f over [a, infinity) by the rational substitution
/// x = a + u/(1-u); the integrand must decay at least like x^-2.
template <class F,
          class T = std::decay_t<decltype(std::declval<F>()(0.0))>>
quad_result_t<T> integrate_half_line(F&& f, double a,
                                     const quad_options& opt = {}) {
    auto g = [&](double u) -> T {
        double om = 1.0 - u;
        double x = a + u / om;
        return f(x) / (om * om);
    };
    return integrate(g, 0.0, 1.0, opt);
}

/// Value-or-throw convenience wrapper.
template <class F>
double integrate_or_throw(F&& f, double a, double b,
                          const quad_options& opt = {}) {
    auto r = integrate(f, a, b, opt);
    if (!r.converged)
        throw convergence_error("quadrature did not reach tolerance", r.error);
    return r.value;
}

}  // namespace snt

#endif
