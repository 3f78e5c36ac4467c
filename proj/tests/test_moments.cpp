#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "snt/argmoments.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace snt;

namespace {

struct probe {
    int n;
    double t, value;
};

// frozen references from an independent high-precision implementation of
// the sigma-integral (50-digit working precision, rounded to double)
const probe SN_REFS[] = {
    {0, 50.5, 0.41163503408705158},
    {1, 50.0, -0.381410797441576909},
    {1, 100.0, 0.293333380411432149},
    {2, 50.0, -0.243421356249041695},
    {2, 100.0, 0.0860845633004240947},
    {2, 0.01, 0.133123670183073792},
    {3, 100.0, -0.56089264972392943},
    {3, 0.05, -0.94391692596364443},
    {4, 0.01, -0.0121094609185417452},
};

}  // namespace

TEST_CASE("integral route against frozen references", "[moments]") {
    for (const auto& r : SN_REFS) {
        auto v = s_n_integral(r.n, r.t);
        INFO("n=" << r.n << " t=" << r.t);
        CHECK_THAT(v.value, WithinAbs(r.value, v.error_budget + 1e-9));
        CHECK(v.error_budget < 1e-4);
        CHECK(v.method == moment_method::integral);
    }
}

TEST_CASE("prime-power tail weights match frozen references", "[moments]") {
    // weight of Lambda(k) in the sigma-tail of the strip integral,
    // references from 50-digit evaluation of the finite j-sum
    CHECK_THAT(detail::sigma_tail_weight(1, std::log(10.0)) / 100.0,
               WithinRel(0.008400534198664916706967, 1e-14));
    CHECK_THAT(detail::sigma_tail_weight(3, std::log(2.0)) / 4.0,
               WithinRel(17.98398593993854651285, 1e-14));
}

TEST_CASE("small-t limits reach the integration constants", "[moments]") {
    // S_n(0+) -> delta_n; at t the residual is ~ t |delta_{n-1}|
    CHECK_THAT(s_n_integral(2, 0.01).value, WithinAbs(0.125, 1e-2));
    CHECK_THAT(s_n_integral(4, 0.01).value, WithinAbs(-1.0 / 384.0, 1e-2));
    CHECK_THAT(s_n_integral(4, 5e-4).value, WithinAbs(-1.0 / 384.0, 1e-3));
    CHECK_THAT(s_n_integral(1, 0.001).value,
               WithinAbs(0.81735276857704056342, 1e-2));
    CHECK_THAT(s_n_integral(3, 0.001).value,
               WithinAbs(-0.95116800613834420587, 1e-2));
}

TEST_CASE("cross-method boundedness on grids", "[moments]") {
    const auto& tab = default_zeros();
    for (int n : {1, 2, 3}) {
        double low_worst = 0.0, high_worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            double t = 50.0 + 450.0 * i / 49.0;
            auto a = s_n_integral(n, t);
            auto b = s_n_zero_sum(n, t, tab, tab.max_height() - t - 1e-6);
            low_worst = std::max(low_worst, std::abs(a.value - b.value));
        }
        for (int i = 0; i < 50; ++i) {
            double t = 500.0 + 500.0 * i / 49.0;
            auto a = s_n_integral(n, t);
            auto b = s_n_zero_sum(n, t, tab, tab.max_height() - t - 1e-6);
            high_worst = std::max(high_worst, std::abs(a.value - b.value));
        }
        INFO("n=" << n << " low=" << low_worst << " high=" << high_worst);
        CHECK(low_worst <= 2.0);
        CHECK(high_worst <= low_worst + 1.0);
    }
}

TEST_CASE("derivative chain is second order", "[moments]") {
    // at h = 1e-3 the defect is far below the example tolerance
    CHECK(derivative_chain_check(2, 50.0, 1e-3) <= 1e-3);
    CHECK(derivative_chain_check(3, 100.0, 1e-3) <= 1e-3);
    // halving h shrinks the defect ~4x once above the quadrature noise
    for (int n : {2, 3, 4}) {
        double t = n == 2 ? 50.0 : 100.0;
        double d1 = derivative_chain_check(n, t, 0.01);
        double d2 = derivative_chain_check(n, t, 0.005);
        INFO("n=" << n << " defects " << d1 << " -> " << d2);
        CHECK(d1 / d2 >= 3.5);
    }
}

TEST_CASE("zero-sum structure", "[moments]") {
    const auto& tab = default_zeros();

    SECTION("finite at an ordinate for n >= 1") {
        double g = tab.gamma[7];
        auto v = s_n_zero_sum(3, g, tab, 500.0);
        CHECK(std::isfinite(v.value));
        CHECK(v.error_budget > 0.0);
    }

    SECTION("even-n contributions of gamma and 2t-gamma cancel") {
        zero_table tt;
        tt.gamma = {14.1347, 18.0, 22.0, 26.5};  // 18 and 22 mirror about 20
        auto v = s_n_zero_sum(2, 20.0, tt, 6.5);
        double expect =
            -(eval_f(2, 20.0 - 14.1347) + eval_f(2, 20.0 - 26.5)) / (2.0 * PI);
        CHECK_THAT(v.value, WithinRel(expect, 1e-13));
    }

    SECTION("odd-n sign pattern after removing the log term") {
        for (int n : {1, 3}) {
            int m = n / 2;
            double t = 100.0;
            auto v = s_n_zero_sum(n, t, tab, tab.max_height() - t - 1e-6);
            double sign = (m % 2) ? -1.0 : 1.0;
            double logterm = sign * std::log(t) / (TWO_PI * factorial(2 * m + 2));
            // value - logterm = -(-1)^m/(pi (2m)!) sum, and the kernel sum > 0
            CHECK(sign * (v.value - logterm) < 0.0);
        }
    }
}

TEST_CASE("envelope report stays within the smoke band", "[moments]") {
    const auto& tab = default_zeros();
    std::vector<double> grid;
    for (double t = 50.0; t <= 500.0; t += 30.0) grid.push_back(t);
    for (int n : {1, 2}) {
        auto rows = envelope_report(n, grid, tab);
        REQUIRE(rows.size() == grid.size());
        for (const auto& r : rows) {
            INFO("n=" << n << " t=" << r.t);
            CHECK(std::isfinite(r.value));
            CHECK(r.lower < 0.0);
            CHECK(r.upper > 0.0);
            CHECK(r.ratio >= 0.0);
            CHECK(r.ratio < 5.0);
        }
    }
    auto far = envelope_report(1, {500.0}, tab);
    CHECK(far[0].ratio < 5.0);
}

TEST_CASE("moment guards", "[moments]") {
    const auto& tab = default_zeros();
    CHECK_THROWS_AS(s_n_integral(-1, 10.0), domain_error);
    CHECK_THROWS_AS(s_n_integral(2, 0.0), domain_error);
    CHECK_THROWS_AS(s_n_zero_sum(0, 100.0, tab, 50.0), domain_error);
    CHECK_THROWS_AS(s_n_zero_sum(2, 1.0, tab, 50.0), domain_error);
    CHECK_THROWS_AS(s_n_zero_sum(2, 9000.0, tab, 2000.0), coverage_error);
    CHECK_THROWS_AS(derivative_chain_check(1, 50.0, 1e-3), domain_error);
    CHECK_THROWS_AS(derivative_chain_check(2, 50.0, 0.0), domain_error);
    // the n=0 integrand is singular on the line at an ordinate
    CHECK_THROWS_AS(s_n_integral(0, default_zeros().gamma[0]), error);
}
