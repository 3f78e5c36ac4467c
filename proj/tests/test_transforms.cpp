#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "snt/extremal.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace snt;

namespace {

approximant make(int m, double delta, side_t side, double tol = 1e-9) {
    approximant_spec s;
    s.m = m;
    s.delta = delta;
    s.side = side;
    s.abs_tol = tol;
    return approximant(s);
}

struct l1_ref {
    int m;
    double delta;
    side_t side;
    double value;
};

// frozen 50-digit multiprecision references for the one-sided L1 distances,
// rounded to double
const l1_ref L1_REFS[] = {
    {0, 1.0, side_t::majorant, 0.25963284760849259033},
    {0, 2.0, side_t::majorant, 0.065447964518504323862},
    {0, 4.0, side_t::majorant, 0.016362461734285477365},
    {0, 64.0, side_t::majorant, 0.000063915866161901717905},
    {1, 1.0, side_t::majorant, 0.0076965452056584823784},
    {1, 2.0, side_t::majorant, 0.00054467156820350732752},
    {1, 4.0, side_t::majorant, 0.000034088460808568168106},
    {1, 64.0, side_t::majorant, 5.2014865040610121993e-10},
    {2, 1.0, side_t::majorant, 0.0015091948007864884947},
    {2, 2.0, side_t::majorant, 0.000038414226615523726384},
    {2, 4.0, side_t::majorant, 6.0872178408230893463e-7},
    {2, 64.0, side_t::majorant, 3.6282690458014873042e-14},
    {0, 1.0, side_t::minorant, 0.12873691857148394261},
    {0, 2.0, side_t::minorant, 0.032723041049933369133},
    {0, 4.0, side_t::minorant, 0.0081812308655620574729},
    {0, 64.0, side_t::minorant, 0.000031957933080950858952},
    {1, 1.0, side_t::minorant, 0.0066072020692514677233},
    {1, 2.0, side_t::minorant, 0.00047649464658637099131},
    {1, 4.0, side_t::minorant, 0.000029827403064441386926},
    {1, 64.0, side_t::minorant, 4.5513006910533856744e-10},
    {2, 1.0, side_t::minorant, 0.0014323663475554410419},
    {2, 2.0, side_t::minorant, 0.000037196783047359108515},
    {2, 4.0, side_t::minorant, 5.8969920486745724106e-7},
    {2, 64.0, side_t::minorant, 3.5148856381201908259e-14},
};

}  // namespace

TEST_CASE("exact L1 routes against frozen references", "[transforms]") {
    for (const auto& r : L1_REFS) {
        auto a = make(r.m, r.delta, r.side);
        INFO("m=" << r.m << " delta=" << r.delta
                  << (r.side == side_t::majorant ? " majorant" : " minorant"));
        double closed = a.l1_closed_form();
        double series = a.l1_series_form();
        CHECK_THAT(closed, WithinRel(r.value, 1e-12));
        CHECK_THAT(series, WithinRel(r.value, 1e-12));
        CHECK(closed >= 0.0);
        CHECK(series >= 0.0);
    }
}

TEST_CASE("three-way L1 agreement", "[transforms]") {
    for (int m : {0, 1, 2}) {
        for (double dl : {1.0, 2.0}) {
            for (side_t s : {side_t::majorant, side_t::minorant}) {
                auto a = make(m, dl, s);
                auto r = a.l1_distance();
                INFO("m=" << m << " delta=" << dl);
                CHECK_THAT(r.series_form, WithinRel(r.closed_form, 1e-12));
                CHECK_THAT(r.quadrature_form, WithinRel(r.closed_form, 1e-6));
                CHECK(r.quadrature_form >= 0.0);
            }
        }
    }
}

TEST_CASE("large-delta minorant distance approaches pi/(24 delta^2)",
          "[transforms]") {
    auto a = make(0, 64.0, side_t::minorant);
    double limit = PI / (24.0 * 64.0 * 64.0);
    CHECK_THAT(a.l1_closed_form(), WithinRel(limit, 0.01));
}

TEST_CASE("transform mass at zero frequency", "[transforms]") {
    for (int m : {0, 1}) {
        double int_f = PI / ((2 * m + 1) * (2 * m + 2));
        for (double dl : {1.0, 2.0}) {
            for (side_t s : {side_t::majorant, side_t::minorant}) {
                auto a = make(m, dl, s);
                double l1 = a.l1_closed_form();
                double want =
                    s == side_t::majorant ? int_f + l1 : int_f - l1;
                auto ft = a.fourier_transform(0.0);
                INFO("m=" << m << " delta=" << dl);
                CHECK_THAT(ft.value, WithinRel(want, 1e-5));
                CHECK(ft.error_budget > 0.0);
            }
        }
    }
}

TEST_CASE("transform vanishes outside the band", "[transforms]") {
    for (int m : {0, 1}) {
        for (double dl : {1.0, 2.0}) {
            auto a = make(m, dl,
                          m == 0 ? side_t::majorant : side_t::minorant);
            for (double r : {1.1, 1.5, 2.0}) {
                auto ft = a.fourier_transform(r * dl);
                INFO("m=" << m << " delta=" << dl << " xi=" << r * dl);
                CHECK(std::abs(ft.value) <= ft.error_budget + 1e-3);
            }
        }
    }
}

TEST_CASE("transform is even in the frequency", "[transforms]") {
    auto a = make(0, 1.0, side_t::minorant);
    auto lhs = a.fourier_transform(0.4);
    auto rhs = a.fourier_transform(-0.4);
    CHECK(lhs.value == rhs.value);
    CHECK(lhs.error_budget == rhs.error_budget);
}

TEST_CASE("series transform matches the numeric transform in band",
          "[transforms]") {
    for (int m : {0, 1}) {
        for (side_t s : {side_t::majorant, side_t::minorant}) {
            auto a = make(m, 2.0, s);
            for (double xi : {0.6, 1.4}) {
                auto ft = a.fourier_transform(xi);
                INFO("m=" << m << " xi=" << xi);
                CHECK_THAT(a.ft_series(xi),
                           WithinAbs(ft.value, ft.error_budget + 1e-5));
            }
            // identically zero outside [-Delta, Delta]
            CHECK(a.ft_series(2.0) == 0.0);
            CHECK(a.ft_series(-2.5) == 0.0);
        }
    }
}
