#pragma once

#include <cmath>
#include <limits>
#include <random>

// Shared random-case generator so the unit properties and the acceptance
// battery exercise identical distributions.
namespace testsupport {

struct PricingCase {
    double face;
    double coupon;    // per period
    double yield;     // per period
    double fraction;  // w in (0, 1]
    int count;        // N, always >= 2 so every closed form accepts it
};

// Economically sensible per-period ranges: faces 1..1000, coupons to 10%,
// yields 0.01%..12%, up to 30 years of semi-annual coupons.
template <typename Fn>
void for_each_pricing_case(unsigned seed, int cases, Fn&& fn) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> face(1.0, 1000.0);
    std::uniform_real_distribution<double> coupon(0.0, 0.10);
    std::uniform_real_distribution<double> yield(1e-4, 0.12);
    std::uniform_real_distribution<double> fraction(1e-6, 1.0);
    std::uniform_int_distribution<int> count(2, 60);
    for (int k = 0; k < cases; ++k)
        fn(PricingCase{face(rng), coupon(rng), yield(rng), fraction(rng), count(rng)});
}

inline double rel_diff(double a, double b) {
    double scale = std::fmax(std::fabs(a), std::fabs(b));
    if (scale == 0.0) return 0.0;
    return std::fabs(a - b) / scale;
}

inline double ulp_of(double x) {
    double ax = std::fabs(x);
    return std::nextafter(ax, std::numeric_limits<double>::infinity()) - ax;
}

}  // namespace testsupport
