#pragma once

#include <optional>
#include <string_view>

#include "couponclock/calendar.hpp"

namespace couponclock {

enum class PricingMethod { Street, Treasury, DmoVariant };

// Names: "street", "treasury", "dmo".
PricingMethod parse_method(std::string_view name);
std::string_view method_name(PricingMethod method);

// 1 + q + ... + q^(n-1) for n >= 1, continuous at q == 1 (where it is n).
// For 0 < q != 1 the numerator 1 - q^n is formed as -expm1(n log q): the
// direct subtraction cancels catastrophically as q -> 1 and its error is
// then amplified by 1/(1 - q).
double geometric_sum(double q, int n);

// Per-period pricing inputs. face, coupon_rate and yield are per period;
// fraction_remaining is the fraction w of the current period still to run,
// in (0, 1]; exponent_count is the closed form's N. N counts exponents, not
// always coupons: the street form pays N coupons, the treasury form N + 1.
struct PricingInputs {
    double face = 100.0;
    double coupon_rate = 0.0;
    double yield = 0.0;
    double fraction_remaining = 1.0;
    int exponent_count = 0;

    double discount_ratio() const { return 1.0 / (1.0 + yield); }
};

// Street convention. N coupons at exponents w .. w+N-1, principal with the
// last one:
//
//   P = q^w ( M i (1 + q + ... + q^(N-1)) + M q^(N-1) ),   q = 1/(1+y).
//
// Requires N >= 1.
double price_street(const PricingInputs& in);

// Street form on a coupon date (w == 1):
//
//   P = M i (1 - q^N) / y + M q^N
//
// continuous at y == 0, where it is M i N + M.
double price_street_coupon_date(double face, double coupon_rate, double yield,
                                int coupon_count);

// Treasury convention. N+1 coupons at exponents w .. w+N, principal at w+N:
//
//   P = q^w ( M i (1 + q + ... + q^N) + M q^N ).
//
// The same curve as the street form shifted by one: street at count k equals
// treasury at count k-1. Requires N >= 0.
double price_treasury(const PricingInputs& in);

struct DmoCashflows {
    double first_coupon = 0.0;    // discounted at q^w
    double second_coupon = 0.0;   // discounted at q^(w+1)
    double regular_coupon = 0.0;  // every later coupon
};

// Treasury-style discounting with the first two cashflows free, the shape
// used for gilts whose opening dividends are short, long or not paid at all:
//
//   P = q^w ( C1 + C2 q + C q^2 (1 + q + ... + q^(N-2)) + M q^N ).
//
// Requires N >= 2. With C1 == C2 == C == M i this is price_treasury.
double price_dmo_variant(const DmoCashflows& cash, const PricingInputs& in);

// Remove a first coupon the buyer will not receive: price - C1 q^w.
double ex_dividend_adjust(double price, double first_coupon, double q, double w);

// Simple-interest accrual: face * coupon_rate * days_accrued / days_in_period.
double accrued_interest(double face, double coupon_rate, long days_accrued,
                        long days_in_period);

double dirty_from_clean(double clean, double accrued);
double clean_from_dirty(double dirty, double accrued);

// Term-by-term sum of the same cashflows the closed forms price, one pow per
// term. Deliberately the slow, direct evaluation: the closed forms are
// tested against it. include_first == false drops the lowest-exponent coupon
// (the ex-dividend case). PricingMethod::DmoVariant sums the treasury
// cashflows, which the variant equals at uniform coupons.
double price_extended(double face, double coupon_rate, double yield,
                      double fraction_remaining, int exponent_count,
                      PricingMethod method, bool include_first = true);

// Static bond terms. annual_coupon_rate is a decimal (0.08 for an 8% bond).
// coupon_anchors carry the coupon months/days (e.g. {06-07, 12-07}); when
// empty the schedule is anchored on the maturity date alone.
struct BondSpec {
    double face = 100.0;
    double annual_coupon_rate = 0.0;
    int frequency = 2;
    CivilDate maturity;
    std::vector<MonthDay> coupon_anchors;
    std::optional<CivilDate> issue_date;
};

// Throws std::invalid_argument when the terms are inconsistent: bad
// frequency, anchors with differing days or off the coupon cycle, maturity
// not on an anchor.
void validate_bond(const BondSpec& bond);

struct PricingOverrides {
    std::optional<int> exponent_count;    // pin the closed form's N
    std::optional<CivilDate> exdiv_date;  // explicit ex-dividend date
    std::optional<bool> ex_dividend;      // force the flag outright
    bool inclusive_accrual_days = true;   // count the settlement day
};

struct PriceBreakdown {
    double dirty = 0.0;
    double accrued = 0.0;  // negative when ex-dividend (rebate days)
    double clean = 0.0;
    PricingMethod method = PricingMethod::Street;
    double fraction_remaining = 0.0;
    double discount_ratio = 0.0;
    int exponent_count = 0;
    long days_to_next = 0;
    long days_accrued = 0;
    long days_in_period = 0;
    bool ex_dividend = false;
};

// Schedule-driven pricing: build the quasi-coupon schedule, locate the
// settlement, derive per-period inputs, dispatch on method. annual_yield is
// a decimal rate (0.04445 for 4.445%). The street form derives N from the
// count of remaining quasi dates; treasury and the variant use one less. A
// variant request with fewer than two exponent terms falls back to the
// treasury form, which prices the same cashflows at those sizes. Ex-dividend
// settlements lose the first coupon and accrue negatively for the rebate
// days, so the accrued day counts on both sides of the boundary sum to the
// full period.
PriceBreakdown price_bond(const BondSpec& bond, CivilDate settlement,
                          double annual_yield, PricingMethod method,
                          const PricingOverrides& overrides = {},
                          DayCountConvention convention = DayCountConvention::ActualActual);

}  // namespace couponclock
