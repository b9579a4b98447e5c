#include "couponclock/pricing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace couponclock {

namespace {

void validate_inputs(const PricingInputs& in, int min_count) {
    if (!(in.face > 0.0)) throw std::invalid_argument("face must be positive");
    if (!(in.coupon_rate >= 0.0)) throw std::invalid_argument("coupon rate must be non-negative");
    if (!(in.yield > -1.0)) throw std::invalid_argument("per-period yield must exceed -100%");
    if (!(in.fraction_remaining > 0.0 && in.fraction_remaining <= 1.0))
        throw std::invalid_argument("fraction of period remaining must lie in (0, 1]");
    if (in.exponent_count < min_count)
        throw std::invalid_argument("exponent count " + std::to_string(in.exponent_count) +
                                    " below the form's minimum " + std::to_string(min_count));
}

}  // namespace

PricingMethod parse_method(std::string_view name) {
    if (name == "street") return PricingMethod::Street;
    if (name == "treasury") return PricingMethod::Treasury;
    if (name == "dmo") return PricingMethod::DmoVariant;
    throw std::invalid_argument("unknown method '" + std::string(name) +
                                "' (expected street, treasury or dmo)");
}

std::string_view method_name(PricingMethod method) {
    switch (method) {
        case PricingMethod::Street: return "street";
        case PricingMethod::Treasury: return "treasury";
        case PricingMethod::DmoVariant: return "dmo";
    }
    throw std::invalid_argument("unknown pricing method");
}

double geometric_sum(double q, int n) {
    if (n < 1) throw std::invalid_argument("geometric_sum: term count must be at least one");
    if (q == 1.0) return static_cast<double>(n);
    double d = 1.0 - q;
    if (q > 0.0) return -std::expm1(static_cast<double>(n) * std::log(q)) / d;
    return (1.0 - std::pow(q, static_cast<double>(n))) / d;
}

double price_street(const PricingInputs& in) {
    validate_inputs(in, 1);
    double q = in.discount_ratio();
    double coupons = in.face * in.coupon_rate * geometric_sum(q, in.exponent_count);
    double principal = in.face * std::pow(q, static_cast<double>(in.exponent_count - 1));
    return std::pow(q, in.fraction_remaining) * (coupons + principal);
}

double price_street_coupon_date(double face, double coupon_rate, double yield,
                                int coupon_count) {
    PricingInputs in{face, coupon_rate, yield, 1.0, coupon_count};
    validate_inputs(in, 1);
    double q = in.discount_ratio();
    // q == 1 (zero yield) falls through exactly: the sum is N and q^N is 1.
    return face * coupon_rate * q * geometric_sum(q, coupon_count) +
           face * std::pow(q, static_cast<double>(coupon_count));
}

double price_treasury(const PricingInputs& in) {
    validate_inputs(in, 0);
    double q = in.discount_ratio();
    double coupons = in.face * in.coupon_rate * geometric_sum(q, in.exponent_count + 1);
    double principal = in.face * std::pow(q, static_cast<double>(in.exponent_count));
    return std::pow(q, in.fraction_remaining) * (coupons + principal);
}

double price_dmo_variant(const DmoCashflows& cash, const PricingInputs& in) {
    validate_inputs(in, 2);
    if (!(cash.first_coupon >= 0.0 && cash.second_coupon >= 0.0 && cash.regular_coupon >= 0.0))
        throw std::invalid_argument("cashflows must be non-negative");
    double q = in.discount_ratio();
    double tail = cash.regular_coupon * q * q * geometric_sum(q, in.exponent_count - 1);
    double principal = in.face * std::pow(q, static_cast<double>(in.exponent_count));
    return std::pow(q, in.fraction_remaining) *
           (cash.first_coupon + cash.second_coupon * q + tail + principal);
}

double ex_dividend_adjust(double price, double first_coupon, double q, double w) {
    return price - first_coupon * std::pow(q, w);
}

double accrued_interest(double face, double coupon_rate, long days_accrued,
                        long days_in_period) {
    if (!(face > 0.0)) throw std::invalid_argument("face must be positive");
    if (!(coupon_rate >= 0.0)) throw std::invalid_argument("coupon rate must be non-negative");
    if (days_in_period < 1) throw std::invalid_argument("days_in_period must be positive");
    if (days_accrued < 0 || days_accrued > days_in_period)
        throw std::out_of_range("days_accrued " + std::to_string(days_accrued) +
                                " outside 0.." + std::to_string(days_in_period));
    return face * coupon_rate * static_cast<double>(days_accrued) /
           static_cast<double>(days_in_period);
}

double dirty_from_clean(double clean, double accrued) { return clean + accrued; }

double clean_from_dirty(double dirty, double accrued) { return dirty - accrued; }

double price_extended(double face, double coupon_rate, double yield,
                      double fraction_remaining, int exponent_count,
                      PricingMethod method, bool include_first) {
    PricingInputs in{face, coupon_rate, yield, fraction_remaining, exponent_count};
    validate_inputs(in, method == PricingMethod::Street      ? 1
                        : method == PricingMethod::Treasury  ? 0
                                                             : 2);
    double q = in.discount_ratio();
    int coupons = method == PricingMethod::Street ? exponent_count : exponent_count + 1;
    double total = 0.0;
    for (int t = 0; t < coupons; ++t) {
        if (t == 0 && !include_first) continue;
        total += face * coupon_rate * std::pow(q, fraction_remaining + t);
    }
    return total + face * std::pow(q, fraction_remaining + coupons - 1);
}

void validate_bond(const BondSpec& bond) {
    if (!(bond.face > 0.0)) throw std::invalid_argument("face must be positive");
    if (!(bond.annual_coupon_rate >= 0.0))
        throw std::invalid_argument("coupon rate must be non-negative");
    if (bond.frequency != 1 && bond.frequency != 2 && bond.frequency != 4 &&
        bond.frequency != 12)
        throw std::invalid_argument("frequency must be 1, 2, 4 or 12, not " +
                                    std::to_string(bond.frequency));
    if (!is_valid_date(bond.maturity))
        throw std::invalid_argument("invalid maturity date");
    int step = 12 / bond.frequency;
    if (!bond.coupon_anchors.empty()) {
        int day = bond.coupon_anchors.front().day;
        for (MonthDay a : bond.coupon_anchors) {
            if (a.month < 1 || a.month > 12 || a.day < 1 || a.day > 31)
                throw std::invalid_argument("coupon anchor out of range");
            if (a.day != day)
                throw std::invalid_argument("coupon anchors must share a day of month");
            int phase = (bond.maturity.month - a.month) % step;
            if ((phase + step) % step != 0)
                throw std::invalid_argument("coupon anchor month " + std::to_string(a.month) +
                                            " is off the coupon cycle");
        }
        if (std::min(day, days_in_month(bond.maturity.year, bond.maturity.month)) !=
            bond.maturity.day)
            throw std::invalid_argument("maturity does not fall on the coupon anchors' day");
    }
    if (bond.issue_date && !(*bond.issue_date < bond.maturity))
        throw std::invalid_argument("issue date must precede maturity");
}

PriceBreakdown price_bond(const BondSpec& bond, CivilDate settlement, double annual_yield,
                          PricingMethod method, const PricingOverrides& overrides,
                          DayCountConvention convention) {
    validate_bond(bond);
    if (!is_valid_date(settlement)) throw std::invalid_argument("invalid settlement date");
    if (!(settlement < bond.maturity))
        throw std::out_of_range("settlement " + to_iso_string(settlement) +
                                " is on or after maturity " + to_iso_string(bond.maturity));
    double y = annual_yield / bond.frequency;
    if (!(y > -1.0)) throw std::invalid_argument("per-period yield must exceed -100%");

    int step = 12 / bond.frequency;
    long months = (static_cast<long>(bond.maturity.year) - settlement.year) * 12 +
                  (bond.maturity.month - settlement.month);
    int span = static_cast<int>(months / step) + 2;
    std::optional<CivilDate> anchor;
    if (!bond.coupon_anchors.empty())
        anchor = CivilDate{bond.maturity.year, bond.coupon_anchors.front().month,
                           bond.coupon_anchors.front().day};
    CouponSchedule schedule = build_schedule(bond.maturity, bond.frequency, anchor, span);
    schedule.issue_date = bond.issue_date;

    SettlementContext ctx = locate(schedule, settlement, convention, overrides.exdiv_date);
    if (overrides.ex_dividend) ctx.ex_dividend = *overrides.ex_dividend;

    double i = bond.annual_coupon_rate / bond.frequency;
    PricingInputs in;
    in.face = bond.face;
    in.coupon_rate = i;
    in.yield = y;
    in.fraction_remaining = ctx.fraction_remaining;
    int derived = method == PricingMethod::Street ? ctx.coupons_remaining
                                                  : ctx.coupons_remaining - 1;
    in.exponent_count = overrides.exponent_count.value_or(derived);

    PricingMethod effective = method;
    if (method == PricingMethod::DmoVariant && in.exponent_count < 2)
        effective = PricingMethod::Treasury;

    double dirty = 0.0;
    switch (effective) {
        case PricingMethod::Street:
            dirty = price_street(in);
            break;
        case PricingMethod::Treasury:
            dirty = price_treasury(in);
            break;
        case PricingMethod::DmoVariant: {
            double coupon = bond.face * i;
            DmoCashflows cash{ctx.ex_dividend ? 0.0 : coupon, coupon, coupon};
            dirty = price_dmo_variant(cash, in);
            break;
        }
    }
    if (ctx.ex_dividend && effective != PricingMethod::DmoVariant)
        dirty = ex_dividend_adjust(dirty, bond.face * i, in.discount_ratio(),
                                   in.fraction_remaining);

    long accrual_days = ctx.days_accrued - (overrides.inclusive_accrual_days ? 0 : 1);
    double accrued =
        ctx.ex_dividend
            ? -accrued_interest(bond.face, i, ctx.days_in_period - accrual_days,
                                ctx.days_in_period)
            : accrued_interest(bond.face, i, accrual_days, ctx.days_in_period);

    PriceBreakdown out;
    out.dirty = dirty;
    out.accrued = accrued;
    out.clean = clean_from_dirty(dirty, accrued);
    out.method = method;
    out.fraction_remaining = in.fraction_remaining;
    out.discount_ratio = in.discount_ratio();
    out.exponent_count = in.exponent_count;
    out.days_to_next = ctx.days_to_next;
    out.days_accrued = accrual_days;
    out.days_in_period = ctx.days_in_period;
    out.ex_dividend = ctx.ex_dividend;
    return out;
}

}  // namespace couponclock
