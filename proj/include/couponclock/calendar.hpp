#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace couponclock {

// Proleptic Gregorian date. Plain aggregate; validity is checked at the
// points where an invalid date could corrupt a computation, not on
// construction, so literals like {2015, 12, 7} stay cheap.
struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    friend constexpr auto operator<=>(const CivilDate&, const CivilDate&) = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool is_valid_date(CivilDate d);

// Days since 1970-01-01. Round-trips with from_serial for any valid date.
long to_serial(CivilDate d);
CivilDate from_serial(long serial);

// 0 = Monday .. 6 = Sunday.
int weekday_index(CivilDate d);
bool is_weekday(CivilDate d);

// Shift by whole months, then pin the day of month to anchor_day, clamping
// into the target month (anchor 31 in June gives 30). The clamp never
// propagates: each result is derived from the anchor, not from a previously
// clamped date.
CivilDate add_months_clamped(CivilDate d, int months, int anchor_day);

std::string to_iso_string(CivilDate d);

// Strict YYYY-MM-DD.
CivilDate parse_iso_date(std::string_view text);

// YYYY-MM-DD, or DD-Mon-YY / DD-Mon-YYYY ("24-May-99", month name case
// insensitive). Two-digit years pivot at 69: 69..99 -> 19xx, 00..68 -> 20xx.
CivilDate parse_flexible_date(std::string_view text);

struct MonthDay {
    int month = 1;
    int day = 1;
    friend constexpr auto operator<=>(const MonthDay&, const MonthDay&) = default;
};

// Strict MM-DD.
MonthDay parse_month_day(std::string_view text);

enum class DayCountConvention { ActualActual, Thirty360, Actual360 };

// Names: "act/act", "30/360", "act/360".
DayCountConvention parse_day_count(std::string_view name);
std::string_view day_count_name(DayCountConvention convention);

// Days from d1 to d2, d1 <= d2 required. ActualActual and Actual360 count
// calendar days (the conventions differ only in the denominator they imply,
// which is the caller's business). Thirty360 applies the US rule: a start
// day of 31 drops to 30, and an end day of 31 drops to 30 only when the
// adjusted start day is 30.
long day_count(CivilDate d1, CivilDate d2, DayCountConvention convention);

struct CouponSchedule {
    std::vector<CivilDate> quasi_coupon_dates;  // strictly ascending, last == maturity
    int frequency = 2;                          // coupons per year: 1, 2, 4 or 12
    CivilDate maturity;
    std::optional<CivilDate> issue_date;        // informational; dates before it are
                                                // accrual markers, not payments
};

// Walk back from maturity in 12/frequency month steps, span_periods dates in
// total, maturity included. The anchor, when given, contributes only its day
// of month; it must be consistent with the maturity day after clamping.
CouponSchedule build_schedule(CivilDate maturity, int frequency,
                              std::optional<CivilDate> anchor, int span_periods);

struct SettlementContext {
    CivilDate prev_quasi;
    CivilDate next_quasi;
    long days_to_next = 0;            // r: settlement to next quasi date
    long days_in_period = 0;          // s: prev to next quasi date
    double fraction_remaining = 0.0;  // w = r / s, in (0, 1]
    long days_accrued = 0;            // s - r + 1: settlement day counts
    int coupons_remaining = 0;        // quasi dates strictly after settlement
    bool ex_dividend = false;
};

// Place a settlement inside the schedule. A settlement falling on a quasi
// date opens the next period: prev_quasi == settlement and w == 1. The
// ex-dividend flag is raised when the ex-dividend date (explicit, or the
// default rule applied to next_quasi) lies inside the current period and
// strictly before the settlement.
//
// Throws std::out_of_range when the settlement precedes the schedule or
// falls on or after maturity.
SettlementContext locate(const CouponSchedule& schedule, CivilDate settlement,
                         DayCountConvention convention,
                         std::optional<CivilDate> exdiv_date);

// Seven business-day steps back from the coupon date, weekends skipped.
// Public holidays are not modelled; callers needing an exchange-accurate
// date pass it to locate() explicitly.
CivilDate default_exdiv_date(CivilDate next_coupon);

}  // namespace couponclock
