#include "couponclock/calendar.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "couponclock/text.hpp"

namespace couponclock {

namespace {

namespace chr = std::chrono;

chr::year_month_day to_ymd(CivilDate d) {
    return chr::year_month_day{chr::year{d.year}, chr::month{static_cast<unsigned>(d.month)},
                               chr::day{static_cast<unsigned>(d.day)}};
}

std::string describe(CivilDate d) {
    return std::to_string(d.year) + "-" + std::to_string(d.month) + "-" + std::to_string(d.day);
}

void require_valid(CivilDate d) {
    if (!is_valid_date(d)) throw std::invalid_argument("invalid date " + describe(d));
}

int parse_int_slice(std::string_view text, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw std::invalid_argument(std::string("malformed ") + what);
    return value;
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

int month_from_name(std::string_view token) {
    static constexpr std::array<std::string_view, 12> names{
        "jan", "feb", "mar", "apr", "may", "jun",
        "jul", "aug", "sep", "oct", "nov", "dec"};
    if (token.size() != 3) throw std::invalid_argument("malformed month name");
    std::string lower;
    for (char c : token) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (size_t k = 0; k < names.size(); ++k)
        if (lower == names[k]) return static_cast<int>(k) + 1;
    throw std::invalid_argument("unknown month name '" + std::string(token) + "'");
}

}  // namespace

bool is_leap_year(int year) { return chr::year{year}.is_leap(); }

int days_in_month(int year, int month) {
    if (month < 1 || month > 12)
        throw std::invalid_argument("month out of range: " + std::to_string(month));
    static constexpr std::array<int, 12> base{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int n = base[static_cast<size_t>(month - 1)];
    if (month == 2 && is_leap_year(year)) n = 29;
    return n;
}

bool is_valid_date(CivilDate d) {
    if (d.year < -9999 || d.year > 9999) return false;
    if (d.month < 1 || d.month > 12) return false;
    return d.day >= 1 && d.day <= days_in_month(d.year, d.month);
}

long to_serial(CivilDate d) {
    require_valid(d);
    return chr::sys_days{to_ymd(d)}.time_since_epoch().count();
}

CivilDate from_serial(long serial) {
    chr::year_month_day ymd{chr::sys_days{chr::days{serial}}};
    return CivilDate{static_cast<int>(ymd.year()),
                     static_cast<int>(static_cast<unsigned>(ymd.month())),
                     static_cast<int>(static_cast<unsigned>(ymd.day()))};
}

int weekday_index(CivilDate d) {
    require_valid(d);
    chr::weekday wd{chr::sys_days{to_ymd(d)}};
    return static_cast<int>(wd.iso_encoding()) - 1;
}

bool is_weekday(CivilDate d) { return weekday_index(d) < 5; }

CivilDate add_months_clamped(CivilDate d, int months, int anchor_day) {
    if (anchor_day < 1 || anchor_day > 31)
        throw std::invalid_argument("anchor day out of range: " + std::to_string(anchor_day));
    if (d.month < 1 || d.month > 12) throw std::invalid_argument("invalid date " + describe(d));
    int linear = d.year * 12 + (d.month - 1) + months;
    int year = linear / 12;
    int rem = linear % 12;
    if (rem < 0) {
        rem += 12;
        --year;
    }
    int month = rem + 1;
    int day = std::min(anchor_day, days_in_month(year, month));
    return CivilDate{year, month, day};
}

std::string to_iso_string(CivilDate d) {
    require_valid(d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

CivilDate parse_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
        !all_digits(text.substr(0, 4)) || !all_digits(text.substr(5, 2)) ||
        !all_digits(text.substr(8, 2)))
        throw std::invalid_argument("malformed date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    CivilDate d{parse_int_slice(text.substr(0, 4), "year"),
                parse_int_slice(text.substr(5, 2), "month"),
                parse_int_slice(text.substr(8, 2), "day")};
    require_valid(d);
    return d;
}

CivilDate parse_flexible_date(std::string_view text) {
    std::string_view t = trim(text);
    if (t.size() == 10 && all_digits(t.substr(0, 4))) return parse_iso_date(t);
    auto parts = split_fields(t, '-');
    if (parts.size() != 3)
        throw std::invalid_argument("malformed date '" + std::string(text) +
                                    "' (expected YYYY-MM-DD or DD-Mon-YY)");
    if (!all_digits(parts[0]) || parts[0].size() > 2)
        throw std::invalid_argument("malformed day in '" + std::string(text) + "'");
    int day = parse_int_slice(parts[0], "day");
    int month = month_from_name(parts[1]);
    int year = 0;
    if (all_digits(parts[2]) && parts[2].size() == 2) {
        year = parse_int_slice(parts[2], "year");
        year += year >= 69 ? 1900 : 2000;
    } else if (all_digits(parts[2]) && parts[2].size() == 4) {
        year = parse_int_slice(parts[2], "year");
    } else {
        throw std::invalid_argument("malformed year in '" + std::string(text) + "'");
    }
    CivilDate d{year, month, day};
    require_valid(d);
    return d;
}

MonthDay parse_month_day(std::string_view text) {
    std::string_view t = trim(text);
    if (t.size() != 5 || t[2] != '-' || !all_digits(t.substr(0, 2)) || !all_digits(t.substr(3, 2)))
        throw std::invalid_argument("malformed month-day '" + std::string(text) +
                                    "' (expected MM-DD)");
    MonthDay md{parse_int_slice(t.substr(0, 2), "month"), parse_int_slice(t.substr(3, 2), "day")};
    if (md.month < 1 || md.month > 12 || md.day < 1 || md.day > 31)
        throw std::invalid_argument("month-day out of range '" + std::string(text) + "'");
    return md;
}

DayCountConvention parse_day_count(std::string_view name) {
    if (name == "actact" || name == "act/act") return DayCountConvention::ActualActual;
    if (name == "30-360" || name == "30/360") return DayCountConvention::Thirty360;
    if (name == "act-360" || name == "act/360") return DayCountConvention::Actual360;
    throw std::invalid_argument("unknown day count '" + std::string(name) +
                                "' (expected actact, 30-360 or act-360)");
}

std::string_view day_count_name(DayCountConvention convention) {
    switch (convention) {
        case DayCountConvention::ActualActual: return "actact";
        case DayCountConvention::Thirty360: return "30-360";
        case DayCountConvention::Actual360: return "act-360";
    }
    throw std::invalid_argument("unknown day count convention");
}

long day_count(CivilDate d1, CivilDate d2, DayCountConvention convention) {
    require_valid(d1);
    require_valid(d2);
    if (d2 < d1)
        throw std::invalid_argument("day_count: " + to_iso_string(d2) + " precedes " +
                                    to_iso_string(d1));
    switch (convention) {
        case DayCountConvention::ActualActual:
        case DayCountConvention::Actual360:
            return to_serial(d2) - to_serial(d1);
        case DayCountConvention::Thirty360: {
            int a = d1.day;
            int b = d2.day;
            if (a == 31) a = 30;
            if (b == 31 && a == 30) b = 30;
            return (d2.year - d1.year) * 360L + (d2.month - d1.month) * 30L + (b - a);
        }
    }
    throw std::invalid_argument("unknown day count convention");
}

CouponSchedule build_schedule(CivilDate maturity, int frequency,
                              std::optional<CivilDate> anchor, int span_periods) {
    require_valid(maturity);
    if (frequency != 1 && frequency != 2 && frequency != 4 && frequency != 12)
        throw std::invalid_argument("frequency must be 1, 2, 4 or 12, not " +
                                    std::to_string(frequency));
    if (span_periods < 1 || span_periods > 12000)
        throw std::invalid_argument("span_periods must be in 1..12000, not " +
                                    std::to_string(span_periods));
    int anchor_day = anchor ? anchor->day : maturity.day;
    if (anchor_day < 1 || anchor_day > 31)
        throw std::invalid_argument("anchor day out of range: " + std::to_string(anchor_day));
    if (std::min(anchor_day, days_in_month(maturity.year, maturity.month)) != maturity.day)
        throw std::invalid_argument("anchor day " + std::to_string(anchor_day) +
                                    " conflicts with maturity " + to_iso_string(maturity));
    int step = 12 / frequency;
    CouponSchedule schedule;
    schedule.frequency = frequency;
    schedule.maturity = maturity;
    schedule.quasi_coupon_dates.resize(static_cast<size_t>(span_periods));
    for (int k = 0; k < span_periods; ++k)
        schedule.quasi_coupon_dates[static_cast<size_t>(span_periods - 1 - k)] =
            add_months_clamped(maturity, -step * k, anchor_day);
    return schedule;
}

SettlementContext locate(const CouponSchedule& schedule, CivilDate settlement,
                         DayCountConvention convention,
                         std::optional<CivilDate> exdiv_date) {
    const auto& dates = schedule.quasi_coupon_dates;
    if (dates.size() < 2)
        throw std::invalid_argument("schedule needs at least two quasi-coupon dates");
    require_valid(settlement);
    if (settlement < dates.front())
        throw std::out_of_range("settlement " + to_iso_string(settlement) +
                                " precedes the schedule start " + to_iso_string(dates.front()));
    if (settlement >= dates.back())
        throw std::out_of_range("settlement " + to_iso_string(settlement) +
                                " is on or after maturity " + to_iso_string(dates.back()));
    auto next_it = std::upper_bound(dates.begin(), dates.end(), settlement);
    CivilDate next = *next_it;
    CivilDate prev = *(next_it - 1);  // equals settlement on a quasi date

    SettlementContext ctx;
    ctx.prev_quasi = prev;
    ctx.next_quasi = next;
    ctx.days_to_next = day_count(settlement, next, convention);
    ctx.days_in_period = day_count(prev, next, convention);
    if (ctx.days_in_period < 1 || ctx.days_to_next < 1)
        throw std::invalid_argument("degenerate coupon period at " + to_iso_string(prev));
    ctx.fraction_remaining =
        static_cast<double>(ctx.days_to_next) / static_cast<double>(ctx.days_in_period);
    ctx.days_accrued = ctx.days_in_period - ctx.days_to_next + 1;
    ctx.coupons_remaining = static_cast<int>(dates.end() - next_it);
    CivilDate xd = exdiv_date ? *exdiv_date : default_exdiv_date(next);
    ctx.ex_dividend = prev < xd && xd < next && xd < settlement;
    return ctx;
}

CivilDate default_exdiv_date(CivilDate next_coupon) {
    long serial = to_serial(next_coupon);
    for (int steps = 7; steps > 0;) {
        --serial;
        if (is_weekday(from_serial(serial))) --steps;
    }
    return from_serial(serial);
}

}  // namespace couponclock
