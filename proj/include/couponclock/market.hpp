#pragma once

#include <span>
#include <string>
#include <vector>

#include "couponclock/pricing.hpp"

namespace couponclock {

// One row of a clean-price quote file. Columns:
//   gilt_name,date,clean_price,dirty_price,accrued_interest,yield_pct
// dirty_price and accrued_interest may be blank; yield_pct is a percentage
// (0.693781 means 0.693781%).
struct QuoteRow {
    std::string gilt_name;
    CivilDate date;
    double clean_price = 0.0;
    std::optional<double> dirty_published;
    std::optional<double> accrued_published;
    double annual_yield_pct = 0.0;
};

// Strict parser: exact header, 6 fields per row, throws std::invalid_argument
// naming the 1-based physical line of the first problem. Blank lines are
// skipped, CRLF endings tolerated.
std::vector<QuoteRow> parse_quotes(std::string_view csv_text);

struct QuoteParseReport {
    std::vector<QuoteRow> rows;
    std::vector<std::string> errors;  // one "line N: ..." entry per rejected row
};

// Same grammar, but collects bad rows instead of throwing.
QuoteParseReport parse_quotes_lenient(std::string_view csv_text);

// Inverse of parse_quotes: values rendered at 6 decimals round-trip exactly.
std::string render_quotes(std::span<const QuoteRow> rows);

// Reference bonds.
BondSpec gilt_2015();  // 8% coupon, semi-annual, 7 Jun / 7 Dec, matures 07-Dec-2015
BondSpec gilt_2022();  // 0.5% coupon, semi-annual, 22 Jan / 22 Jul, matures 22-Jul-2022

// Published July-2017 close-of-business quotes for the 2022 gilt.
std::vector<QuoteRow> gilt_2022_quotes_july2017();

struct ReplicationRow {
    CivilDate date;
    long days_to_next = 0;            // r
    double fraction_remaining = 0.0;  // w
    double discount_ratio = 0.0;      // q
    double dirty_street = 0.0;
    double dirty_treasury = 0.0;
    double dirty_dmo = 0.0;
    double accrued = 0.0;
    std::optional<double> diff_dmo;     // published dirty - dirty_dmo
    std::optional<double> diff_street;  // published dirty - dirty_street
};

// Price every quote with all three conventions at the row's own yield.
// exponent_override pins the closed forms' N (the published 2017 gilt table
// used 12 throughout); nullopt derives N from the schedule, under which the
// street and treasury prices coincide by construction.
std::vector<ReplicationRow> compute_replication(
    const BondSpec& bond, std::span<const QuoteRow> quotes,
    std::optional<int> exponent_override,
    DayCountConvention convention = DayCountConvention::ActualActual);

// compute_replication on the 2022 gilt; quotes must settle inside the
// 22-Jan-2017 .. 22-Jul-2017 coupon period the published table covers.
std::vector<ReplicationRow> replicate_gilt2022(std::span<const QuoteRow> quotes,
                                               std::optional<int> exponent_override);

struct Gilt2015Scenario {
    int scenario = 0;
    CivilDate settlement;
    long days_to_next = 0;            // r
    long days_in_period = 0;          // s
    double fraction_remaining = 0.0;  // w
    int exponent_count = 0;
    bool ex_dividend = false;
    double discount_ratio = 0.0;
    double dirty = 0.0;
    double dirty_published = 0.0;
};

// The four published settlement scenarios for the 2015 gilt at a 4.445%
// yield: two cum-dividend dates, one ex-dividend date, and a settlement on
// the coupon date itself. Priced with the treasury convention and the
// published 26-May-1999 ex-dividend date.
std::vector<Gilt2015Scenario> replicate_gilt2015();

// CSV renderings, 6-decimal fixed point, blank cells for absent diffs.
std::string render_replication_csv(std::span<const ReplicationRow> rows);
std::string render_gilt2015_csv(std::span<const Gilt2015Scenario> rows);

}  // namespace couponclock
