#include "couponclock/market.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "couponclock/text.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace couponclock;
using testsupport::rel_diff;

namespace {

bool contains(const std::string& haystack, std::string_view needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("reference bonds are well formed") {
    CHECK_NOTHROW(validate_bond(gilt_2015()));
    CHECK_NOTHROW(validate_bond(gilt_2022()));
    CHECK(gilt_2015().annual_coupon_rate == 0.08);
    CHECK(gilt_2022().annual_coupon_rate == 0.005);
    CHECK(gilt_2022().issue_date == CivilDate{2017, 4, 21});

    auto quotes = gilt_2022_quotes_july2017();
    REQUIRE(quotes.size() == 8);
    CHECK(quotes.front().date == CivilDate{2017, 7, 3});
    CHECK(quotes.front().clean_price == 99.04);
    CHECK(quotes.front().dirty_published == 99.26514);
    CHECK(quotes.front().accrued_published == 0.225138);
    CHECK(quotes.front().annual_yield_pct == 0.693781);
    CHECK(quotes.back().date == CivilDate{2017, 7, 12});
    for (const QuoteRow& q : quotes) CHECK(q.gilt_name == "0.5% Treasury Gilt 2022");
}

TEST_CASE("quotes render and parse back unchanged") {
    auto quotes = gilt_2022_quotes_july2017();
    std::string csv = render_quotes(quotes);
    auto parsed = parse_quotes(csv);
    REQUIRE(parsed.size() == quotes.size());
    for (size_t k = 0; k < quotes.size(); ++k) {
        CHECK(parsed[k].gilt_name == quotes[k].gilt_name);
        CHECK(parsed[k].date == quotes[k].date);
        CHECK(parsed[k].clean_price == quotes[k].clean_price);
        CHECK(parsed[k].dirty_published == quotes[k].dirty_published);
        CHECK(parsed[k].accrued_published == quotes[k].accrued_published);
        CHECK(parsed[k].annual_yield_pct == quotes[k].annual_yield_pct);
    }
}

TEST_CASE("quote parser grammar") {
    const std::string header = "gilt_name,date,clean_price,dirty_price,accrued_interest,yield_pct";

    SUBCASE("blank optional columns stay empty") {
        auto rows = parse_quotes(header + "\nsome gilt,2017-07-03,99.04,,,0.693781\n");
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].gilt_name == "some gilt");
        CHECK_FALSE(rows[0].dirty_published.has_value());
        CHECK_FALSE(rows[0].accrued_published.has_value());
        CHECK(rows[0].annual_yield_pct == 0.693781);
    }
    SUBCASE("windows line endings and blank lines are tolerated") {
        auto rows = parse_quotes("\r\n" + header + "\r\n\r\ng,03-Jul-17,99.04,,,0.6938\r\n\r\n");
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].date == CivilDate{2017, 7, 3});
    }
    SUBCASE("errors name the physical line") {
        std::string text = header + "\ng,2017-07-03,99.04,,,0.69\ng,2017-07-04,not_a_price,,,0.66\n";
        CHECK_THROWS_WITH_AS(parse_quotes(text),
                             doctest::Contains("line 3"), std::invalid_argument);
    }
    SUBCASE("wrong column count is rejected") {
        CHECK_THROWS_WITH_AS(parse_quotes(header + "\ng,2017-07-03,99.04,0.69\n"),
                             doctest::Contains("6 fields"), std::invalid_argument);
    }
    SUBCASE("unknown header is rejected") {
        CHECK_THROWS_WITH_AS(parse_quotes("name,price\ng,99.04\n"),
                             doctest::Contains("header"), std::invalid_argument);
    }
    SUBCASE("empty input is rejected") {
        CHECK_THROWS_AS(parse_quotes(""), std::invalid_argument);
        CHECK_THROWS_AS(parse_quotes("\n\n"), std::invalid_argument);
    }
    SUBCASE("prices must be positive, dates valid") {
        CHECK_THROWS_AS(parse_quotes(header + "\ng,2017-07-03,-1.0,,,0.69\n"),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse_quotes(header + "\ng,2017-02-30,99.0,,,0.69\n"),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse_quotes(header + "\n,2017-07-03,99.0,,,0.69\n"),
                        std::invalid_argument);
    }
    SUBCASE("lenient parser keeps the good rows") {
        std::string text = header +
                           "\ng,2017-07-03,99.04,,,0.69"
                           "\ng,2017-07-04,bad,,,0.66"
                           "\ng,2017-07-05,99.28,,,0.64\n";
        QuoteParseReport report = parse_quotes_lenient(text);
        CHECK(report.rows.size() == 2);
        REQUIRE(report.errors.size() == 1);
        CHECK(contains(report.errors[0], "line 3"));
        // a broken header is not recoverable
        CHECK_THROWS_AS(parse_quotes_lenient("bogus\n"), std::invalid_argument);
    }
}

TEST_CASE("1999 settlement scenarios replicate the published dirty prices") {
    auto rows = replicate_gilt2015();
    REQUIRE(rows.size() == 4);

    const long expected_r[] = {14, 12, 11, 183};
    const long expected_s[] = {182, 182, 182, 183};
    const int expected_n[] = {33, 33, 33, 32};
    const bool expected_exdiv[] = {false, false, true, false};
    for (int k = 0; k < 4; ++k) {
        CHECK(rows[k].scenario == k + 1);
        CHECK(rows[k].days_to_next == expected_r[k]);
        CHECK(rows[k].days_in_period == expected_s[k]);
        CHECK(rows[k].exponent_count == expected_n[k]);
        CHECK(rows[k].ex_dividend == expected_exdiv[k]);
        CHECK(std::fabs(rows[k].dirty - rows[k].dirty_published) < 5e-6);
        CHECK(format_fixed(rows[k].discount_ratio, 6) == "0.978258");
    }
    CHECK(rows[0].settlement == CivilDate{1999, 5, 24});
    CHECK(rows[3].settlement == CivilDate{1999, 6, 7});
    CHECK(rows[3].fraction_remaining == 1.0);
    CHECK(rows[0].dirty_published == 145.012268);
    CHECK(rows[1].dirty_published == 145.047301);
    CHECK(rows[2].dirty_published == 141.070132);
    CHECK(rows[3].dirty_published == 141.257676);
}

TEST_CASE("2017 published table replication with the pinned exponent") {
    auto quotes = gilt_2022_quotes_july2017();
    auto rows = replicate_gilt2022(quotes, 12);
    REQUIRE(rows.size() == 8);

    const long expected_r[] = {19, 18, 17, 16, 15, 12, 11, 10};
    const char* expected_w[] = {"0.104972", "0.099448", "0.093923", "0.088398",
                                "0.082873", "0.066298", "0.060773", "0.055249"};
    for (int k = 0; k < 8; ++k) {
        CHECK(rows[k].days_to_next == expected_r[k]);
        CHECK(format_fixed(rows[k].fraction_remaining, 6) == expected_w[k]);
        CHECK(rel_diff(rows[k].dirty_dmo, rows[k].dirty_treasury) < 1e-12);
        CHECK(rows[k].dirty_street > rows[k].dirty_treasury);
        REQUIRE(rows[k].diff_dmo.has_value());
        REQUIRE(rows[k].diff_street.has_value());
        CHECK(*rows[k].diff_street < *rows[k].diff_dmo);
        // diff columns are the stored subtraction, nothing re-rounded
        CHECK(*rows[k].diff_dmo == *quotes[k].dirty_published - rows[k].dirty_dmo);
        CHECK(*rows[k].diff_street == *quotes[k].dirty_published - rows[k].dirty_street);
        // published accrued follows the simple pro-rata rule, except the
        // fifth row, which the source table misprints (0.233425 for 0.230663)
        double published_ai = *quotes[k].accrued_published;
        if (k == 4) {
            CHECK(std::fabs(rows[k].accrued - 0.230663) < 5e-6);
            CHECK(std::fabs(rows[k].accrued - published_ai) > 2e-3);
        } else {
            CHECK(std::fabs(rows[k].accrued - published_ai) < 5e-6);
        }
    }
    // first row, frozen at six decimals
    CHECK(format_fixed(rows[0].discount_ratio, 6) == "0.996543");
    CHECK(format_fixed(rows[0].dirty_street, 6) == "99.170002");
    CHECK(format_fixed(rows[0].dirty_treasury, 6) == "99.077089");
    CHECK(format_fixed(rows[0].dirty_dmo, 6) == "99.077089");
    CHECK(format_fixed(rows[0].accrued, 6) == "0.225138");
    CHECK(format_fixed(*rows[0].diff_dmo, 6) == "0.188051");
    CHECK(format_fixed(*rows[0].diff_street, 6) == "0.095138");
}

TEST_CASE("2017 replication with schedule-derived exponents") {
    auto quotes = gilt_2022_quotes_july2017();
    auto rows = replicate_gilt2022(quotes, std::nullopt);
    REQUIRE(rows.size() == 8);
    for (const ReplicationRow& row : rows) {
        CHECK(row.dirty_street == row.dirty_treasury);  // same formula, shifted index
        CHECK(rel_diff(row.dirty_dmo, row.dirty_treasury) < 1e-12);
        REQUIRE(row.diff_dmo.has_value());
        // the schedule-derived price sits within a cent of the quoted dirty
        CHECK(std::fabs(*row.diff_dmo) < 0.01);
    }
    CHECK(rows[0].dirty_treasury == doctest::Approx(99.263237).epsilon(1e-7));
    CHECK(std::fabs(*rows[0].diff_dmo - 0.001903) < 2e-5);
}

TEST_CASE("2017 replication rejects out-of-period quotes") {
    auto quotes = gilt_2022_quotes_july2017();
    quotes[0].date = CivilDate{2017, 7, 22};
    CHECK_THROWS_AS(replicate_gilt2022(quotes, 12), std::invalid_argument);
    quotes[0].date = CivilDate{2017, 1, 21};
    CHECK_THROWS_AS(replicate_gilt2022(quotes, 12), std::invalid_argument);
    quotes[0].date = CivilDate{2017, 1, 22};
    CHECK_NOTHROW(replicate_gilt2022(quotes, 12));
}

TEST_CASE("generic replication prices any bond's quotes") {
    QuoteRow quote;
    quote.gilt_name = "8% Treasury 2015";
    quote.date = CivilDate{1999, 5, 24};
    quote.clean_price = 141.297983;
    quote.annual_yield_pct = 4.445;
    auto rows = compute_replication(gilt_2015(), std::vector<QuoteRow>{quote}, std::nullopt);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].days_to_next == 14);
    CHECK(rows[0].dirty_treasury == doctest::Approx(145.012268).epsilon(5e-8));
    CHECK(rows[0].dirty_street == rows[0].dirty_treasury);
    CHECK_FALSE(rows[0].diff_dmo.has_value());
    CHECK_FALSE(rows[0].diff_street.has_value());
}

TEST_CASE("replication tables render as csv") {
    auto rows = replicate_gilt2022(gilt_2022_quotes_july2017(), 12);
    std::string csv = render_replication_csv(rows);
    CHECK(contains(csv,
                   "date,r,w,q,dirty_street,dirty_treasury,dirty_dmo,accrued,"
                   "diff_dmo,diff_street\n"));
    CHECK(contains(csv,
                   "2017-07-03,19,0.104972,0.996543,99.170002,99.077089,99.077089,"
                   "0.225138,0.188051,0.095138\n"));

    QuoteRow bare;
    bare.gilt_name = "g";
    bare.date = CivilDate{2017, 7, 3};
    bare.clean_price = 99.04;
    bare.annual_yield_pct = 0.693781;
    std::string no_diffs =
        render_replication_csv(compute_replication(gilt_2022(), std::vector<QuoteRow>{bare}, 12));
    CHECK(contains(no_diffs, "0.225138,,\n"));  // absent diffs stay blank

    // every field of the rendered table re-parses with the quote-file primitives
    size_t start = csv.find('\n') + 1;
    int reparsed = 0;
    while (start < csv.size()) {
        size_t nl = csv.find('\n', start);
        auto fields = split_fields(std::string_view(csv).substr(start, nl - start), ',');
        REQUIRE(fields.size() == 10);
        CHECK_NOTHROW(parse_flexible_date(fields[0]));
        CHECK_NOTHROW(parse_long_field(fields[1]));
        for (size_t k = 2; k < fields.size(); ++k) CHECK_NOTHROW(parse_double_field(fields[k]));
        start = nl + 1;
        ++reparsed;
    }
    CHECK(reparsed == 8);

    std::string scenarios = render_gilt2015_csv(replicate_gilt2015());
    CHECK(contains(scenarios, "scenario,settlement,r,s,w,n,ex_dividend,q,dirty,dirty_published,diff\n"));
    CHECK(contains(scenarios, "1,1999-05-24,14,182,"));
    CHECK(contains(scenarios, ",33,no,0.978258,145.012268,145.012268,0.000000\n"));
    CHECK(contains(scenarios, ",33,yes,0.978258,141.070132,141.070132,"));
    CHECK(contains(scenarios, "4,1999-06-07,183,183,1.000000,32,no,"));
}
