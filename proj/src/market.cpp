#include "couponclock/market.hpp"

#include <stdexcept>

#include "couponclock/text.hpp"

namespace couponclock {

namespace {

constexpr std::string_view quote_header =
    "gilt_name,date,clean_price,dirty_price,accrued_interest,yield_pct";

QuoteRow parse_quote_fields(std::string_view line) {
    auto fields = split_fields(line, ',');
    if (fields.size() != 6)
        throw std::invalid_argument("expected 6 fields, found " +
                                    std::to_string(fields.size()));
    QuoteRow row;
    row.gilt_name = std::string(trim(fields[0]));
    if (row.gilt_name.empty()) throw std::invalid_argument("empty gilt name");
    row.date = parse_flexible_date(fields[1]);
    row.clean_price = parse_double_field(fields[2]);
    if (!(row.clean_price > 0.0)) throw std::invalid_argument("clean price must be positive");
    if (!trim(fields[3]).empty()) row.dirty_published = parse_double_field(fields[3]);
    if (!trim(fields[4]).empty()) row.accrued_published = parse_double_field(fields[4]);
    row.annual_yield_pct = parse_double_field(fields[5]);
    return row;
}

// Shared walk for the strict and lenient parsers. on_error returns true to
// continue, false to stop.
template <typename OnRow, typename OnError>
void scan_quotes(std::string_view csv_text, OnRow&& on_row, OnError&& on_error) {
    long line_no = 0;
    bool saw_header = false;
    size_t start = 0;
    while (start <= csv_text.size()) {
        size_t nl = csv_text.find('\n', start);
        std::string_view line = csv_text.substr(
            start, nl == std::string_view::npos ? csv_text.size() - start : nl - start);
        start = nl == std::string_view::npos ? csv_text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;
        if (!saw_header) {
            if (trim(line) != quote_header)
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": unexpected header (expected '" +
                                            std::string(quote_header) + "')");
            saw_header = true;
            continue;
        }
        try {
            on_row(parse_quote_fields(line));
        } catch (const std::exception& e) {
            if (!on_error("line " + std::to_string(line_no) + ": " + e.what())) return;
        }
    }
    if (!saw_header) throw std::invalid_argument("quote file has no header line");
}

}  // namespace

std::vector<QuoteRow> parse_quotes(std::string_view csv_text) {
    std::vector<QuoteRow> rows;
    scan_quotes(
        csv_text, [&](QuoteRow row) { rows.push_back(std::move(row)); },
        [](const std::string& message) -> bool { throw std::invalid_argument(message); });
    return rows;
}

QuoteParseReport parse_quotes_lenient(std::string_view csv_text) {
    QuoteParseReport report;
    scan_quotes(
        csv_text, [&](QuoteRow row) { report.rows.push_back(std::move(row)); },
        [&](std::string message) {
            report.errors.push_back(std::move(message));
            return true;
        });
    return report;
}

std::string render_quotes(std::span<const QuoteRow> rows) {
    std::string out{quote_header};
    out.push_back('\n');
    for (const QuoteRow& r : rows) {
        out += r.gilt_name;
        out.push_back(',');
        out += to_iso_string(r.date);
        out.push_back(',');
        out += format_fixed(r.clean_price, 6);
        out.push_back(',');
        if (r.dirty_published) out += format_fixed(*r.dirty_published, 6);
        out.push_back(',');
        if (r.accrued_published) out += format_fixed(*r.accrued_published, 6);
        out.push_back(',');
        out += format_fixed(r.annual_yield_pct, 6);
        out.push_back('\n');
    }
    return out;
}

BondSpec gilt_2015() {
    BondSpec bond;
    bond.face = 100.0;
    bond.annual_coupon_rate = 0.08;
    bond.frequency = 2;
    bond.maturity = CivilDate{2015, 12, 7};
    bond.coupon_anchors = {MonthDay{6, 7}, MonthDay{12, 7}};
    return bond;
}

BondSpec gilt_2022() {
    BondSpec bond;
    bond.face = 100.0;
    bond.annual_coupon_rate = 0.005;
    bond.frequency = 2;
    bond.maturity = CivilDate{2022, 7, 22};
    bond.coupon_anchors = {MonthDay{1, 22}, MonthDay{7, 22}};
    bond.issue_date = CivilDate{2017, 4, 21};
    return bond;
}

std::vector<QuoteRow> gilt_2022_quotes_july2017() {
    auto mk = [](int day, double clean, double dirty, double accrued, double yield_pct) {
        QuoteRow r;
        r.gilt_name = "0.5% Treasury Gilt 2022";
        r.date = CivilDate{2017, 7, day};
        r.clean_price = clean;
        r.dirty_published = dirty;
        r.accrued_published = accrued;
        r.annual_yield_pct = yield_pct;
        return r;
    };
    return {mk(3, 99.04, 99.26514, 0.225138, 0.693781),
            mk(4, 99.18, 99.40652, 0.226519, 0.665481),
            mk(5, 99.28, 99.5079, 0.227901, 0.645297),
            mk(6, 98.94, 99.16928, 0.229282, 0.714435),
            mk(7, 99.08, 99.31343, 0.233425, 0.686271),
            mk(10, 99.24, 99.47481, 0.234807, 0.653822),
            mk(11, 99.16, 99.39619, 0.236188, 0.670183),
            mk(12, 99.19, 99.42757, 0.237569, 0.664167)};
}

std::vector<ReplicationRow> compute_replication(const BondSpec& bond,
                                                std::span<const QuoteRow> quotes,
                                                std::optional<int> exponent_override,
                                                DayCountConvention convention) {
    validate_bond(bond);
    PricingOverrides overrides;
    overrides.exponent_count = exponent_override;
    std::vector<ReplicationRow> out;
    out.reserve(quotes.size());
    for (const QuoteRow& quote : quotes) {
        double yield = quote.annual_yield_pct / 100.0;
        PriceBreakdown street =
            price_bond(bond, quote.date, yield, PricingMethod::Street, overrides, convention);
        PriceBreakdown treasury =
            price_bond(bond, quote.date, yield, PricingMethod::Treasury, overrides, convention);
        PriceBreakdown dmo =
            price_bond(bond, quote.date, yield, PricingMethod::DmoVariant, overrides, convention);
        ReplicationRow row;
        row.date = quote.date;
        row.days_to_next = treasury.days_to_next;
        row.fraction_remaining = treasury.fraction_remaining;
        row.discount_ratio = treasury.discount_ratio;
        row.dirty_street = street.dirty;
        row.dirty_treasury = treasury.dirty;
        row.dirty_dmo = dmo.dirty;
        row.accrued = treasury.accrued;
        if (quote.dirty_published) {
            row.diff_dmo = *quote.dirty_published - dmo.dirty;
            row.diff_street = *quote.dirty_published - street.dirty;
        }
        out.push_back(row);
    }
    return out;
}

std::vector<ReplicationRow> replicate_gilt2022(std::span<const QuoteRow> quotes,
                                               std::optional<int> exponent_override) {
    const CivilDate period_start{2017, 1, 22};
    const CivilDate period_end{2017, 7, 22};
    for (const QuoteRow& quote : quotes)
        if (quote.date < period_start || quote.date >= period_end)
            throw std::invalid_argument("quote dated " + to_iso_string(quote.date) +
                                        " lies outside the replication period " +
                                        to_iso_string(period_start) + " .. " +
                                        to_iso_string(period_end));
    return compute_replication(gilt_2022(), quotes, exponent_override,
                               DayCountConvention::ActualActual);
}

std::vector<Gilt2015Scenario> replicate_gilt2015() {
    const BondSpec bond = gilt_2015();
    const CivilDate published_exdiv{1999, 5, 26};
    struct Published {
        CivilDate settlement;
        double dirty;
    };
    const Published table[] = {{CivilDate{1999, 5, 24}, 145.012268},
                               {CivilDate{1999, 5, 26}, 145.047301},
                               {CivilDate{1999, 5, 27}, 141.070132},
                               {CivilDate{1999, 6, 7}, 141.257676}};
    PricingOverrides overrides;
    overrides.exdiv_date = published_exdiv;
    std::vector<Gilt2015Scenario> out;
    int number = 1;
    for (const Published& row : table) {
        PriceBreakdown b = price_bond(bond, row.settlement, 0.04445, PricingMethod::Treasury,
                                      overrides, DayCountConvention::ActualActual);
        Gilt2015Scenario s;
        s.scenario = number++;
        s.settlement = row.settlement;
        s.days_to_next = b.days_to_next;
        s.days_in_period = b.days_in_period;
        s.fraction_remaining = b.fraction_remaining;
        s.exponent_count = b.exponent_count;
        s.ex_dividend = b.ex_dividend;
        s.discount_ratio = b.discount_ratio;
        s.dirty = b.dirty;
        s.dirty_published = row.dirty;
        out.push_back(s);
    }
    return out;
}

std::string render_replication_csv(std::span<const ReplicationRow> rows) {
    std::string out =
        "date,r,w,q,dirty_street,dirty_treasury,dirty_dmo,accrued,diff_dmo,diff_street\n";
    for (const ReplicationRow& r : rows) {
        out += to_iso_string(r.date);
        out.push_back(',');
        out += std::to_string(r.days_to_next);
        out.push_back(',');
        out += format_fixed(r.fraction_remaining, 6);
        out.push_back(',');
        out += format_fixed(r.discount_ratio, 6);
        out.push_back(',');
        out += format_fixed(r.dirty_street, 6);
        out.push_back(',');
        out += format_fixed(r.dirty_treasury, 6);
        out.push_back(',');
        out += format_fixed(r.dirty_dmo, 6);
        out.push_back(',');
        out += format_fixed(r.accrued, 6);
        out.push_back(',');
        if (r.diff_dmo) out += format_fixed(*r.diff_dmo, 6);
        out.push_back(',');
        if (r.diff_street) out += format_fixed(*r.diff_street, 6);
        out.push_back('\n');
    }
    return out;
}

std::string render_gilt2015_csv(std::span<const Gilt2015Scenario> rows) {
    std::string out = "scenario,settlement,r,s,w,n,ex_dividend,q,dirty,dirty_published,diff\n";
    for (const Gilt2015Scenario& s : rows) {
        out += std::to_string(s.scenario);
        out.push_back(',');
        out += to_iso_string(s.settlement);
        out.push_back(',');
        out += std::to_string(s.days_to_next);
        out.push_back(',');
        out += std::to_string(s.days_in_period);
        out.push_back(',');
        out += format_fixed(s.fraction_remaining, 6);
        out.push_back(',');
        out += std::to_string(s.exponent_count);
        out.push_back(',');
        out += s.ex_dividend ? "yes" : "no";
        out.push_back(',');
        out += format_fixed(s.discount_ratio, 6);
        out.push_back(',');
        out += format_fixed(s.dirty, 6);
        out.push_back(',');
        out += format_fixed(s.dirty_published, 6);
        out.push_back(',');
        out += format_fixed(s.dirty_published - s.dirty, 6);
        out.push_back('\n');
    }
    return out;
}

}  // namespace couponclock
