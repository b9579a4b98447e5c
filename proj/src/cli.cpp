#include "couponclock/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "couponclock/calendar.hpp"
#include "couponclock/market.hpp"
#include "couponclock/pricing.hpp"
#include "couponclock/text.hpp"

namespace couponclock::cli {

namespace {

// Thrown while interpreting flag values; maps to exit code 2.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Table, Csv };

// Flag wins over COUPONCLOCK_OUTPUT, which wins over the table default.
OutputFormat resolve_output(const std::string& flag_value) {
    std::string value = flag_value;
    if (value.empty()) {
        const char* env = std::getenv("COUPONCLOCK_OUTPUT");
        if (env != nullptr && *env != '\0') value = env;
    }
    if (value.empty() || value == "table") return OutputFormat::Table;
    if (value == "csv") return OutputFormat::Csv;
    throw usage_error("invalid output format '" + value + "' (expected table or csv)");
}

// Interpret a flag's string through a throwing parser, renaming the error
// after the flag so usage messages point at what was typed.
template <typename Fn>
auto interpret(const char* flag, Fn&& fn) {
    try {
        return fn();
    } catch (const usage_error&) {
        throw;
    } catch (const std::exception& e) {
        throw usage_error(std::string(flag) + ": " + e.what());
    }
}

struct BondFlags {
    double face = 100.0;
    double coupon_pct = 0.0;
    int frequency = 2;
    std::string maturity;
    std::string day1;
    std::string day2;
};

void add_bond_flags(CLI::App* cmd, BondFlags& flags) {
    cmd->add_option("--face", flags.face, "face value (default 100)");
    cmd->add_option("--coupon", flags.coupon_pct, "annual coupon rate, percent")->required();
    cmd->add_option("--freq", flags.frequency, "coupons per year: 1, 2, 4 or 12 (default 2)");
    cmd->add_option("--maturity", flags.maturity, "maturity date")->required();
    cmd->add_option("--coupon-day1", flags.day1, "coupon anchor, MM-DD");
    cmd->add_option("--coupon-day2", flags.day2, "second coupon anchor, MM-DD");
}

BondSpec interpret_bond(const BondFlags& flags) {
    BondSpec bond;
    bond.face = flags.face;
    bond.annual_coupon_rate = flags.coupon_pct / 100.0;
    bond.frequency = flags.frequency;
    bond.maturity = interpret("--maturity", [&] { return parse_flexible_date(flags.maturity); });
    if (!flags.day1.empty())
        bond.coupon_anchors.push_back(
            interpret("--coupon-day1", [&] { return parse_month_day(flags.day1); }));
    if (!flags.day2.empty())
        bond.coupon_anchors.push_back(
            interpret("--coupon-day2", [&] { return parse_month_day(flags.day2); }));
    interpret("bond terms", [&] { validate_bond(bond); return 0; });
    return bond;
}

DayCountConvention interpret_day_count(const std::string& name) {
    if (name.empty()) return DayCountConvention::ActualActual;
    return interpret("--day-count", [&] { return parse_day_count(name); });
}

std::string padded(std::string text, size_t width) {
    if (text.size() < width) text.append(width - text.size(), ' ');
    return text;
}

void print_breakdown(std::ostream& out, const PriceBreakdown& b, OutputFormat format) {
    const char* exdiv = b.ex_dividend ? "yes" : "no";
    if (format == OutputFormat::Csv) {
        out << "dirty,accrued,clean,method,w,q,n,ex_dividend\n"
            << format_fixed(b.dirty, 6) << ',' << format_fixed(b.accrued, 6) << ','
            << format_fixed(b.clean, 6) << ',' << method_name(b.method) << ','
            << format_fixed(b.fraction_remaining, 6) << ','
            << format_fixed(b.discount_ratio, 6) << ',' << b.exponent_count << ',' << exdiv
            << '\n';
        return;
    }
    out << "dirty     " << format_fixed(b.dirty, 6) << '\n'
        << "accrued   " << format_fixed(b.accrued, 6) << '\n'
        << "clean     " << format_fixed(b.clean, 6) << '\n'
        << "method    " << method_name(b.method) << '\n'
        << "w         " << format_fixed(b.fraction_remaining, 6) << '\n'
        << "q         " << format_fixed(b.discount_ratio, 6) << '\n'
        << "n         " << b.exponent_count << '\n'
        << "ex-div    " << exdiv << '\n';
}

void print_replication(std::ostream& out, std::span<const ReplicationRow> rows,
                       OutputFormat format) {
    if (format == OutputFormat::Csv) {
        out << render_replication_csv(rows);
        return;
    }
    out << padded("date", 12) << padded("r", 5) << padded("w", 10) << padded("q", 10)
        << padded("street", 12) << padded("treasury", 12) << padded("dmo", 12)
        << padded("accrued", 10) << padded("diff_dmo", 10) << "diff_street\n";
    for (const ReplicationRow& r : rows) {
        out << padded(to_iso_string(r.date), 12) << padded(std::to_string(r.days_to_next), 5)
            << padded(format_fixed(r.fraction_remaining, 6), 10)
            << padded(format_fixed(r.discount_ratio, 6), 10)
            << padded(format_fixed(r.dirty_street, 6), 12)
            << padded(format_fixed(r.dirty_treasury, 6), 12)
            << padded(format_fixed(r.dirty_dmo, 6), 12)
            << padded(format_fixed(r.accrued, 6), 10)
            << padded(r.diff_dmo ? format_fixed(*r.diff_dmo, 6) : "-", 10)
            << (r.diff_street ? format_fixed(*r.diff_street, 6) : "-") << '\n';
    }
}

void print_gilt2015(std::ostream& out, std::span<const Gilt2015Scenario> rows,
                    OutputFormat format) {
    if (format == OutputFormat::Csv) {
        out << render_gilt2015_csv(rows);
        return;
    }
    out << padded("scenario", 10) << padded("settlement", 12) << padded("r", 5)
        << padded("s", 5) << padded("w", 10) << padded("n", 4) << padded("ex-div", 8)
        << padded("q", 10) << padded("dirty", 12) << padded("published", 12) << "diff\n";
    for (const Gilt2015Scenario& s : rows) {
        out << padded(std::to_string(s.scenario), 10) << padded(to_iso_string(s.settlement), 12)
            << padded(std::to_string(s.days_to_next), 5)
            << padded(std::to_string(s.days_in_period), 5)
            << padded(format_fixed(s.fraction_remaining, 6), 10)
            << padded(std::to_string(s.exponent_count), 4)
            << padded(s.ex_dividend ? "yes" : "no", 8)
            << padded(format_fixed(s.discount_ratio, 6), 10)
            << padded(format_fixed(s.dirty, 6), 12)
            << padded(format_fixed(s.dirty_published, 6), 12)
            << format_fixed(s.dirty_published - s.dirty, 6) << '\n';
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"settlement-date bond pricing with street, treasury and DMO closed forms"};
    app.name("couponclock");
    app.require_subcommand(1);

    // price
    CLI::App* price_cmd = app.add_subcommand("price", "price a bond for a settlement date");
    BondFlags price_bond_flags;
    add_bond_flags(price_cmd, price_bond_flags);
    std::string price_settle, price_method{"treasury"}, price_day_count, price_exdiv,
        price_output;
    double price_yield = 0.0;
    int price_n = -1;
    bool price_exclusive = false;
    price_cmd->add_option("--settle", price_settle, "settlement date")->required();
    price_cmd->add_option("--yield", price_yield, "annual yield, percent")->required();
    price_cmd->add_option("--method", price_method,
                          "street, treasury or dmo (default treasury)");
    price_cmd->add_option("--n", price_n, "pin the closed form's exponent count");
    price_cmd->add_option("--exdiv-date", price_exdiv, "explicit ex-dividend date");
    price_cmd->add_option("--day-count", price_day_count,
                          "actact, 30-360 or act-360 (default actact)");
    price_cmd->add_flag("--exclusive-days", price_exclusive,
                        "do not count the settlement day when accruing");
    price_cmd->add_option("--output", price_output, "table or csv");

    // accrued
    CLI::App* accrued_cmd = app.add_subcommand("accrued", "accrued interest for a settlement");
    double accrued_face = 100.0, accrued_coupon_pct = 0.0;
    int accrued_freq = 2;
    std::string accrued_start, accrued_end, accrued_settle, accrued_day_count, accrued_output;
    bool accrued_exclusive = false;
    accrued_cmd->add_option("--face", accrued_face, "face value (default 100)");
    accrued_cmd->add_option("--coupon", accrued_coupon_pct, "annual coupon rate, percent")
        ->required();
    accrued_cmd->add_option("--freq", accrued_freq, "coupons per year (default 2)");
    accrued_cmd->add_option("--period-start", accrued_start, "coupon period start")->required();
    accrued_cmd->add_option("--period-end", accrued_end, "coupon period end")->required();
    accrued_cmd->add_option("--settle", accrued_settle, "settlement date")->required();
    accrued_cmd->add_option("--day-count", accrued_day_count,
                            "actact, 30-360 or act-360 (default actact)");
    accrued_cmd->add_flag("--exclusive-days", accrued_exclusive,
                          "do not count the settlement day when accruing");
    accrued_cmd->add_option("--output", accrued_output, "table or csv");

    // schedule
    CLI::App* schedule_cmd =
        app.add_subcommand("schedule", "quasi-coupon dates, optionally locating a settlement");
    std::string schedule_maturity, schedule_anchor, schedule_settle, schedule_exdiv,
        schedule_day_count, schedule_output;
    int schedule_freq = 2, schedule_periods = 0;
    schedule_cmd->add_option("--maturity", schedule_maturity, "maturity date")->required();
    schedule_cmd->add_option("--freq", schedule_freq, "coupons per year (default 2)");
    schedule_cmd->add_option("--periods", schedule_periods, "number of dates to generate")
        ->required();
    schedule_cmd->add_option("--anchor", schedule_anchor, "anchor MM-DD for the day of month");
    schedule_cmd->add_option("--settle", schedule_settle, "settlement date to locate");
    schedule_cmd->add_option("--exdiv-date", schedule_exdiv, "explicit ex-dividend date");
    schedule_cmd->add_option("--day-count", schedule_day_count,
                             "actact, 30-360 or act-360 (default actact)");
    schedule_cmd->add_option("--output", schedule_output, "table or csv");

    // batch
    CLI::App* batch_cmd =
        app.add_subcommand("batch", "price a quote file with all three conventions");
    BondFlags batch_bond_flags;
    add_bond_flags(batch_cmd, batch_bond_flags);
    std::string batch_file, batch_day_count, batch_output;
    int batch_n = -1;
    batch_cmd->add_option("--in", batch_file, "quote CSV file")->required();
    batch_cmd->add_option("--n", batch_n, "pin the closed forms' exponent count");
    batch_cmd->add_option("--day-count", batch_day_count,
                          "actact, 30-360 or act-360 (default actact)");
    batch_cmd->add_option("--output", batch_output, "table or csv");

    // replicate
    CLI::App* replicate_cmd =
        app.add_subcommand("replicate", "reproduce the published DMO gilt tables");
    std::string replicate_which, replicate_file, replicate_output;
    bool replicate_paper_n = false;
    replicate_cmd->add_option("table", replicate_which, "gilt2015 or gilt2022")->required();
    replicate_cmd->add_flag("--paper-n", replicate_paper_n,
                            "pin N = 12 as the published 2022 table did");
    replicate_cmd->add_option("--in", replicate_file,
                              "quote CSV to price instead of the embedded 2017 rows");
    replicate_cmd->add_option("--output", replicate_output, "table or csv");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (price_cmd->parsed()) {
            OutputFormat format = resolve_output(price_output);
            BondSpec bond = interpret_bond(price_bond_flags);
            CivilDate settle =
                interpret("--settle", [&] { return parse_flexible_date(price_settle); });
            PricingMethod method =
                interpret("--method", [&] { return parse_method(price_method); });
            DayCountConvention convention = interpret_day_count(price_day_count);
            PricingOverrides overrides;
            if (price_cmd->count("--n") > 0) overrides.exponent_count = price_n;
            if (!price_exdiv.empty())
                overrides.exdiv_date =
                    interpret("--exdiv-date", [&] { return parse_flexible_date(price_exdiv); });
            overrides.inclusive_accrual_days = !price_exclusive;
            PriceBreakdown b =
                price_bond(bond, settle, price_yield / 100.0, method, overrides, convention);
            print_breakdown(out, b, format);
        } else if (accrued_cmd->parsed()) {
            OutputFormat format = resolve_output(accrued_output);
            CivilDate start =
                interpret("--period-start", [&] { return parse_flexible_date(accrued_start); });
            CivilDate end =
                interpret("--period-end", [&] { return parse_flexible_date(accrued_end); });
            CivilDate settle =
                interpret("--settle", [&] { return parse_flexible_date(accrued_settle); });
            DayCountConvention convention = interpret_day_count(accrued_day_count);
            if (accrued_freq != 1 && accrued_freq != 2 && accrued_freq != 4 &&
                accrued_freq != 12)
                throw usage_error("--freq: must be 1, 2, 4 or 12");
            if (!(start < end)) throw usage_error("--period-start must precede --period-end");
            if (settle < start || settle >= end)
                throw std::out_of_range("settlement " + to_iso_string(settle) +
                                        " outside the period " + to_iso_string(start) + " .. " +
                                        to_iso_string(end));
            long s = day_count(start, end, convention);
            long r = day_count(settle, end, convention);
            long days = s - r + (accrued_exclusive ? 0 : 1);
            double accrued = accrued_interest(accrued_face,
                                              accrued_coupon_pct / 100.0 / accrued_freq, days, s);
            if (format == OutputFormat::Csv) {
                out << "days_accrued,days_in_period,accrued\n"
                    << days << ',' << s << ',' << format_fixed(accrued, 6) << '\n';
            } else {
                out << "accrued   " << format_fixed(accrued, 6) << '\n'
                    << "days      " << days << '/' << s << '\n';
            }
        } else if (schedule_cmd->parsed()) {
            OutputFormat format = resolve_output(schedule_output);
            CivilDate maturity = interpret(
                "--maturity", [&] { return parse_flexible_date(schedule_maturity); });
            std::optional<CivilDate> anchor;
            if (!schedule_anchor.empty()) {
                MonthDay md =
                    interpret("--anchor", [&] { return parse_month_day(schedule_anchor); });
                anchor = CivilDate{maturity.year, md.month, md.day};
            }
            CouponSchedule schedule = interpret("schedule flags", [&] {
                return build_schedule(maturity, schedule_freq, anchor, schedule_periods);
            });
            if (schedule_settle.empty()) {
                if (format == OutputFormat::Csv) {
                    out << "index,date\n";
                    for (size_t k = 0; k < schedule.quasi_coupon_dates.size(); ++k)
                        out << k << ',' << to_iso_string(schedule.quasi_coupon_dates[k]) << '\n';
                } else {
                    for (CivilDate d : schedule.quasi_coupon_dates)
                        out << to_iso_string(d) << '\n';
                }
            } else {
                CivilDate settle =
                    interpret("--settle", [&] { return parse_flexible_date(schedule_settle); });
                std::optional<CivilDate> exdiv;
                if (!schedule_exdiv.empty())
                    exdiv = interpret("--exdiv-date",
                                      [&] { return parse_flexible_date(schedule_exdiv); });
                DayCountConvention convention = interpret_day_count(schedule_day_count);
                SettlementContext ctx = locate(schedule, settle, convention, exdiv);
                const char* flag = ctx.ex_dividend ? "yes" : "no";
                if (format == OutputFormat::Csv) {
                    out << "prev_quasi,next_quasi,r,s,w,days_accrued,n_remaining,ex_dividend\n"
                        << to_iso_string(ctx.prev_quasi) << ',' << to_iso_string(ctx.next_quasi)
                        << ',' << ctx.days_to_next << ',' << ctx.days_in_period << ','
                        << format_fixed(ctx.fraction_remaining, 6) << ',' << ctx.days_accrued
                        << ',' << ctx.coupons_remaining << ',' << flag << '\n';
                } else {
                    out << "prev      " << to_iso_string(ctx.prev_quasi) << '\n'
                        << "next      " << to_iso_string(ctx.next_quasi) << '\n'
                        << "r         " << ctx.days_to_next << '\n'
                        << "s         " << ctx.days_in_period << '\n'
                        << "w         " << format_fixed(ctx.fraction_remaining, 6) << '\n'
                        << "days      " << ctx.days_accrued << '\n'
                        << "remaining " << ctx.coupons_remaining << '\n'
                        << "ex-div    " << flag << '\n';
                }
            }
        } else if (batch_cmd->parsed()) {
            OutputFormat format = resolve_output(batch_output);
            BondSpec bond = interpret_bond(batch_bond_flags);
            DayCountConvention convention = interpret_day_count(batch_day_count);
            std::optional<int> pin;
            if (batch_cmd->count("--n") > 0) pin = batch_n;
            std::vector<QuoteRow> quotes = parse_quotes(read_file(batch_file));
            std::vector<ReplicationRow> rows =
                compute_replication(bond, quotes, pin, convention);
            print_replication(out, rows, format);
        } else if (replicate_cmd->parsed()) {
            OutputFormat format = resolve_output(replicate_output);
            if (replicate_which == "gilt2015") {
                if (replicate_paper_n)
                    throw usage_error("--paper-n applies to the gilt2022 table only");
                if (!replicate_file.empty())
                    throw usage_error("--in applies to the gilt2022 table only");
                print_gilt2015(out, replicate_gilt2015(), format);
            } else if (replicate_which == "gilt2022") {
                std::vector<QuoteRow> quotes = replicate_file.empty()
                                                   ? gilt_2022_quotes_july2017()
                                                   : parse_quotes(read_file(replicate_file));
                std::optional<int> pin;
                if (replicate_paper_n) pin = 12;
                print_replication(out, replicate_gilt2022(quotes, pin), format);
            } else {
                throw usage_error("unknown table '" + replicate_which +
                                  "' (expected gilt2015 or gilt2022)");
            }
        }
        return 0;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace couponclock::cli
