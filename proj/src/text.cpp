#include "couponclock/text.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace couponclock {

std::string format_fixed(double value, int decimals) {
    if (decimals < 0 || decimals > 9)
        throw std::invalid_argument("format_fixed: decimals must be in 0..9");
    if (!std::isfinite(value))
        throw std::invalid_argument("format_fixed: value is not finite");
    static constexpr double scales[] = {1.0,  1e1, 1e2, 1e3, 1e4,
                                        1e5,  1e6, 1e7, 1e8, 1e9};
    double scaled = value * scales[decimals];
    if (std::fabs(scaled) >= 9.2e18)
        throw std::out_of_range("format_fixed: value too large for fixed rendering");
    long long units = std::llround(scaled);
    bool negative = units < 0;
    unsigned long long magnitude =
        negative ? ~static_cast<unsigned long long>(units) + 1ULL
                 : static_cast<unsigned long long>(units);
    std::string digits = std::to_string(magnitude);
    if (static_cast<int>(digits.size()) <= decimals)
        digits.insert(0, static_cast<size_t>(decimals) + 1 - digits.size(), '0');
    std::string out;
    if (negative && magnitude != 0) out.push_back('-');
    if (decimals == 0) {
        out += digits;
    } else {
        out.append(digits, 0, digits.size() - static_cast<size_t>(decimals));
        out.push_back('.');
        out.append(digits, digits.size() - static_cast<size_t>(decimals), std::string::npos);
    }
    return out;
}

double parse_double_field(std::string_view text) {
    std::string_view t = trim(text);
    if (t.empty()) throw std::invalid_argument("empty numeric field");
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw std::invalid_argument("malformed number '" + std::string(t) + "'");
    return value;
}

long parse_long_field(std::string_view text) {
    std::string_view t = trim(text);
    if (t.empty()) throw std::invalid_argument("empty integer field");
    long value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw std::invalid_argument("malformed integer '" + std::string(t) + "'");
    return value;
}

std::string_view trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace couponclock
