#include "signdir/numeric_format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace signdir {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";  // folds -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, value);
    return buf;
}

double round_significant(double value, int digits) {
    if (!std::isfinite(value) || value == 0.0) return value == 0.0 ? 0.0 : value;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return std::strtod(buf, nullptr);
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace signdir
