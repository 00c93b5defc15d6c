#pragma once

#include <string>
#include <string_view>

namespace signdir {

// All emitted numbers use 12 significant digits so golden files are stable.
inline constexpr int kSignificantDigits = 12;

std::string format_number(double value);
double round_significant(double value, int digits = kSignificantDigits);

// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_field(std::string_view text);

}  // namespace signdir
