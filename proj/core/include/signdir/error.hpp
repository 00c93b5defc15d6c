#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace signdir {

// Error categories. The CLI maps each one to a distinct exit status.
enum class ErrorCode {
    io,
    config,
    empty_corpus,
    malformed_line,
    no_ngrams,
    filter_emptied,
    invalid_argument,
    provenance_mismatch,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Raised while parsing an input file; carries the 1-based line number.
class LineError : public Error {
public:
    LineError(std::size_t line, const std::string& message);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace signdir
