#include "signdir/error.hpp"

namespace signdir {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::io: return "io";
    case ErrorCode::config: return "config";
    case ErrorCode::empty_corpus: return "empty_corpus";
    case ErrorCode::malformed_line: return "malformed_line";
    case ErrorCode::no_ngrams: return "no_ngrams";
    case ErrorCode::filter_emptied: return "filter_emptied";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::provenance_mismatch: return "provenance_mismatch";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

LineError::LineError(std::size_t line, const std::string& message)
    : Error(ErrorCode::malformed_line, "line " + std::to_string(line) + ": " + message),
      line_(line) {}

}  // namespace signdir
