#pragma once

#include <iosfwd>
#include <string>

#include "signdir/error.hpp"

namespace signdir::cli {

enum ExitStatus : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kIo = 3,
    kConfig = 4,
    kEmptyCorpus = 5,
    kMalformedLine = 6,
    kAnalysis = 7,
    kPartial = 8,
};

int exit_status(ErrorCode code);

// One-line JSON error record, as written to stderr on failure.
std::string error_record(ErrorCode code, const std::string& message, std::size_t line = 0,
                         const std::string& path = {});

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace signdir::cli
