#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fdo {

// Stable machine-readable failure codes. The string form of each code is part
// of the public contract (CLI output, HTTP error bodies) and must not change.
enum class ErrorCode {
    DuplicatePidConflict,
    InvalidPidSyntax,
    UnknownAttributePid,
    MalformedSnapshot,
    NotFound,
    RemoteUnavailable,
    MalformedRecordDocument,
    ValidationFailed,
    UnknownProfile,
    AlreadyRegistered,
    DuplicateOperationName,
    InvalidCriterion,
    MissingAccessKey,
    FetchFailed,
    NotApplicable,
    UnknownNode,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code),
          detail_(message) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

  private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace fdo
