#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fdo/errors.hpp"

namespace fdo {

// One key-value pair of an information record. Keys are attribute PIDs,
// values are uniformly strings; typing is applied at the validation layer.
struct AttributePair {
    std::string attribute_pid;
    std::string value;

    bool operator==(const AttributePair&) const = default;
    auto operator<=>(const AttributePair&) const = default;
};

// A (possibly unregistered) information record: an ordered multiset of
// attribute pairs plus, once registered, its PID. Annotations are a side
// channel for snapshot bookkeeping (e.g. the landing-page flag) and take no
// part in validation.
struct InformationRecord {
    std::string pid;  // empty until registered
    std::vector<AttributePair> pairs;
    std::map<std::string, bool> annotations;

    bool operator==(const InformationRecord&) const = default;

    void add(std::string attribute_pid, std::string value);
    bool has_key(std::string_view attribute_pid) const;
    std::vector<std::string> values_of(std::string_view attribute_pid) const;
    std::optional<std::string> first_value(std::string_view attribute_pid) const;
    std::set<std::string> keys() const;

    // Copy with pairs stably sorted by attribute PID; canonical form for
    // structural comparison.
    InformationRecord normalized() const;
};

enum class ViolationCode {
    MissingMandatory,
    UnknownAttribute,
    TypeMismatch,
    EmptyValue,
    RepeatViolation,
    MultipleProfiles,
    NoProfile,
};

std::string_view to_string(ViolationCode code);

struct Violation {
    ViolationCode code;
    std::optional<std::string> attribute_pid;
    std::string detail;

    bool operator==(const Violation&) const = default;
};

struct ValidationOutcome {
    bool valid = false;
    std::vector<Violation> violations;

    bool has(ViolationCode code) const;
    size_t count(ViolationCode code) const;
    std::string summary() const;
    std::string to_document() const;
};

// Thrown when an operation requires a valid record; carries the full outcome.
class ValidationError : public Error {
  public:
    explicit ValidationError(ValidationOutcome outcome)
        : Error(ErrorCode::ValidationFailed, outcome.summary()), outcome_(std::move(outcome)) {}

    const ValidationOutcome& outcome() const noexcept { return outcome_; }

  private:
    ValidationOutcome outcome_;
};

// Record exchange format. Serialization is canonical: keys sorted, a single
// value emitted as a string, repeated values as an array; "pid" present only
// for registered records; "annotations" present only when non-empty.
std::string serialize_record(const InformationRecord& record);

// Strict parse rejects unknown top-level fields, non-string values, and empty
// arrays. Lenient parse (used for foreign snapshots) ignores unknown
// top-level fields and coerces scalar values to their text form.
InformationRecord parse_record_document(const std::string& document, bool lenient = false);

InformationRecord load_record_file(const std::string& path, bool lenient = false);

}  // namespace fdo
