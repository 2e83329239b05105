#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fdo {

// The flat value-type vocabulary attributes are typed with. Each type owns a
// total, deterministic predicate over strings; the empty string is invalid
// for every type.
enum class ValueType {
    HandleIdentifierAscii,
    Url,
    DateTimeRfc3339,
    MediaTypeIana,
    ChecksumString,
    VersionNumber,
    LanguageCodeIso6391,
    String,
};

std::string_view value_type_name(ValueType type);
std::optional<ValueType> value_type_from_name(std::string_view name);

bool validate_value(ValueType type, std::string_view value);

// Reference-capable types feed the graph layer: their values can point at
// other entities.
inline bool is_reference_type(ValueType type) {
    return type == ValueType::HandleIdentifierAscii || type == ValueType::Url;
}

// A parsed RFC 3339 date-time. `offset_minutes` is the signed UTC offset
// ("Z" parses as 0). Leap seconds (second == 60) are accepted.
struct Rfc3339Timestamp {
    int year = 0;
    int month = 0;
    int day = 0;
    int hour = 0;
    int minute = 0;
    int second = 0;
    double fraction = 0.0;
    int offset_minutes = 0;

    // Seconds since the Unix epoch on the proleptic Gregorian calendar,
    // normalized to UTC. Leap seconds map onto the following second.
    std::int64_t to_epoch_seconds() const;

    bool operator<(const Rfc3339Timestamp& other) const;
};

std::optional<Rfc3339Timestamp> parse_rfc3339(std::string_view text);

}  // namespace fdo
