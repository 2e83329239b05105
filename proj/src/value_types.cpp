#include "fdo/value_types.hpp"

#include <array>
#include <cctype>

#include "fdo/pid.hpp"

namespace fdo {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alpha(char c) { return is_lower(c) || (c >= 'A' && c <= 'Z'); }
bool is_hex(char c) { return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }

bool take_fixed_digits(std::string_view text, size_t pos, int count, int& out) {
    out = 0;
    if (pos + static_cast<size_t>(count) > text.size()) return false;
    for (int i = 0; i < count; ++i) {
        char c = text[pos + static_cast<size_t>(i)];
        if (!is_digit(c)) return false;
        out = out * 10 + (c - '0');
    }
    return true;
}

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 13> table = {0, 31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return table[static_cast<size_t>(month)];
}

// RFC 3986 URI characters: unreserved, gen-delims, sub-delims, plus '%' for
// escapes (handled by the caller).
bool is_uri_char(char c) {
    if (is_alpha(c) || is_digit(c)) return true;
    switch (c) {
        case '-': case '.': case '_': case '~':
        case ':': case '/': case '?': case '#': case '[': case ']': case '@':
        case '!': case '$': case '&': case '\'': case '(': case ')':
        case '*': case '+': case ',': case ';': case '=':
            return true;
        default:
            return false;
    }
}

// Absolute URI with an explicit scheme. One '#' may introduce a fragment.
// The part after "scheme:" must be non-empty and every character must come
// from the URI character set, with well-formed percent escapes.
bool validate_url(std::string_view value) {
    auto colon = value.find(':');
    if (colon == std::string_view::npos || colon == 0) return false;
    if (!is_alpha(value[0])) return false;
    for (size_t i = 1; i < colon; ++i) {
        char c = value[i];
        if (!is_alpha(c) && !is_digit(c) && c != '+' && c != '-' && c != '.') return false;
    }
    std::string_view rest = value.substr(colon + 1);
    if (rest.empty()) return false;
    bool seen_fragment = false;
    for (size_t i = 0; i < rest.size(); ++i) {
        char c = rest[i];
        if (c == '%') {
            if (i + 2 >= rest.size() || !is_hex(rest[i + 1]) || !is_hex(rest[i + 2])) return false;
            i += 2;
        } else if (c == '#') {
            if (seen_fragment) return false;
            seen_fragment = true;
        } else if (!is_uri_char(c)) {
            return false;
        }
    }
    return true;
}

// RFC 6838 restricted-name: leading alphanumeric, then up to 126 characters
// from the restricted set.
bool take_restricted_name(std::string_view text, size_t& pos) {
    size_t start = pos;
    if (pos >= text.size()) return false;
    char first = text[pos];
    if (!is_alpha(first) && !is_digit(first)) return false;
    ++pos;
    while (pos < text.size()) {
        char c = text[pos];
        bool ok = is_alpha(c) || is_digit(c) || c == '!' || c == '#' || c == '$' ||
                  c == '&' || c == '-' || c == '^' || c == '_' || c == '.' || c == '+';
        if (!ok) break;
        ++pos;
    }
    return pos - start <= 127;
}

bool is_token_char(char c) {
    if (is_alpha(c) || is_digit(c)) return true;
    switch (c) {
        case '!': case '#': case '$': case '%': case '&': case '\'': case '*':
        case '+': case '-': case '.': case '^': case '_': case '`': case '|': case '~':
            return true;
        default:
            return false;
    }
}

bool take_token(std::string_view text, size_t& pos) {
    size_t start = pos;
    while (pos < text.size() && is_token_char(text[pos])) ++pos;
    return pos > start;
}

bool take_quoted_string(std::string_view text, size_t& pos) {
    if (pos >= text.size() || text[pos] != '"') return false;
    ++pos;
    while (pos < text.size()) {
        char c = text[pos];
        if (c == '"') {
            ++pos;
            return true;
        }
        if (c == '\\') {
            if (pos + 1 >= text.size()) return false;
            pos += 2;
            continue;
        }
        if (c < 0x20 || c == 0x7f) return false;
        ++pos;
    }
    return false;
}

// type "/" subtype *( ";" OWS token "=" (token / quoted-string) )
bool validate_media_type(std::string_view value) {
    size_t pos = 0;
    if (!take_restricted_name(value, pos)) return false;
    if (pos >= value.size() || value[pos] != '/') return false;
    ++pos;
    if (!take_restricted_name(value, pos)) return false;
    while (pos < value.size()) {
        if (value[pos] != ';') return false;
        ++pos;
        while (pos < value.size() && (value[pos] == ' ' || value[pos] == '\t')) ++pos;
        if (!take_token(value, pos)) return false;
        if (pos >= value.size() || value[pos] != '=') return false;
        ++pos;
        if (pos < value.size() && value[pos] == '"') {
            if (!take_quoted_string(value, pos)) return false;
        } else if (!take_token(value, pos)) {
            return false;
        }
    }
    return true;
}

bool validate_checksum(std::string_view value) {
    struct Algorithm {
        std::string_view name;
        size_t hex_length;
    };
    static constexpr std::array<Algorithm, 4> algorithms = {{
        {"md5", 32}, {"sha1", 40}, {"sha256", 64}, {"sha512", 128},
    }};
    auto colon = value.find(':');
    if (colon == std::string_view::npos) return false;
    std::string_view alg = value.substr(0, colon);
    std::string_view hex = value.substr(colon + 1);
    for (const auto& candidate : algorithms) {
        if (alg == candidate.name) {
            if (hex.size() != candidate.hex_length) return false;
            for (char c : hex) {
                if (!is_hex(c)) return false;
            }
            return true;
        }
    }
    return false;
}

// 1 to 4 dot-separated runs of digits.
bool validate_version(std::string_view value) {
    int segments = 0;
    size_t pos = 0;
    while (true) {
        size_t start = pos;
        while (pos < value.size() && is_digit(value[pos])) ++pos;
        if (pos == start) return false;
        ++segments;
        if (pos == value.size()) return segments <= 4;
        if (value[pos] != '.') return false;
        ++pos;
    }
}

bool validate_language(std::string_view value) {
    return value.size() == 2 && is_lower(value[0]) && is_lower(value[1]);
}

}  // namespace

std::string_view value_type_name(ValueType type) {
    switch (type) {
        case ValueType::HandleIdentifierAscii: return "handle-identifier-ascii";
        case ValueType::Url: return "url";
        case ValueType::DateTimeRfc3339: return "date-time-rfc3339";
        case ValueType::MediaTypeIana: return "media-type-iana";
        case ValueType::ChecksumString: return "checksum-string";
        case ValueType::VersionNumber: return "version-number";
        case ValueType::LanguageCodeIso6391: return "language-code-iso639-1";
        case ValueType::String: return "string";
    }
    return "string";
}

std::optional<ValueType> value_type_from_name(std::string_view name) {
    static constexpr std::array<ValueType, 8> all = {
        ValueType::HandleIdentifierAscii, ValueType::Url,
        ValueType::DateTimeRfc3339,       ValueType::MediaTypeIana,
        ValueType::ChecksumString,        ValueType::VersionNumber,
        ValueType::LanguageCodeIso6391,   ValueType::String,
    };
    for (ValueType type : all) {
        if (value_type_name(type) == name) return type;
    }
    return std::nullopt;
}

std::optional<Rfc3339Timestamp> parse_rfc3339(std::string_view text) {
    Rfc3339Timestamp ts;
    size_t pos = 0;
    if (!take_fixed_digits(text, pos, 4, ts.year)) return std::nullopt;
    pos += 4;
    if (pos >= text.size() || text[pos] != '-') return std::nullopt;
    ++pos;
    if (!take_fixed_digits(text, pos, 2, ts.month)) return std::nullopt;
    pos += 2;
    if (pos >= text.size() || text[pos] != '-') return std::nullopt;
    ++pos;
    if (!take_fixed_digits(text, pos, 2, ts.day)) return std::nullopt;
    pos += 2;
    if (ts.month < 1 || ts.month > 12) return std::nullopt;
    if (ts.day < 1 || ts.day > days_in_month(ts.year, ts.month)) return std::nullopt;

    if (pos >= text.size() || (text[pos] != 'T' && text[pos] != 't')) return std::nullopt;
    ++pos;
    if (!take_fixed_digits(text, pos, 2, ts.hour)) return std::nullopt;
    pos += 2;
    if (pos >= text.size() || text[pos] != ':') return std::nullopt;
    ++pos;
    if (!take_fixed_digits(text, pos, 2, ts.minute)) return std::nullopt;
    pos += 2;
    if (pos >= text.size() || text[pos] != ':') return std::nullopt;
    ++pos;
    if (!take_fixed_digits(text, pos, 2, ts.second)) return std::nullopt;
    pos += 2;
    if (ts.hour > 23 || ts.minute > 59 || ts.second > 60) return std::nullopt;

    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        size_t start = pos;
        double scale = 0.1;
        ts.fraction = 0.0;
        while (pos < text.size() && is_digit(text[pos])) {
            ts.fraction += (text[pos] - '0') * scale;
            scale *= 0.1;
            ++pos;
        }
        if (pos == start) return std::nullopt;
    }

    if (pos >= text.size()) return std::nullopt;
    char offset_lead = text[pos];
    if (offset_lead == 'Z' || offset_lead == 'z') {
        ++pos;
        ts.offset_minutes = 0;
    } else if (offset_lead == '+' || offset_lead == '-') {
        ++pos;
        int oh = 0;
        int om = 0;
        if (!take_fixed_digits(text, pos, 2, oh)) return std::nullopt;
        pos += 2;
        if (pos >= text.size() || text[pos] != ':') return std::nullopt;
        ++pos;
        if (!take_fixed_digits(text, pos, 2, om)) return std::nullopt;
        pos += 2;
        if (oh > 23 || om > 59) return std::nullopt;
        ts.offset_minutes = (oh * 60 + om) * (offset_lead == '-' ? -1 : 1);
    } else {
        return std::nullopt;
    }
    if (pos != text.size()) return std::nullopt;
    return ts;
}

std::int64_t Rfc3339Timestamp::to_epoch_seconds() const {
    // Howard Hinnant's days-from-civil algorithm.
    std::int64_t y = year;
    std::int64_t m = month;
    std::int64_t d = day;
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;
    const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    const std::int64_t days = era * 146097 + doe - 719468;
    return days * 86400 + hour * 3600 + minute * 60 + second -
           static_cast<std::int64_t>(offset_minutes) * 60;
}

bool Rfc3339Timestamp::operator<(const Rfc3339Timestamp& other) const {
    auto a = to_epoch_seconds();
    auto b = other.to_epoch_seconds();
    if (a != b) return a < b;
    return fraction < other.fraction;
}

bool validate_value(ValueType type, std::string_view value) {
    if (value.empty()) return false;
    switch (type) {
        case ValueType::HandleIdentifierAscii:
            return Pid::is_valid(value);
        case ValueType::Url:
            return validate_url(value);
        case ValueType::DateTimeRfc3339:
            return parse_rfc3339(value).has_value();
        case ValueType::MediaTypeIana:
            return validate_media_type(value);
        case ValueType::ChecksumString:
            return validate_checksum(value);
        case ValueType::VersionNumber:
            return validate_version(value);
        case ValueType::LanguageCodeIso6391:
            return validate_language(value);
        case ValueType::String:
            return true;
    }
    return false;
}

}  // namespace fdo
