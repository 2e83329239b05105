#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace fdo {

// A persistent identifier of the Handle form "prefix/suffix".
//
// The prefix is one or more dot-separated segments of ASCII letters and
// digits (each segment non-empty). The suffix is any non-empty run of
// printable ASCII with no whitespace. The identifier splits at the first '/';
// further slashes belong to the suffix.
struct Pid {
    std::string prefix;
    std::string suffix;

    std::string str() const { return prefix + "/" + suffix; }

    bool operator==(const Pid&) const = default;
    auto operator<=>(const Pid&) const = default;

    // Parses and validates; returns nullopt on any syntax violation.
    static std::optional<Pid> parse(std::string_view text);

    static bool is_valid(std::string_view text) { return parse(text).has_value(); }
};

bool is_valid_pid_prefix(std::string_view prefix);
bool is_valid_pid_suffix(std::string_view suffix);

}  // namespace fdo
