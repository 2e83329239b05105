#include "fdo/pid.hpp"

namespace fdo {

namespace {

bool is_alnum_ascii(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

}  // namespace

bool is_valid_pid_prefix(std::string_view prefix) {
    if (prefix.empty()) return false;
    bool segment_has_char = false;
    for (char c : prefix) {
        if (c == '.') {
            if (!segment_has_char) return false;
            segment_has_char = false;
        } else if (is_alnum_ascii(c)) {
            segment_has_char = true;
        } else {
            return false;
        }
    }
    return segment_has_char;
}

bool is_valid_pid_suffix(std::string_view suffix) {
    if (suffix.empty()) return false;
    for (char c : suffix) {
        if (c <= 0x20 || c >= 0x7f) return false;
    }
    return true;
}

std::optional<Pid> Pid::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return std::nullopt;
    std::string_view prefix = text.substr(0, slash);
    std::string_view suffix = text.substr(slash + 1);
    if (!is_valid_pid_prefix(prefix) || !is_valid_pid_suffix(suffix)) return std::nullopt;
    return Pid{std::string(prefix), std::string(suffix)};
}

}  // namespace fdo
