#include "fdo/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "fdo/errors.hpp"

namespace fdo {

namespace {

std::string trim(const std::string& text) {
    auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::string unquote(std::string value) {
    if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                              (value.front() == '\'' && value.back() == '\''))) {
        return value.substr(1, value.size() - 2);
    }
    return value;
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        std::string item = trim(comma == std::string::npos ? text.substr(start)
                                                           : text.substr(start, comma - start));
        if (!item.empty()) out.push_back(unquote(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

bool parse_bool(const std::string& text) {
    std::string value = trim(text);
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw std::invalid_argument("not a boolean: " + text);
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::NotFound, "config file: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') continue;  // section headers are ignored
        auto equals = line.find('=');
        if (equals == std::string::npos) continue;
        std::string key = trim(line.substr(0, equals));
        std::string value = unquote(trim(line.substr(equals + 1)));
        if (!key.empty()) out[key] = value;
    }
    return out;
}

void apply_config_map(CliConfig& config, const std::map<std::string, std::string>& values) {
    auto get = [&](const char* key) -> const std::string* {
        auto it = values.find(key);
        return it == values.end() ? nullptr : &it->second;
    };
    if (const auto* v = get("registry_path")) config.registry_path = *v;
    if (const auto* v = get("fixtures")) config.fixtures = split_list(*v);
    if (const auto* v = get("profiles")) config.profiles = split_list(*v);
    if (const auto* v = get("pid_prefix")) config.pid_prefix = *v;
    if (const auto* v = get("online")) config.online = parse_bool(*v);
    if (const auto* v = get("output_format")) config.output_format = *v;
    if (const auto* v = get("proxy_base")) config.proxy_base = *v;
    if (const auto* v = get("file_base")) config.file_base = *v;
    if (const auto* v = get("host")) config.host = *v;
    if (const auto* v = get("port")) config.port = std::stoi(*v);
}

void apply_environment(CliConfig& config) {
    if (const char* v = std::getenv("FDO_REGISTRY_PATH")) config.registry_path = v;
    if (const char* v = std::getenv("FDO_PID_PREFIX")) config.pid_prefix = v;
    if (const char* v = std::getenv("FDO_ONLINE")) config.online = parse_bool(v);
}

}  // namespace fdo
