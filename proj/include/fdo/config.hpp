#pragma once

#include <map>
#include <string>
#include <vector>

namespace fdo {

// Effective CLI/service configuration. Layered lowest to highest precedence:
// built-in defaults, fdo.toml key-value file, FDO_* environment variables,
// command-line flags.
struct CliConfig {
    std::string registry_path;
    std::vector<std::string> fixtures;
    std::vector<std::string> profiles;
    std::string pid_prefix = "21.11152.test";
    bool online = false;
    std::string output_format = "table";
    std::string proxy_base = "https://hdl.handle.net";
    std::string file_base;
    std::string host = "127.0.0.1";
    int port = 8484;
};

// Flat `key = value` lines; '#' starts a comment; quotes around values are
// stripped; list values are comma-separated.
std::map<std::string, std::string> parse_config_file(const std::string& path);

void apply_config_map(CliConfig& config, const std::map<std::string, std::string>& values);

// FDO_REGISTRY_PATH, FDO_PID_PREFIX, FDO_ONLINE.
void apply_environment(CliConfig& config);

std::vector<std::string> split_list(const std::string& text);

bool parse_bool(const std::string& text);

}  // namespace fdo
