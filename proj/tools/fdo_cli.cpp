// fdo: command-line front end for the FDO toolkit.
//
// Configuration precedence: flags > FDO_* environment > fdo.toml > defaults.
// Exit codes: 0 success, 1 operational failure, 2 usage or malformed input.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fdo/config.hpp"
#include "fdo/conformance.hpp"
#include "fdo/errors.hpp"
#include "fdo/graph.hpp"
#include "fdo/http_service.hpp"
#include "fdo/operations.hpp"
#include "fdo/pid_registry.hpp"
#include "fdo/record.hpp"
#include "fdo/record_engine.hpp"
#include "fdo/type_system.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> snapshot_files(const std::string& source) {
    if (fs::is_directory(source)) {
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(source)) {
            if (entry.is_regular_file() && entry.path().extension() == ".json") {
                files.push_back(entry.path().string());
            }
        }
        std::sort(files.begin(), files.end());
        return files;
    }
    if (fs::is_regular_file(source)) return {source};
    throw fdo::Error(fdo::ErrorCode::NotFound, "no such profile source: " + source);
}

// All registries wired together from one effective configuration.
struct Toolkit {
    fdo::TypeRegistry types;
    fdo::PidRegistry registry;
    fdo::RecordEngine engine;
    fdo::OperationsEngine operations;
    fdo::ConformanceChecker conformance;

    explicit Toolkit(const fdo::CliConfig& config)
        : registry(config.pid_prefix),
          engine(types, registry),
          operations(types, registry),
          conformance(types, registry) {
        for (const auto& source : config.profiles) {
            for (const auto& file : snapshot_files(source)) {
                types.import_profile_snapshot_file(file);
            }
        }
        for (const auto& path : config.fixtures) {
            registry.load_fixture_set(path);
        }
        if (!config.registry_path.empty()) {
            registry.attach_persist_dir(config.registry_path);
        }
        registry.set_proxy(fdo::HandleProxyClient(config.proxy_base));
        registry.set_online(config.online);
        if (!config.file_base.empty()) {
            operations.set_file_base(config.file_base);
        }
        for (const auto& pid : types.profile_pids()) {
            auto profile = types.find_profile(pid);
            if (profile && !profile->roles.empty()) {
                fdo::register_builtin_operations(operations, types, pid);
                break;
            }
        }
    }

    fdo::FdoGraph graph() const {
        std::vector<fdo::InformationRecord> records;
        for (const auto& entry : registry.entries()) records.push_back(entry.record);
        return fdo::build_graph(records, types);
    }

    // File arguments win over PID resolution so local drafts can be checked
    // before registration.
    fdo::InformationRecord load_target(const std::string& arg, bool lenient = false) const {
        if (fs::is_regular_file(arg)) return fdo::load_record_file(arg, lenient);
        return registry.resolve(arg).record;
    }
};

int emit_outcome(const fdo::ValidationOutcome& outcome, const std::string& format) {
    if (format == "document") {
        std::cout << outcome.to_document();
    } else if (outcome.valid) {
        std::cout << "valid\n";
    } else {
        for (const auto& v : outcome.violations) {
            std::cout << to_string(v.code);
            if (v.attribute_pid) std::cout << " " << *v.attribute_pid;
            if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
            std::cout << "\n";
        }
    }
    return outcome.valid ? 0 : 1;
}

void emit_record(const fdo::RegistryEntry& entry, const std::string& format) {
    if (format == "document") {
        json doc = json::parse(fdo::serialize_record(entry.record));
        doc["source"] = std::string(to_string(entry.source));
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::cout << "pid: " << entry.pid.str() << "\n";
    std::cout << "source: " << to_string(entry.source) << "\n";
    for (const auto& pair : entry.record.normalized().pairs) {
        std::cout << "  " << pair.attribute_pid << " = " << pair.value << "\n";
    }
}

json path_document(const std::string& from, const std::string& to,
                   const std::optional<std::vector<fdo::PidTriple>>& path) {
    json doc = {{"from", from}, {"to", to}, {"reachable", path.has_value()}};
    if (path) {
        json hops = json::array();
        for (const auto& hop : *path) {
            hops.push_back({{"subject", hop.subject},
                            {"predicate", hop.predicate},
                            {"object", hop.object}});
        }
        doc["path"] = std::move(hops);
    }
    return doc;
}

std::pair<std::string, std::string> split_assignment(const std::string& text,
                                                     const char* flag_name) {
    auto equals = text.find('=');
    if (equals == std::string::npos || equals == 0) {
        throw CLI::ValidationError(flag_name, "expected <key>=<value>, got: " + text);
    }
    return {text.substr(0, equals), text.substr(equals + 1)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FAIR Digital Object toolkit"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path;
    std::string registry_path;
    std::vector<std::string> fixtures;
    std::vector<std::string> profiles;
    std::string prefix;
    bool online = false;
    std::string output_format;
    std::string file_base;
    std::string proxy_base;

    auto* config_opt = app.add_option("--config", config_path, "Configuration file");
    auto* registry_opt = app.add_option("--registry", registry_path,
                                        "Directory for durable local registrations");
    auto* fixtures_opt = app.add_option("--fixtures", fixtures,
                                        "Record fixture directory or file (repeatable)");
    auto* profiles_opt = app.add_option("--profiles", profiles,
                                        "Profile snapshot directory or file (repeatable)");
    auto* prefix_opt = app.add_option("--prefix", prefix, "Handle prefix for minted PIDs");
    auto* online_opt = app.add_flag("--online,!--offline", online,
                                    "Resolve unknown PIDs through the Handle proxy");
    auto* format_opt = app.add_option("--output-format", output_format, "table or document")
                           ->check(CLI::IsMember({"table", "document"}));
    auto* file_base_opt = app.add_option("--file-base", file_base,
                                         "Base directory for relative file: locations");
    auto* proxy_opt = app.add_option("--proxy-base", proxy_base, "Handle proxy base URL");

    auto effective_config = [&]() {
        fdo::CliConfig config;
        std::string path = config_path;
        if (config_opt->count() == 0 && fs::is_regular_file("fdo.toml")) path = "fdo.toml";
        if (!path.empty()) fdo::apply_config_map(config, fdo::parse_config_file(path));
        fdo::apply_environment(config);
        if (registry_opt->count() > 0) config.registry_path = registry_path;
        if (fixtures_opt->count() > 0) config.fixtures = fixtures;
        if (profiles_opt->count() > 0) config.profiles = profiles;
        if (prefix_opt->count() > 0) config.pid_prefix = prefix;
        if (online_opt->count() > 0) config.online = online;
        if (format_opt->count() > 0) config.output_format = output_format;
        if (file_base_opt->count() > 0) config.file_base = file_base;
        if (proxy_opt->count() > 0) config.proxy_base = proxy_base;
        return config;
    };

    int exit_code = 0;

    // profile import <file>
    auto* profile_cmd = app.add_subcommand("profile", "Kernel Information Profiles");
    profile_cmd->require_subcommand(1);
    auto* profile_import = profile_cmd->add_subcommand("import", "Import a profile snapshot");
    std::string profile_file;
    profile_import->add_option("file", profile_file, "Snapshot document")->required();
    profile_import->callback([&] {
        auto config = effective_config();
        Toolkit kit(config);
        auto profile = kit.types.import_profile_snapshot_file(profile_file);
        if (config.output_format == "document") {
            std::cout << kit.types.export_profile_snapshot(profile.profile_pid);
        } else {
            std::cout << "imported " << profile.profile_pid << " (" << profile.name << ", "
                      << profile.attributes.size() << " attributes)\n";
        }
    });

    // record create / record validate
    auto* record_cmd = app.add_subcommand("record", "Information records");
    record_cmd->require_subcommand(1);

    auto* record_create = record_cmd->add_subcommand("create", "Instantiate and register a record");
    std::string create_profile;
    std::vector<std::string> create_sets;
    record_create->add_option("--profile", create_profile, "Profile PID to instantiate")
        ->required();
    record_create->add_option("--set", create_sets, "<attribute-pid>=<value> (repeatable)");
    record_create->callback([&] {
        auto config = effective_config();
        Toolkit kit(config);
        std::map<std::string, std::vector<std::string>> values;
        for (const auto& item : create_sets) {
            auto [key, value] = split_assignment(item, "--set");
            values[key].push_back(value);
        }
        auto record = kit.engine.instantiate_profile(create_profile, values);
        auto pid = kit.engine.register_record(record);
        if (config.output_format == "document") {
            std::cout << fdo::serialize_record(record);
        } else {
            std::cout << "registered " << pid.str() << "\n";
        }
    });

    auto* record_validate = record_cmd->add_subcommand("validate", "Validate a record");
    std::string validate_target;
    std::string validate_against;
    record_validate->add_option("target", validate_target, "Record document file or PID")
        ->required();
    record_validate->add_option("--against", validate_against,
                                "Judge against this profile instead of the record's own");
    record_validate->callback([&] {
        auto config = effective_config();
        Toolkit kit(config);
        auto record = kit.load_target(validate_target);
        std::optional<std::string> against;
        if (!validate_against.empty()) against = validate_against;
        auto outcome = kit.engine.validate_record(record, against);
        exit_code = emit_outcome(outcome, config.output_format);
    });

    // resolve <pid>
    auto* resolve_cmd = app.add_subcommand("resolve", "Resolve a PID to its record");
    std::string resolve_pid;
    resolve_cmd->add_option("pid", resolve_pid, "PID to resolve")->required();
    resolve_cmd->callback([&] {
        auto config = effective_config();
        Toolkit kit(config);
        emit_record(kit.registry.resolve(resolve_pid), config.output_format);
    });

    // graph build / scc / path
    auto* graph_cmd = app.add_subcommand("graph", "PID triple graph");
    graph_cmd->require_subcommand(1);

    auto* graph_build = graph_cmd->add_subcommand("build", "Extract a graph from record sets");
    std::vector<std::string> build_paths;
    std::string build_export = "triples";
    graph_build->add_option("paths", build_paths, "Record fixture directories or files")
        ->required();
    graph_build->add_option("--export", build_export, "triples or dot")
        ->check(CLI::IsMember({"triples", "dot"}));
    graph_build->callback([&] {
        auto config = effective_config();
        Toolkit kit(config);
        fdo::PidRegistry scratch(config.pid_prefix);
        for (const auto& path : build_paths) scratch.load_fixture_set(path);
        std::vector<fdo::InformationRecord> records;
        for (const auto& entry : scratch.entries()) records.push_back(entry.record);
        auto graph = fdo::build_graph(records, kit.types);
        auto format = build_export == "dot" ? fdo::GraphFormat::Dot : fdo::GraphFormat::Triples;
        std::cout << fdo::export_graph(graph, format);
    });

    auto* graph_scc = graph_cmd->add_subcommand("scc", "Strongly connected components");
    graph_scc->callback([&] {
        auto config = effective_config();
        Toolkit kit(config);
        auto components = kit.graph().strongly_connected_components();
        if (config.output_format == "document") {
            json doc = json::array();
            for (const auto& component : components) doc.push_back(component);
            std::cout << doc.dump(2) << "\n";
        } else {
            for (const auto& component : components) {
                for (size_t i = 0; i < component.size(); ++i) {
                    if (i > 0) std::cout << " ";
                    std::cout << component[i];
                }
                std::cout << "\n";
            }
        }
    });

    auto* graph_path = graph_cmd->add_subcommand("path", "Shortest directed path");
    std::string path_from, path_to;
    graph_path->add_option("from", path_from, "Source PID")->required();
    graph_path->add_option("to", path_to, "Target PID")->required();
    graph_path->callback([&] {
        auto config = effective_config();
        Toolkit kit(config);
        auto path = kit.graph().path(path_from, path_to);
        if (config.output_format == "document") {
            std::cout << path_document(path_from, path_to, path).dump(2) << "\n";
        } else if (!path) {
            std::cout << "unreachable\n";
        } else {
            for (const auto& hop : *path) {
                std::cout << hop.subject << " " << hop.predicate << " " << hop.object << "\n";
            }
        }
        if (!path) exit_code = 1;
    });

    // ops list / ops run
    auto* ops_cmd = app.add_subcommand("ops", "Operations on records");
    ops_cmd->require_subcommand(1);

    auto* ops_list = ops_cmd->add_subcommand("list", "Operations associated with a record");
    std::string ops_list_pid;
    ops_list->add_option("pid", ops_list_pid, "Record PID or document file")->required();
    ops_list->callback([&] {
        auto config = effective_config();
        Toolkit kit(config);
        auto record = kit.load_target(ops_list_pid);
        auto descriptors = kit.operations.associate(record);
        if (config.output_format == "document") {
            json doc = json::array();
            for (const auto& d : descriptors) {
                doc.push_back({{"name", d.name},
                               {"target", std::string(to_string(d.target))},
                               {"applicable", kit.operations.applicable(d, record)}});
            }
            std::cout << doc.dump(2) << "\n";
        } else {
            for (const auto& d : descriptors) {
                std::cout << d.name << " " << to_string(d.target)
                          << (kit.operations.applicable(d, record) ? "" : " (not applicable)")
                          << "\n";
            }
        }
    });

    auto* ops_run = ops_cmd->add_subcommand("run", "Execute an operation on a record");
    std::string run_name, run_pid, run_params_json;
    std::vector<std::string> run_params;
    ops_run->add_option("name", run_name, "Operation name")->required();
    ops_run->add_option("pid", run_pid, "Record PID or document file")->required();
    ops_run->add_option("--param", run_params, "<key>=<value> parameter (repeatable)");
    ops_run->add_option("--params-json", run_params_json, "Parameters as a JSON object");
    ops_run->callback([&] {
        auto config = effective_config();
        Toolkit kit(config);
        auto record = kit.load_target(run_pid);
        json params = json::object();
        if (!run_params_json.empty()) {
            params = json::parse(run_params_json, nullptr, false);
            if (params.is_discarded() || !params.is_object()) {
                throw CLI::ValidationError("--params-json", "expected a JSON object");
            }
        }
        for (const auto& item : run_params) {
            auto [key, value] = split_assignment(item, "--param");
            params[key] = value;
        }
        auto result = kit.operations.execute(run_name, record, params);
        if (config.output_format == "document") {
            std::cout << result.to_json().dump(2) << "\n";
        } else {
            std::cout << "operation: " << result.operation << "\n";
            std::cout << "status: " << result.status << "\n";
            std::cout << "payload: " << result.payload.dump(2) << "\n";
        }
    });

    // conformance check <pid|file>...
    auto* conformance_cmd = app.add_subcommand("conformance", "Model conformance checks");
    conformance_cmd->require_subcommand(1);
    auto* conformance_check = conformance_cmd->add_subcommand("check", "Check records");
    std::vector<std::string> check_targets;
    conformance_check->add_option("targets", check_targets, "Record PIDs or document files")
        ->required();
    conformance_check->callback([&] {
        auto config = effective_config();
        Toolkit kit(config);
        auto format = config.output_format == "document" ? fdo::ReportFormat::Document
                                                         : fdo::ReportFormat::Table;
        bool first = true;
        for (const auto& target : check_targets) {
            fdo::ConformanceReport report;
            try {
                if (fs::is_regular_file(target)) {
                    std::ifstream in(target);
                    std::string text((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
                    report = kit.conformance.check_document(text);
                } else {
                    report = kit.conformance.check(kit.registry.resolve(target).record);
                }
            } catch (const fdo::Error& e) {
                if (e.code() == fdo::ErrorCode::MalformedRecordDocument) {
                    std::cerr << "error: " << e.what() << "\n";
                    exit_code = 2;
                    continue;
                }
                throw;
            }
            if (!first && format == fdo::ReportFormat::Table) std::cout << "\n";
            first = false;
            std::cout << fdo::render_report(report, format);
            if (!report.overall && exit_code == 0) exit_code = 1;
        }
    });

    // serve
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    std::string serve_host;
    int serve_port = 0;
    auto* host_opt = serve_cmd->add_option("--host", serve_host, "Bind address");
    auto* port_opt = serve_cmd->add_option("--port", serve_port, "Bind port");
    serve_cmd->callback([&] {
        auto config = effective_config();
        if (host_opt->count() > 0) config.host = serve_host;
        if (port_opt->count() > 0) config.port = serve_port;
        Toolkit kit(config);
        fdo::HttpService service(kit.types, kit.registry, kit.engine, kit.operations,
                                 kit.conformance);
        std::cout << "listening on " << config.host << ":" << config.port << "\n";
        if (!service.listen(config.host, config.port)) {
            throw fdo::Error(fdo::ErrorCode::RemoteUnavailable,
                             "cannot bind " + config.host + ":" + std::to_string(config.port));
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    } catch (const fdo::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const fdo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
