#include "fdo/http_service.hpp"

#include <chrono>

#include "httplib.h"
#include "json.hpp"

#include "fdo/graph.hpp"

namespace fdo {

namespace {

using nlohmann::json;

json triples_to_json(const std::set<PidTriple>& triples) {
    json out = json::array();
    for (const auto& triple : triples) {
        out.push_back({triple.subject, triple.predicate, triple.object});
    }
    return out;
}

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
}

}  // namespace

int http_status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ValidationFailed:
        case ErrorCode::UnknownProfile:
            return 422;
        case ErrorCode::NotFound:
        case ErrorCode::UnknownNode:
            return 404;
        case ErrorCode::MissingAccessKey:
        case ErrorCode::NotApplicable:
        case ErrorCode::AlreadyRegistered:
        case ErrorCode::DuplicateOperationName:
        case ErrorCode::DuplicatePidConflict:
            return 409;
        case ErrorCode::RemoteUnavailable:
        case ErrorCode::FetchFailed:
            return 502;
        case ErrorCode::MalformedRecordDocument:
        case ErrorCode::MalformedSnapshot:
        case ErrorCode::InvalidPidSyntax:
        case ErrorCode::InvalidCriterion:
        case ErrorCode::UnknownAttributePid:
            return 400;
    }
    return 400;
}

HttpService::HttpService(TypeRegistry& types, PidRegistry& registry, RecordEngine& engine,
                         OperationsEngine& operations, ConformanceChecker& conformance)
    : types_(types),
      registry_(registry),
      engine_(engine),
      operations_(operations),
      conformance_(conformance),
      server_(std::make_unique<httplib::Server>()) {
    install_routes();
}

HttpService::~HttpService() { stop(); }

void HttpService::install_routes() {
    using httplib::Request;
    using httplib::Response;

    auto guard = [](auto&& handler) {
        return [handler](const Request& req, Response& res) {
            try {
                handler(req, res);
            } catch (const ValidationError& e) {
                int status = http_status_for(e.code());
                json body = {{"error",
                              {{"code", std::string(to_string(e.code()))},
                               {"detail", e.detail()},
                               {"status", status}}},
                             {"outcome", json::parse(e.outcome().to_document())}};
                send_json(res, status, body);
            } catch (const Error& e) {
                int status = http_status_for(e.code());
                send_json(res, status,
                          {{"error",
                            {{"code", std::string(to_string(e.code()))},
                             {"detail", e.detail()},
                             {"status", status}}}});
            } catch (const std::exception& e) {
                send_json(res, 500,
                          {{"error",
                            {{"code", "InternalError"}, {"detail", e.what()}, {"status", 500}}}});
            }
        };
    };

    server_->Get("/healthz", guard([this](const Request&, Response& res) {
        send_json(res, 200,
                  {{"status", "ok"},
                   {"records", registry_.size()},
                   {"profiles", types_.profile_pids().size()},
                   {"operations", operations_.descriptors().size()},
                   {"online", registry_.online()}});
    }));

    server_->Post("/records", guard([this](const Request& req, Response& res) {
        InformationRecord record = parse_record_document(req.body);
        if (!record.pid.empty()) {
            throw Error(ErrorCode::MalformedRecordDocument,
                        "pid must be absent; the service mints one");
        }
        engine_.register_record(record);
        Pid pid = *Pid::parse(record.pid);
        res.set_header("Location", "/records/" + pid.prefix + "/" + pid.suffix);
        send_json(res, 201, json::parse(serialize_record(record)));
    }));

    server_->Post("/records/validate", guard([this](const Request& req, Response& res) {
        InformationRecord record = parse_record_document(req.body);
        ValidationOutcome outcome = engine_.validate_record(record);
        send_json(res, 200, json::parse(outcome.to_document()));
    }));

    server_->Get(R"(/records/([^/]+)/(.+)/operations)",
                 guard([this](const Request& req, Response& res) {
        std::string pid = req.matches[1].str() + "/" + req.matches[2].str();
        RegistryEntry entry = registry_.resolve(pid);
        json list = json::array();
        for (const auto& descriptor : operations_.associate(entry.record)) {
            list.push_back({{"name", descriptor.name},
                            {"target", std::string(to_string(descriptor.target))},
                            {"applicable", operations_.applicable(descriptor, entry.record)}});
        }
        send_json(res, 200, {{"pid", pid}, {"operations", std::move(list)}});
    }));

    server_->Post(R"(/records/([^/]+)/(.+)/operations/([^/]+))",
                  guard([this](const Request& req, Response& res) {
        std::string pid = req.matches[1].str() + "/" + req.matches[2].str();
        std::string name = req.matches[3].str();
        RegistryEntry entry = registry_.resolve(pid);
        json params = json::object();
        if (!req.body.empty()) {
            params = json::parse(req.body, nullptr, false);
            if (params.is_discarded() || !params.is_object()) {
                throw Error(ErrorCode::MalformedRecordDocument, "params body must be a JSON object");
            }
        }
        OperationResult result = operations_.execute(name, entry.record, std::move(params));
        send_json(res, 200, result.to_json());
    }));

    server_->Get(R"(/records/([^/]+)/(.+))", guard([this](const Request& req, Response& res) {
        std::string pid = req.matches[1].str() + "/" + req.matches[2].str();
        RegistryEntry entry = registry_.resolve(pid);
        json body = json::parse(serialize_record(entry.record));
        body["source"] = std::string(to_string(entry.source));
        send_json(res, 200, body);
    }));

    server_->Get("/graph", guard([this](const Request&, Response& res) {
        std::vector<InformationRecord> records;
        for (const auto& entry : registry_.entries()) records.push_back(entry.record);
        FdoGraph graph = build_graph(records, types_);
        send_json(res, 200,
                  {{"nodes", graph.nodes()},
                   {"predicates", graph.predicates()},
                   {"triples", triples_to_json(graph.triples())}});
    }));

    server_->Get("/graph/path", guard([this](const Request& req, Response& res) {
        if (!req.has_param("from") || !req.has_param("to")) {
            throw Error(ErrorCode::MalformedRecordDocument, "from and to query parameters required");
        }
        std::string from = req.get_param_value("from");
        std::string to = req.get_param_value("to");
        std::vector<InformationRecord> records;
        for (const auto& entry : registry_.entries()) records.push_back(entry.record);
        FdoGraph graph = build_graph(records, types_);
        auto path = graph.path(from, to);
        json body = {{"from", from}, {"to", to}, {"reachable", path.has_value()}};
        if (path) {
            json steps = json::array();
            for (const auto& triple : *path) {
                steps.push_back({triple.subject, triple.predicate, triple.object});
            }
            body["path"] = std::move(steps);
        }
        send_json(res, 200, body);
    }));

    server_->Post("/conformance", guard([this](const Request& req, Response& res) {
        ConformanceReport report = conformance_.check_document(req.body);
        send_json(res, 200, json::parse(render_report(report, ReportFormat::Document)));
    }));
}

bool HttpService::listen(const std::string& host, int port) {
    return server_->listen(host, port);
}

int HttpService::start(const std::string& host) {
    int port = server_->bind_to_any_port(host);
    if (port <= 0) return -1;
    worker_ = std::thread([this] { server_->listen_after_bind(); });
    auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(5);
    while (!server_->is_running() && std::chrono::steady_clock::now() < deadline) {
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
    return port;
}

void HttpService::stop() {
    if (server_) server_->stop();
    if (worker_.joinable()) worker_.join();
}

}  // namespace fdo
