#pragma once

#include <memory>
#include <string>
#include <thread>

#include "fdo/conformance.hpp"
#include "fdo/operations.hpp"
#include "fdo/pid_registry.hpp"
#include "fdo/record_engine.hpp"
#include "fdo/type_system.hpp"

namespace httplib {
class Server;
}

namespace fdo {

// Maps a module error onto the wire: HTTP status plus the stable code string.
int http_status_for(ErrorCode code);

// JSON-over-HTTP surface for the toolkit. Bodies use the record exchange
// format; errors serialize as {"error": {"code", "detail", "status"}}.
class HttpService {
  public:
    HttpService(TypeRegistry& types, PidRegistry& registry, RecordEngine& engine,
                OperationsEngine& operations, ConformanceChecker& conformance);
    ~HttpService();

    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    // Blocking listen on a fixed port.
    bool listen(const std::string& host, int port);

    // Binds an ephemeral port and serves on a background thread; returns the
    // port. Used by tests.
    int start(const std::string& host);
    void stop();

  private:
    void install_routes();

    TypeRegistry& types_;
    PidRegistry& registry_;
    RecordEngine& engine_;
    OperationsEngine& operations_;
    ConformanceChecker& conformance_;
    std::unique_ptr<httplib::Server> server_;
    std::thread worker_;
};

}  // namespace fdo
