#include "fdo/pid_registry.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "httplib.h"
#include "json.hpp"

#include "fdo/errors.hpp"

namespace fdo {

namespace {

using nlohmann::json;

std::mt19937_64& mint_engine() {
    static thread_local std::mt19937_64 engine = [] {
        std::random_device device;
        std::seed_seq seed{device(), device(), device(), device()};
        return std::mt19937_64(seed);
    }();
    return engine;
}

// 128 random bits in 8-4-4-4-12 hex grouping.
std::string random_suffix() {
    static constexpr char hex[] = "0123456789abcdef";
    std::uint64_t hi = mint_engine()();
    std::uint64_t lo = mint_engine()();
    std::string digits(32, '0');
    for (int i = 0; i < 16; ++i) {
        digits[static_cast<size_t>(i)] = hex[(hi >> (60 - 4 * i)) & 0xf];
        digits[static_cast<size_t>(16 + i)] = hex[(lo >> (60 - 4 * i)) & 0xf];
    }
    return digits.substr(0, 8) + "-" + digits.substr(8, 4) + "-" + digits.substr(12, 4) + "-" +
           digits.substr(16, 4) + "-" + digits.substr(20, 12);
}

std::string encode_filename(std::string_view suffix) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    for (char c : suffix) {
        bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '_' || c == '-';
        if (safe) {
            out.push_back(c);
        } else {
            out.push_back('%');
            out.push_back(hex[(static_cast<unsigned char>(c) >> 4) & 0xf]);
            out.push_back(hex[static_cast<unsigned char>(c) & 0xf]);
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(EntrySource source) {
    switch (source) {
        case EntrySource::Local: return "local";
        case EntrySource::Fixture: return "fixture";
        case EntrySource::Remote: return "remote";
    }
    return "local";
}

HandleProxyClient::HandleProxyClient(std::string base_url) : base_url_(std::move(base_url)) {}

std::string HandleProxyClient::normalize_handle_document(const std::string& body,
                                                         const std::string& pid) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::RemoteUnavailable, std::string("proxy returned malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("responseCode")) {
        throw Error(ErrorCode::RemoteUnavailable, "proxy response missing responseCode");
    }
    if (doc["responseCode"].get<int>() != 1) {
        throw Error(ErrorCode::NotFound, "handle not found: " + pid);
    }

    InformationRecord record;
    record.pid = doc.value("handle", pid);
    if (doc.contains("values") && doc["values"].is_array()) {
        for (const auto& entry : doc["values"]) {
            if (!entry.is_object() || !entry.contains("type") || !entry.contains("data")) continue;
            std::string type = entry["type"].is_string() ? entry["type"].get<std::string>() : "";
            if (type.empty() || type.rfind("HS_", 0) == 0) continue;
            const auto& data = entry["data"];
            if (!data.is_object() || data.value("format", "") != "string") continue;
            if (!data.contains("value") || !data["value"].is_string()) continue;
            record.add(type, data["value"].get<std::string>());
        }
    }
    return serialize_record(record);
}

std::string HandleProxyClient::fetch(const std::string& pid) const {
    std::string url = base_url_ + "/api/handles/" + pid;
    std::optional<std::string> body;
    if (transport_) {
        body = transport_(url);
    } else {
        httplib::Client client(base_url_);
        client.set_connection_timeout(5, 0);
        client.set_read_timeout(10, 0);
        auto response = client.Get("/api/handles/" + pid);
        if (response) {
            if (response->status == 404) throw Error(ErrorCode::NotFound, "handle not found: " + pid);
            if (response->status != 200) {
                throw Error(ErrorCode::RemoteUnavailable,
                            "proxy status " + std::to_string(response->status) + " for " + pid);
            }
            body = response->body;
        }
    }
    if (!body) {
        throw Error(ErrorCode::RemoteUnavailable, "no response from " + url);
    }
    return normalize_handle_document(*body, pid);
}

PidRegistry::PidRegistry(std::string prefix) : prefix_(std::move(prefix)) {
    if (!is_valid_pid_prefix(prefix_)) {
        throw Error(ErrorCode::InvalidPidSyntax, "registry prefix: " + prefix_);
    }
}

void PidRegistry::set_prefix(std::string prefix) {
    if (!is_valid_pid_prefix(prefix)) {
        throw Error(ErrorCode::InvalidPidSyntax, "registry prefix: " + prefix);
    }
    std::unique_lock lock(mutex_);
    prefix_ = std::move(prefix);
}

Pid PidRegistry::mint_locked() {
    while (true) {
        Pid pid{prefix_, random_suffix()};
        std::string text = pid.str();
        if (entries_.find(text) == entries_.end() && minted_.insert(text).second) return pid;
    }
}

Pid PidRegistry::mint_pid() {
    std::unique_lock lock(mutex_);
    return mint_locked();
}

Pid PidRegistry::store(const InformationRecord& record, EntrySource source) {
    auto parsed = Pid::parse(record.pid);
    if (!parsed) {
        throw Error(ErrorCode::InvalidPidSyntax, "record PID: " + record.pid);
    }
    RegistryEntry entry;
    entry.pid = *parsed;
    entry.record = record;
    entry.created_at = std::chrono::system_clock::now();
    entry.source = source;

    std::unique_lock lock(mutex_);
    auto it = entries_.find(record.pid);
    if (it != entries_.end()) {
        if (it->second.source == EntrySource::Local) {
            throw Error(ErrorCode::AlreadyRegistered, record.pid);
        }
        if (it->second.record == record && it->second.source == source) {
            return *parsed;  // idempotent fixture/remote reload
        }
        throw Error(ErrorCode::DuplicatePidConflict,
                    "immutable " + std::string(to_string(it->second.source)) + " entry: " + record.pid);
    }
    if (source == EntrySource::Local && persist_dir_) persist(entry);
    entries_.emplace(record.pid, std::move(entry));
    return *parsed;
}

Pid PidRegistry::mint_and_store(InformationRecord record) {
    std::unique_lock lock(mutex_);
    Pid pid = mint_locked();
    record.pid = pid.str();
    RegistryEntry entry;
    entry.pid = pid;
    entry.record = std::move(record);
    entry.created_at = std::chrono::system_clock::now();
    entry.source = EntrySource::Local;
    if (persist_dir_) persist(entry);
    entries_.emplace(pid.str(), std::move(entry));
    return pid;
}

RegistryEntry PidRegistry::resolve(const std::string& pid) const {
    {
        std::shared_lock lock(mutex_);
        auto it = entries_.find(pid);
        if (it != entries_.end()) return it->second;
    }
    if (online_ && proxy_) {
        std::string document = fetch_remote(pid);
        RegistryEntry entry;
        entry.record = parse_record_document(document, /*lenient=*/true);
        if (entry.record.pid.empty()) entry.record.pid = pid;
        auto parsed = Pid::parse(entry.record.pid);
        if (!parsed) throw Error(ErrorCode::NotFound, pid);
        entry.pid = *parsed;
        entry.created_at = std::chrono::system_clock::now();
        entry.source = EntrySource::Remote;
        return entry;
    }
    throw Error(ErrorCode::NotFound, pid);
}

bool PidRegistry::contains(const std::string& pid) const {
    std::shared_lock lock(mutex_);
    return entries_.find(pid) != entries_.end();
}

size_t PidRegistry::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

std::vector<RegistryEntry> PidRegistry::entries() const {
    std::shared_lock lock(mutex_);
    std::vector<RegistryEntry> out;
    out.reserve(entries_.size());
    for (const auto& [pid, entry] : entries_) out.push_back(entry);
    return out;
}

size_t PidRegistry::load_fixture_set(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    if (fs::is_directory(path)) {
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.is_regular_file() && entry.path().extension() == ".json") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
    } else if (fs::is_regular_file(path)) {
        files.push_back(path);
    } else {
        throw Error(ErrorCode::MalformedRecordDocument, "no such fixture path: " + path.string());
    }

    size_t loaded = 0;
    for (const auto& file : files) {
        InformationRecord record = load_record_file(file.string());
        if (record.pid.empty()) {
            throw Error(ErrorCode::MalformedRecordDocument, file.string() + ": missing pid");
        }
        store(record, EntrySource::Fixture);
        ++loaded;
    }
    {
        std::unique_lock lock(mutex_);
        fs::path root = fs::is_directory(path) ? path : path.parent_path();
        if (std::find(fixture_roots_.begin(), fixture_roots_.end(), root) == fixture_roots_.end()) {
            fixture_roots_.push_back(root);
        }
    }
    return loaded;
}

std::vector<std::filesystem::path> PidRegistry::fixture_roots() const {
    std::shared_lock lock(mutex_);
    return fixture_roots_;
}

void PidRegistry::set_proxy(HandleProxyClient client) {
    proxy_.emplace(std::move(client));
}

std::string PidRegistry::fetch_remote(const std::string& pid) const {
    if (!online_) throw Error(ErrorCode::RemoteUnavailable, "registry is in offline mode");
    if (!proxy_) throw Error(ErrorCode::RemoteUnavailable, "no proxy configured");
    {
        std::shared_lock lock(cache_mutex_);
        auto it = fetch_cache_.find(pid);
        if (it != fetch_cache_.end()) {
            ++cache_hit_count_;
            return it->second;
        }
    }
    std::string document = proxy_->fetch(pid);
    ++remote_fetch_count_;
    std::unique_lock lock(cache_mutex_);
    fetch_cache_[pid] = document;
    return document;
}

void PidRegistry::attach_persist_dir(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        InformationRecord record = load_record_file(file.string());
        if (record.pid.empty()) continue;
        if (!contains(record.pid)) store(record, EntrySource::Local);
    }
    std::unique_lock lock(mutex_);
    persist_dir_ = dir;
}

void PidRegistry::persist(const RegistryEntry& entry) const {
    auto path = *persist_dir_ / (encode_filename(entry.pid.suffix) + ".json");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << serialize_record(entry.record);
}

}  // namespace fdo
