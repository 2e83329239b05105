#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "fdo/pid.hpp"
#include "fdo/record.hpp"

namespace fdo {

enum class EntrySource { Local, Fixture, Remote };

std::string_view to_string(EntrySource source);

struct RegistryEntry {
    Pid pid;
    InformationRecord record;
    std::chrono::system_clock::time_point created_at;
    EntrySource source = EntrySource::Local;
};

// Resolves a PID through a Handle proxy (GET {base}/api/handles/{pid}) and
// normalizes the response into the record exchange format. Swappable for
// tests via set_transport.
class HandleProxyClient {
  public:
    explicit HandleProxyClient(std::string base_url);

    // Returns the normalized exchange-format document.
    std::string fetch(const std::string& pid) const;

    using Transport = std::function<std::optional<std::string>(const std::string& url)>;
    void set_transport(Transport transport) { transport_ = std::move(transport); }

    const std::string& base_url() const { return base_url_; }

    static std::string normalize_handle_document(const std::string& body, const std::string& pid);

  private:
    std::string base_url_;
    Transport transport_;
};

// Thread-safe PID store: mints PIDs, keeps registered records, loads
// read-only fixture snapshots, and (in online mode) falls back to a Handle
// proxy with a fetch cache.
class PidRegistry {
  public:
    explicit PidRegistry(std::string prefix = "21.11152.test");

    const std::string& prefix() const { return prefix_; }
    void set_prefix(std::string prefix);

    Pid mint_pid();

    // Inserts a record that already carries a PID. Existing local entries are
    // write-once; fixture reloads with identical content are no-ops.
    Pid store(const InformationRecord& record, EntrySource source = EntrySource::Local);

    // Atomic mint+insert: assigns a fresh PID to the record and stores it.
    Pid mint_and_store(InformationRecord record);

    RegistryEntry resolve(const std::string& pid) const;
    bool contains(const std::string& pid) const;
    size_t size() const;
    std::vector<RegistryEntry> entries() const;

    // Loads every *.json record document directly inside `path`.
    size_t load_fixture_set(const std::filesystem::path& path);
    std::vector<std::filesystem::path> fixture_roots() const;

    // Online mode and proxy configuration.
    void set_online(bool online) { online_ = online; }
    bool online() const { return online_; }
    void set_proxy(HandleProxyClient client);

    // Raw fetch through the proxy; cached by PID.
    std::string fetch_remote(const std::string& pid) const;

    std::uint64_t remote_fetch_count() const { return remote_fetch_count_.load(); }
    std::uint64_t cache_hit_count() const { return cache_hit_count_.load(); }

    // Optional durable storage: local registrations are mirrored to
    // <dir>/<encoded-suffix>.json and reloaded on attach.
    void attach_persist_dir(const std::filesystem::path& dir);

  private:
    Pid mint_locked();
    void persist(const RegistryEntry& entry) const;

    std::string prefix_;
    bool online_ = false;
    std::optional<HandleProxyClient> proxy_;

    mutable std::shared_mutex mutex_;
    std::map<std::string, RegistryEntry> entries_;
    std::set<std::string> minted_;
    std::vector<std::filesystem::path> fixture_roots_;
    std::optional<std::filesystem::path> persist_dir_;

    mutable std::shared_mutex cache_mutex_;
    mutable std::map<std::string, std::string> fetch_cache_;
    mutable std::atomic<std::uint64_t> remote_fetch_count_{0};
    mutable std::atomic<std::uint64_t> cache_hit_count_{0};
};

}  // namespace fdo
