#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"

#include "fdo/pid_registry.hpp"
#include "fdo/record.hpp"
#include "fdo/type_system.hpp"

namespace fdo {

enum class MatchKind { Exact, Prefix };

struct KeyValuePredicate {
    std::string attribute_pid;
    MatchKind match = MatchKind::Exact;
    std::string expected;
};

// Declarative association rule over a record's pairs: every required key
// present, at least one any-of key present (when the set is non-empty), and
// every predicate satisfied by at least one value of its key.
struct AssociationCriterion {
    std::set<std::string> required_keys;
    std::set<std::string> any_of_keys;
    std::vector<KeyValuePredicate> predicates;

    bool empty() const {
        return required_keys.empty() && any_of_keys.empty() && predicates.empty();
    }
};

bool criterion_matches(const AssociationCriterion& criterion, const InformationRecord& record);

enum class OperationTarget { Metadata, BitSequence };

std::string_view to_string(OperationTarget target);

struct BitSequence {
    std::string bytes;
    std::string source_location;
    std::chrono::system_clock::time_point retrieved_at;
};

struct OperationResult {
    std::string operation;
    std::string record_pid;
    std::string status;
    nlohmann::json payload;

    nlohmann::json to_json() const;
};

class OperationsEngine;

struct OperationContext {
    const InformationRecord& record;
    const OperationsEngine& engine;
    nlohmann::json params;
};

struct OperationDescriptor {
    std::string name;
    AssociationCriterion criterion;
    OperationTarget target = OperationTarget::Metadata;
    std::function<OperationResult(const OperationContext&)> executor;
};

// Registry of operations plus the association (record pairs -> operations),
// applicability (target feasibility), and bit-sequence access primitives.
class OperationsEngine {
  public:
    OperationsEngine(TypeRegistry& types, PidRegistry& registry)
        : types_(types), registry_(registry) {}

    std::string register_operation(OperationDescriptor descriptor);
    std::vector<OperationDescriptor> descriptors() const;
    std::optional<OperationDescriptor> find_operation(std::string_view name) const;

    // Exactly the registered descriptors whose criterion matches the record's
    // pairs; sorted by name, pure over (record, registry state).
    std::vector<OperationDescriptor> associate(const InformationRecord& record) const;
    std::vector<std::string> associated_names(const InformationRecord& record) const;

    bool applicable(const OperationDescriptor& descriptor, const InformationRecord& record) const;

    // Fetches the bytes behind the record's first digital-resource-location
    // value. Supports file: and http(s): locations.
    BitSequence access_bit_sequence(const InformationRecord& record) const;

    OperationResult execute(const std::string& name, const InformationRecord& record,
                            nlohmann::json params = nlohmann::json::object()) const;

    // Base directory for relative file: locations; fixture roots from the
    // registry are tried as fallbacks.
    void set_file_base(std::filesystem::path base) { file_base_ = std::move(base); }

    // Attribute PIDs serving the location role, for MissingAccessKey checks.
    std::set<std::string> location_keys() const;

    TypeRegistry& types() const { return types_; }
    PidRegistry& registry() const { return registry_; }

  private:
    TypeRegistry& types_;
    PidRegistry& registry_;
    std::filesystem::path file_base_;

    mutable std::shared_mutex mutex_;
    std::map<std::string, OperationDescriptor> operations_;
};

// Registers the six built-in operations, deriving criterion attribute PIDs
// from `profile_pid`'s role map and its hasMetadata / isMetadataFor /
// hasSchema attributes.
void register_builtin_operations(OperationsEngine& engine, const TypeRegistry& types,
                                 const std::string& profile_pid);

// SPDX identifier for a recognized license URL, if any.
std::optional<std::string> spdx_license_id(std::string_view url);

}  // namespace fdo
