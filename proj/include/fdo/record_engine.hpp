#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdo/pid_registry.hpp"
#include "fdo/record.hpp"
#include "fdo/type_system.hpp"

namespace fdo {

// Creates and validates information records against Kernel Information
// Profiles: exactly one profile per record, mandatory roles present, every
// value non-empty and type-valid, repeatability respected.
class RecordEngine {
  public:
    RecordEngine(TypeRegistry& types, PidRegistry& registry)
        : types_(types), registry_(registry) {}

    // Builds an unregistered record instantiating `profile_pid`. The
    // profile-reference pair is added automatically when absent. Throws
    // ValidationError if the result would not validate; nothing is stored.
    InformationRecord instantiate_profile(
        const std::string& profile_pid,
        const std::map<std::string, std::vector<std::string>>& values) const;

    // Validates, mints a PID, and stores the record; sets record.pid.
    Pid register_record(InformationRecord& record);

    // When `against` is given the record is judged as if it instantiated that
    // profile; otherwise the profile is taken from the record's own
    // profile-reference pair. Throws UnknownProfile if the referenced profile
    // cannot be resolved.
    ValidationOutcome validate_record(const InformationRecord& record,
                                      const std::optional<std::string>& against = std::nullopt) const;

    // Pairs whose attribute type can reference other entities
    // (handle-identifier-ascii or url). Pairs with unregistered keys are
    // skipped.
    std::vector<AttributePair> referencing_pairs(const InformationRecord& record) const;

    // Pairs whose key serves the profile_reference role in some registered
    // profile, or whose value resolves to a registered profile.
    std::vector<AttributePair> profile_reference_pairs(const InformationRecord& record) const;

    TypeRegistry& types() { return types_; }
    PidRegistry& registry() { return registry_; }

  private:
    TypeRegistry& types_;
    PidRegistry& registry_;
};

}  // namespace fdo
