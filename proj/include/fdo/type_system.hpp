#pragma once

#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "fdo/value_types.hpp"

namespace fdo {

// A PID-identified attribute definition. The PID is the only key records use;
// the human name is for display and reporting.
struct TypedAttributeDefinition {
    std::string attribute_pid;
    std::string human_name;
    ValueType value_type = ValueType::String;
    bool obligatory = false;
    bool repeatable = false;

    bool operator==(const TypedAttributeDefinition&) const = default;
};

// The six roles every complete profile must cover.
enum class MandatoryRole {
    ProfileReference,
    License,
    Checksum,
    DigitalResourceLocation,
    CreationDate,
    DigitalResourceType,
};

inline constexpr MandatoryRole kAllMandatoryRoles[] = {
    MandatoryRole::ProfileReference,        MandatoryRole::License,
    MandatoryRole::Checksum,                MandatoryRole::DigitalResourceLocation,
    MandatoryRole::CreationDate,            MandatoryRole::DigitalResourceType,
};

std::string_view to_string(MandatoryRole role);
std::optional<MandatoryRole> mandatory_role_from_name(std::string_view name);

// role -> attribute PID fulfilling it within one profile.
using MandatoryRoleMap = std::map<MandatoryRole, std::string>;

struct KernelInformationProfile {
    std::string profile_pid;
    std::string name;
    std::vector<TypedAttributeDefinition> attributes;
    // Present only for profiles that declare which attribute fills each
    // mandatory role. Foreign profiles may omit it.
    MandatoryRoleMap roles;

    bool operator==(const KernelInformationProfile&) const = default;

    const TypedAttributeDefinition* find_attribute(std::string_view attribute_pid) const;
    std::optional<std::string> role_attribute(MandatoryRole role) const;
};

struct ProfileValidationOutcome {
    bool valid = false;
    std::vector<MandatoryRole> missing_roles;
    std::vector<std::string> problems;
};

// Local mirror of a Data Type Registry: attribute definitions and profiles,
// keyed by PID. Definitions are immutable once registered; re-registering
// identical content is a no-op, conflicting content is rejected.
class TypeRegistry {
  public:
    std::string register_attribute(const TypedAttributeDefinition& defn);
    std::optional<TypedAttributeDefinition> find_attribute(std::string_view attribute_pid) const;

    std::string register_profile(const KernelInformationProfile& profile);
    std::optional<KernelInformationProfile> find_profile(std::string_view profile_pid) const;
    bool is_profile(std::string_view pid) const;

    ProfileValidationOutcome validate_profile(const KernelInformationProfile& profile,
                                              const MandatoryRoleMap& roles) const;

    // Snapshot document: {profile_pid, name, attributes:[{pid, name,
    // valueType, obligatory, repeatable}], roles?:{role -> attribute pid}}.
    KernelInformationProfile import_profile_snapshot(const std::string& document);
    KernelInformationProfile import_profile_snapshot_file(const std::string& path);
    std::string export_profile_snapshot(std::string_view profile_pid) const;

    std::vector<std::string> profile_pids() const;
    size_t attribute_count() const;

    // Attribute PIDs serving `role` in any registered profile's role map.
    std::set<std::string> role_attribute_pids(MandatoryRole role) const;

  private:
    mutable std::shared_mutex mutex_;
    std::map<std::string, TypedAttributeDefinition, std::less<>> attributes_;
    std::map<std::string, KernelInformationProfile, std::less<>> profiles_;
};

}  // namespace fdo
