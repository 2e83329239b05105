#include "fdo/type_system.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include "json.hpp"

#include "fdo/errors.hpp"
#include "fdo/pid.hpp"

namespace fdo {

namespace {

using nlohmann::json;

json snapshot_to_json(const KernelInformationProfile& profile) {
    json attrs = json::array();
    for (const auto& attr : profile.attributes) {
        attrs.push_back({{"pid", attr.attribute_pid},
                         {"name", attr.human_name},
                         {"valueType", std::string(value_type_name(attr.value_type))},
                         {"obligatory", attr.obligatory},
                         {"repeatable", attr.repeatable}});
    }
    json doc = {{"profile_pid", profile.profile_pid},
                {"name", profile.name},
                {"attributes", std::move(attrs)}};
    if (!profile.roles.empty()) {
        json roles = json::object();
        for (const auto& [role, pid] : profile.roles) {
            roles[std::string(to_string(role))] = pid;
        }
        doc["roles"] = std::move(roles);
    }
    return doc;
}

KernelInformationProfile snapshot_from_json(const json& doc) {
    if (!doc.is_object()) throw Error(ErrorCode::MalformedSnapshot, "snapshot is not an object");
    for (const char* field : {"profile_pid", "name", "attributes"}) {
        if (!doc.contains(field)) {
            throw Error(ErrorCode::MalformedSnapshot, std::string("missing field: ") + field);
        }
    }
    if (!doc["profile_pid"].is_string() || !doc["name"].is_string() ||
        !doc["attributes"].is_array()) {
        throw Error(ErrorCode::MalformedSnapshot, "wrong field types");
    }

    KernelInformationProfile profile;
    profile.profile_pid = doc["profile_pid"].get<std::string>();
    profile.name = doc["name"].get<std::string>();
    if (!Pid::is_valid(profile.profile_pid)) {
        throw Error(ErrorCode::MalformedSnapshot, "profile_pid is not a valid PID: " + profile.profile_pid);
    }
    if (doc["attributes"].empty()) {
        throw Error(ErrorCode::MalformedSnapshot, "empty attribute list");
    }

    std::set<std::string> seen;
    for (const auto& entry : doc["attributes"]) {
        if (!entry.is_object()) throw Error(ErrorCode::MalformedSnapshot, "attribute entry is not an object");
        for (const char* field : {"pid", "name", "valueType", "obligatory", "repeatable"}) {
            if (!entry.contains(field)) {
                throw Error(ErrorCode::MalformedSnapshot, std::string("attribute missing field: ") + field);
            }
        }
        TypedAttributeDefinition attr;
        if (!entry["pid"].is_string() || !entry["name"].is_string() ||
            !entry["valueType"].is_string() || !entry["obligatory"].is_boolean() ||
            !entry["repeatable"].is_boolean()) {
            throw Error(ErrorCode::MalformedSnapshot, "attribute entry has wrong field types");
        }
        attr.attribute_pid = entry["pid"].get<std::string>();
        attr.human_name = entry["name"].get<std::string>();
        auto type = value_type_from_name(entry["valueType"].get<std::string>());
        if (!type) {
            throw Error(ErrorCode::MalformedSnapshot,
                        "unknown value type: " + entry["valueType"].get<std::string>());
        }
        attr.value_type = *type;
        attr.obligatory = entry["obligatory"].get<bool>();
        attr.repeatable = entry["repeatable"].get<bool>();
        if (!seen.insert(attr.attribute_pid).second) {
            throw Error(ErrorCode::MalformedSnapshot, "duplicate attribute PID: " + attr.attribute_pid);
        }
        profile.attributes.push_back(std::move(attr));
    }

    if (doc.contains("roles")) {
        if (!doc["roles"].is_object()) throw Error(ErrorCode::MalformedSnapshot, "roles is not an object");
        for (const auto& [key, value] : doc["roles"].items()) {
            auto role = mandatory_role_from_name(key);
            if (!role) throw Error(ErrorCode::MalformedSnapshot, "unknown role: " + key);
            if (!value.is_string()) throw Error(ErrorCode::MalformedSnapshot, "role value is not a string");
            profile.roles[*role] = value.get<std::string>();
        }
    }
    return profile;
}

}  // namespace

std::string_view to_string(MandatoryRole role) {
    switch (role) {
        case MandatoryRole::ProfileReference: return "profile_reference";
        case MandatoryRole::License: return "license";
        case MandatoryRole::Checksum: return "checksum";
        case MandatoryRole::DigitalResourceLocation: return "digital_resource_location";
        case MandatoryRole::CreationDate: return "creation_date";
        case MandatoryRole::DigitalResourceType: return "digital_resource_type";
    }
    return "profile_reference";
}

std::optional<MandatoryRole> mandatory_role_from_name(std::string_view name) {
    for (MandatoryRole role : kAllMandatoryRoles) {
        if (to_string(role) == name) return role;
    }
    return std::nullopt;
}

const TypedAttributeDefinition* KernelInformationProfile::find_attribute(
    std::string_view attribute_pid) const {
    for (const auto& attr : attributes) {
        if (attr.attribute_pid == attribute_pid) return &attr;
    }
    return nullptr;
}

std::optional<std::string> KernelInformationProfile::role_attribute(MandatoryRole role) const {
    auto it = roles.find(role);
    if (it == roles.end()) return std::nullopt;
    return it->second;
}

std::string TypeRegistry::register_attribute(const TypedAttributeDefinition& defn) {
    if (!Pid::is_valid(defn.attribute_pid)) {
        throw Error(ErrorCode::InvalidPidSyntax, "attribute PID: " + defn.attribute_pid);
    }
    if (defn.human_name.empty()) {
        throw Error(ErrorCode::InvalidPidSyntax, "attribute human name must be non-empty");
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = attributes_.emplace(defn.attribute_pid, defn);
    if (!inserted && !(it->second == defn)) {
        throw Error(ErrorCode::DuplicatePidConflict,
                    "attribute already registered with different content: " + defn.attribute_pid);
    }
    return defn.attribute_pid;
}

std::optional<TypedAttributeDefinition> TypeRegistry::find_attribute(
    std::string_view attribute_pid) const {
    std::shared_lock lock(mutex_);
    auto it = attributes_.find(attribute_pid);
    if (it == attributes_.end()) return std::nullopt;
    return it->second;
}

std::string TypeRegistry::register_profile(const KernelInformationProfile& profile) {
    if (!Pid::is_valid(profile.profile_pid)) {
        throw Error(ErrorCode::InvalidPidSyntax, "profile PID: " + profile.profile_pid);
    }
    std::set<std::string_view> seen;
    for (const auto& attr : profile.attributes) {
        if (!seen.insert(attr.attribute_pid).second) {
            throw Error(ErrorCode::DuplicatePidConflict,
                        "profile repeats attribute PID: " + attr.attribute_pid);
        }
    }
    for (const auto& attr : profile.attributes) {
        register_attribute(attr);
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = profiles_.emplace(profile.profile_pid, profile);
    if (!inserted && !(it->second == profile)) {
        throw Error(ErrorCode::DuplicatePidConflict,
                    "profile already registered with different content: " + profile.profile_pid);
    }
    return profile.profile_pid;
}

std::optional<KernelInformationProfile> TypeRegistry::find_profile(
    std::string_view profile_pid) const {
    std::shared_lock lock(mutex_);
    auto it = profiles_.find(profile_pid);
    if (it == profiles_.end()) return std::nullopt;
    return it->second;
}

bool TypeRegistry::is_profile(std::string_view pid) const {
    std::shared_lock lock(mutex_);
    return profiles_.find(pid) != profiles_.end();
}

ProfileValidationOutcome TypeRegistry::validate_profile(const KernelInformationProfile& profile,
                                                        const MandatoryRoleMap& roles) const {
    {
        std::shared_lock lock(mutex_);
        for (const auto& attr : profile.attributes) {
            auto it = attributes_.find(attr.attribute_pid);
            if (it == attributes_.end()) {
                throw Error(ErrorCode::UnknownAttributePid, attr.attribute_pid);
            }
        }
    }

    ProfileValidationOutcome outcome;
    std::set<std::string> role_targets;
    for (MandatoryRole role : kAllMandatoryRoles) {
        auto it = roles.find(role);
        if (it == roles.end()) {
            outcome.missing_roles.push_back(role);
            continue;
        }
        if (!role_targets.insert(it->second).second) {
            outcome.problems.push_back("attribute serves two roles: " + it->second);
        }
        const auto* attr = profile.find_attribute(it->second);
        if (attr == nullptr) {
            outcome.problems.push_back(std::string(to_string(role)) +
                                       " maps to an attribute outside the profile: " + it->second);
            continue;
        }
        if (!attr->obligatory) {
            outcome.problems.push_back(std::string(to_string(role)) +
                                       " maps to a non-obligatory attribute: " + it->second);
        }
        if (role == MandatoryRole::ProfileReference && attr->repeatable) {
            outcome.problems.push_back("profile reference attribute must not be repeatable: " +
                                       it->second);
        }
    }
    outcome.valid = outcome.missing_roles.empty() && outcome.problems.empty();
    return outcome;
}

KernelInformationProfile TypeRegistry::import_profile_snapshot(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedSnapshot, e.what());
    }
    KernelInformationProfile profile = snapshot_from_json(doc);
    register_profile(profile);
    return profile;
}

KernelInformationProfile TypeRegistry::import_profile_snapshot_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MalformedSnapshot, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return import_profile_snapshot(buffer.str());
}

std::string TypeRegistry::export_profile_snapshot(std::string_view profile_pid) const {
    auto profile = find_profile(profile_pid);
    if (!profile) throw Error(ErrorCode::NotFound, "profile: " + std::string(profile_pid));
    return snapshot_to_json(*profile).dump(2) + "\n";
}

std::vector<std::string> TypeRegistry::profile_pids() const {
    std::shared_lock lock(mutex_);
    std::vector<std::string> out;
    out.reserve(profiles_.size());
    for (const auto& [pid, profile] : profiles_) out.push_back(pid);
    return out;
}

size_t TypeRegistry::attribute_count() const {
    std::shared_lock lock(mutex_);
    return attributes_.size();
}

std::set<std::string> TypeRegistry::role_attribute_pids(MandatoryRole role) const {
    std::shared_lock lock(mutex_);
    std::set<std::string> out;
    for (const auto& [pid, profile] : profiles_) {
        auto it = profile.roles.find(role);
        if (it != profile.roles.end()) out.insert(it->second);
    }
    return out;
}

}  // namespace fdo
