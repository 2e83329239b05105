#include "fdo/record_engine.hpp"

#include <algorithm>

#include "fdo/value_types.hpp"

namespace fdo {

namespace {

void add_violation(ValidationOutcome& outcome, ViolationCode code,
                   std::optional<std::string> attribute_pid, std::string detail) {
    outcome.violations.push_back({code, std::move(attribute_pid), std::move(detail)});
}

}  // namespace

std::vector<AttributePair> RecordEngine::profile_reference_pairs(
    const InformationRecord& record) const {
    auto reference_keys = types_.role_attribute_pids(MandatoryRole::ProfileReference);
    std::vector<AttributePair> out;
    for (const auto& pair : record.pairs) {
        if (reference_keys.count(pair.attribute_pid) > 0 || types_.is_profile(pair.value)) {
            out.push_back(pair);
        }
    }
    return out;
}

ValidationOutcome RecordEngine::validate_record(const InformationRecord& record,
                                                const std::optional<std::string>& against) const {
    ValidationOutcome outcome;

    std::optional<KernelInformationProfile> profile;
    if (against) {
        profile = types_.find_profile(*against);
        if (!profile) throw Error(ErrorCode::UnknownProfile, *against);
    } else {
        auto reference_keys = types_.role_attribute_pids(MandatoryRole::ProfileReference);
        std::vector<const AttributePair*> refs;
        for (const auto& pair : record.pairs) {
            if (reference_keys.count(pair.attribute_pid) > 0) refs.push_back(&pair);
        }
        std::set<std::string> distinct;
        for (const auto* pair : refs) distinct.insert(pair->value);

        if (refs.empty()) {
            add_violation(outcome, ViolationCode::NoProfile, std::nullopt,
                          "record carries no profile reference pair");
        } else if (distinct.size() > 1) {
            std::string detail = "record references " + std::to_string(distinct.size()) + " profiles:";
            for (const auto& value : distinct) detail += " " + value;
            add_violation(outcome, ViolationCode::MultipleProfiles, refs.front()->attribute_pid,
                          detail);
        } else {
            // A syntactically invalid reference value leaves the profile
            // undetermined; the generic per-pair type check reports it.
            const std::string& value = *distinct.begin();
            if (Pid::is_valid(value)) {
                profile = types_.find_profile(value);
                if (!profile) throw Error(ErrorCode::UnknownProfile, value);
            }
        }
    }

    // Key membership, value typing, and repeatability.
    std::map<std::string, size_t> counts;
    for (const auto& pair : record.pairs) ++counts[pair.attribute_pid];

    for (const auto& [key, count] : counts) {
        const TypedAttributeDefinition* attr = nullptr;
        std::optional<TypedAttributeDefinition> registered = types_.find_attribute(key);
        if (profile) {
            attr = profile->find_attribute(key);
            if (attr == nullptr) {
                std::string detail = registered
                    ? "attribute is registered but not a member of profile " + profile->profile_pid
                    : "key is not a registered attribute PID";
                add_violation(outcome, ViolationCode::UnknownAttribute, key, detail);
                continue;
            }
        } else {
            if (!registered) {
                add_violation(outcome, ViolationCode::UnknownAttribute, key,
                              "key is not a registered attribute PID");
                continue;
            }
            attr = &*registered;
        }
        if (!attr->repeatable && count > 1) {
            add_violation(outcome, ViolationCode::RepeatViolation, key,
                          "non-repeatable attribute appears " + std::to_string(count) + " times");
        }
        for (const auto& pair : record.pairs) {
            if (pair.attribute_pid != key) continue;
            if (pair.value.empty()) {
                add_violation(outcome, ViolationCode::EmptyValue, key, "empty value");
            } else if (!validate_value(attr->value_type, pair.value)) {
                add_violation(outcome, ViolationCode::TypeMismatch, key,
                              "value \"" + pair.value + "\" does not satisfy " +
                                  std::string(value_type_name(attr->value_type)));
            }
        }
    }

    // Mandatory roles. With a known profile the role map binds each role to
    // one attribute; otherwise any registered role-bearing attribute counts.
    for (MandatoryRole role : kAllMandatoryRoles) {
        std::optional<std::string> bound;
        if (profile) bound = profile->role_attribute(role);
        bool present = false;
        if (bound) {
            present = record.has_key(*bound);
        } else {
            auto candidates = types_.role_attribute_pids(role);
            present = std::any_of(record.pairs.begin(), record.pairs.end(),
                                  [&](const AttributePair& pair) {
                                      return candidates.count(pair.attribute_pid) > 0;
                                  });
        }
        if (!present) {
            add_violation(outcome, ViolationCode::MissingMandatory, bound,
                          std::string(to_string(role)));
        }
    }

    outcome.valid = outcome.violations.empty();
    return outcome;
}

InformationRecord RecordEngine::instantiate_profile(
    const std::string& profile_pid,
    const std::map<std::string, std::vector<std::string>>& values) const {
    auto profile = types_.find_profile(profile_pid);
    if (!profile) throw Error(ErrorCode::UnknownProfile, profile_pid);

    auto reference_attr = profile->role_attribute(MandatoryRole::ProfileReference);
    InformationRecord record;
    if (reference_attr) {
        auto it = values.find(*reference_attr);
        if (it == values.end()) {
            record.add(*reference_attr, profile_pid);
        } else {
            for (const auto& value : it->second) {
                if (value != profile_pid) {
                    ValidationOutcome outcome;
                    add_violation(outcome, ViolationCode::MultipleProfiles, *reference_attr,
                                  "instantiating " + profile_pid + " but reference value is " + value);
                    throw ValidationError(std::move(outcome));
                }
            }
        }
    }
    for (const auto& [key, list] : values) {
        for (const auto& value : list) record.add(key, value);
    }

    ValidationOutcome outcome = reference_attr ? validate_record(record)
                                               : validate_record(record, profile_pid);
    if (!outcome.valid) throw ValidationError(std::move(outcome));
    return record;
}

Pid RecordEngine::register_record(InformationRecord& record) {
    if (!record.pid.empty()) {
        throw Error(ErrorCode::AlreadyRegistered, record.pid);
    }
    ValidationOutcome outcome = validate_record(record);
    if (!outcome.valid) throw ValidationError(std::move(outcome));
    Pid pid = registry_.mint_and_store(record);
    record.pid = pid.str();
    return pid;
}

std::vector<AttributePair> RecordEngine::referencing_pairs(const InformationRecord& record) const {
    std::vector<AttributePair> out;
    for (const auto& pair : record.pairs) {
        auto attr = types_.find_attribute(pair.attribute_pid);
        if (attr && is_reference_type(attr->value_type)) out.push_back(pair);
    }
    return out;
}

}  // namespace fdo
