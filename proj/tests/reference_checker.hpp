#pragma once

// Independent reference model for record validation. The attribute table,
// role bindings, value pools, and rule logic here are written out from
// scratch and never call into the engine, so the two implementations can be
// cross-checked against each other on generated records.
//
// Domain restriction: the generator only emits keys from the Helmholtz
// profile (plus deliberately unknown keys), so the reference table can stay
// a single flat map.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fdo/record.hpp"
#include "support.hpp"

namespace refmodel {

struct AttrInfo {
    std::string type;
    bool obligatory = false;
    bool repeatable = false;
};

inline const std::map<std::string, AttrInfo>& attribute_table() {
    static const std::map<std::string, AttrInfo> table = {
        {testsup::kAttrProfile, {"handle", true, false}},
        {testsup::kAttrLocation, {"url", true, true}},
        {testsup::kAttrCreated, {"datetime", true, false}},
        {testsup::kAttrModified, {"datetime", false, false}},
        {testsup::kAttrLicense, {"url", true, false}},
        {testsup::kAttrType, {"mediatype", true, false}},
        {testsup::kAttrChecksum, {"checksum", true, false}},
        {testsup::kAttrVersion, {"version", false, false}},
        {testsup::kAttrHasMetadata, {"handle", false, true}},
        {testsup::kAttrIsMetadataFor, {"handle", false, true}},
        {testsup::kAttrHasSchema, {"url", false, false}},
        {testsup::kAttrTopic, {"url", false, true}},
        {testsup::kAttrContact, {"url", false, true}},
        {testsup::kAttrIdentifier, {"string", false, true}},
        {testsup::kAttrLanguage, {"language", false, true}},
    };
    return table;
}

// role -> attribute PID, mirroring the bundled profile's role map.
inline const std::vector<std::pair<std::string, std::string>>& role_bindings() {
    static const std::vector<std::pair<std::string, std::string>> roles = {
        {"profile_reference", testsup::kAttrProfile},
        {"license", testsup::kAttrLicense},
        {"checksum", testsup::kAttrChecksum},
        {"digital_resource_location", testsup::kAttrLocation},
        {"creation_date", testsup::kAttrCreated},
        {"digital_resource_type", testsup::kAttrType},
    };
    return roles;
}

// Known-valid and known-invalid exemplars per type. Every value the
// generator plants comes from these pools, so type validity is decided by
// pool membership instead of re-running any validator.
inline const std::vector<std::string>& valid_pool(const std::string& type) {
    static const std::map<std::string, std::vector<std::string>> pools = {
        {"handle",
         {testsup::kHelmholtzProfile, testsup::kPidinstProfile, testsup::kNodeB, "0.NA/admin",
          "10.5072/demo-object"}},
        {"url",
         {"https://example.org/a", "http://example.org", "file:payloads/x.tif",
          "mailto:user@example.org", "https://creativecommons.org/licenses/by/4.0/"}},
        {"datetime",
         {"2022-08-25T08:00:00Z", "2021-03-27t09:15:00z", "1990-12-31T23:59:60Z",
          "2024-02-29T12:30:45+02:00"}},
        {"mediatype",
         {"application/json", "image/tiff", "text/xml; charset=utf-8",
          "application/octet-stream"}},
        {"checksum",
         {"sha256:2cf24dba5fb0a30e26e83b2ac5b9e29e1b161e5c1fa7425e73043362938b9824",
          "md5:ffffffffffffffffffffffffffffffff",
          "sha1:A94A8FE5ccb19ba61c4c0873d391e987982fbbd3"}},
        {"version", {"1", "1.0", "1.2.3", "0.0.0.1"}},
        {"language", {"en", "de", "fr"}},
        {"string", {"plain text value", "RMNH.ARA.952138", "x"}},
    };
    return pools.at(type);
}

inline const std::vector<std::string>& invalid_pool(const std::string& type) {
    static const std::map<std::string, std::vector<std::string>> pools = {
        {"handle", {"no-slash", "/leading", "trailing/", "spa ce/x", "21..T11148/x"}},
        {"url", {"not a url", "http//missing-colon", "https://e.org/%zz", "https://e.org/a#b#c"}},
        {"datetime", {"2022-08-25", "2023-02-29T00:00:00Z", "2022-08-25T24:00:00Z", "yesterday"}},
        {"mediatype", {"application", "/json", "application/json;", "application/js on"}},
        {"checksum",
         {"sha256:xyz", "SHA256:2cf24dba5fb0a30e26e83b2ac5b9e29e1b161e5c1fa7425e73043362938b982",
          "crc32:abcdef12"}},
        {"version", {"v1", "1..2", "1.2.3.4.5", "1."}},
        {"language", {"EN", "eng", "e", "d3"}},
        {"string", {}},
    };
    return pools.at(type);
}

// Pool-membership ground truth. String-typed values are valid whenever
// non-empty.
inline bool planted_value_ok(const std::string& key, const std::string& value) {
    auto it = attribute_table().find(key);
    if (it == attribute_table().end()) return true;
    if (it->second.type == "string") return !value.empty();
    const auto& valid = valid_pool(it->second.type);
    return std::find(valid.begin(), valid.end(), value) != valid.end();
}

// (code, attribute-or-empty) pairs, sorted, for multiset comparison.
using ViolationSet = std::vector<std::pair<std::string, std::string>>;

struct NaiveOutcome {
    bool valid = false;
    ViolationSet violations;
};

inline NaiveOutcome naive_check(const fdo::InformationRecord& record) {
    NaiveOutcome out;
    auto add = [&](const char* code, const std::string& attr) {
        out.violations.emplace_back(code, attr);
    };
    const auto& table = attribute_table();

    std::vector<std::string> ref_values;
    for (const auto& pair : record.pairs) {
        if (pair.attribute_pid == testsup::kAttrProfile) ref_values.push_back(pair.value);
    }
    std::set<std::string> distinct(ref_values.begin(), ref_values.end());
    bool profile_known = false;
    if (ref_values.empty()) {
        add("NoProfile", "");
    } else if (distinct.size() > 1) {
        add("MultipleProfiles", testsup::kAttrProfile);
    } else {
        profile_known = *distinct.begin() == testsup::kHelmholtzProfile;
    }

    std::map<std::string, int> counts;
    for (const auto& pair : record.pairs) counts[pair.attribute_pid]++;
    for (const auto& [key, count] : counts) {
        auto it = table.find(key);
        if (it == table.end()) {
            add("UnknownAttribute", key);
            continue;
        }
        if (!it->second.repeatable && count > 1) add("RepeatViolation", key);
        for (const auto& pair : record.pairs) {
            if (pair.attribute_pid != key) continue;
            if (pair.value.empty()) {
                add("EmptyValue", key);
            } else if (!planted_value_ok(key, pair.value)) {
                add("TypeMismatch", key);
            }
        }
    }

    for (const auto& [role, attr] : role_bindings()) {
        (void)role;
        if (!record.has_key(attr)) {
            add("MissingMandatory", profile_known ? attr : std::string());
        }
    }

    std::sort(out.violations.begin(), out.violations.end());
    out.valid = out.violations.empty();
    return out;
}

inline ViolationSet flatten(const fdo::ValidationOutcome& outcome) {
    ViolationSet flat;
    for (const auto& v : outcome.violations) {
        flat.emplace_back(std::string(to_string(v.code)), v.attribute_pid.value_or(""));
    }
    std::sort(flat.begin(), flat.end());
    return flat;
}

struct GeneratedCase {
    fdo::InformationRecord record;
    std::string trace;
};

// Seeded generator: a valid base record, zero to three structured mutations,
// then a pair shuffle.
class RecordGenerator {
  public:
    explicit RecordGenerator(std::uint64_t seed) : rng_(seed) {}

    GeneratedCase next() {
        GeneratedCase out;
        fdo::InformationRecord& record = out.record;

        record.add(testsup::kAttrProfile, testsup::kHelmholtzProfile);
        record.add(testsup::kAttrLicense, pick(valid_pool("url")));
        record.add(testsup::kAttrChecksum, pick(valid_pool("checksum")));
        record.add(testsup::kAttrLocation, pick(valid_pool("url")));
        record.add(testsup::kAttrCreated, pick(valid_pool("datetime")));
        record.add(testsup::kAttrType, pick(valid_pool("mediatype")));

        for (const auto& [key, info] :
             std::initializer_list<std::pair<std::string, std::string>>{
                 {testsup::kAttrVersion, "version"},
                 {testsup::kAttrLanguage, "language"},
                 {testsup::kAttrHasMetadata, "handle"},
                 {testsup::kAttrIsMetadataFor, "handle"},
                 {testsup::kAttrHasSchema, "url"},
                 {testsup::kAttrTopic, "url"},
                 {testsup::kAttrIdentifier, "string"},
                 {testsup::kAttrModified, "datetime"}}) {
            if (chance(35)) record.add(key, pick(valid_pool(info)));
        }

        int mutations = pick_int(0, 3);
        for (int i = 0; i < mutations; ++i) apply_mutation(out);

        std::shuffle(record.pairs.begin(), record.pairs.end(), rng_);
        return out;
    }

  private:
    void apply_mutation(GeneratedCase& out) {
        fdo::InformationRecord& record = out.record;
        switch (pick_int(0, 8)) {
            case 0: {  // drop a mandatory non-reference pair
                static const std::vector<std::string> mandatory = {
                    testsup::kAttrLicense, testsup::kAttrChecksum, testsup::kAttrLocation,
                    testsup::kAttrCreated, testsup::kAttrType};
                erase_key(record, pick(mandatory));
                out.trace += " drop-mandatory";
                break;
            }
            case 1:
                erase_key(record, testsup::kAttrProfile);
                out.trace += " drop-profile-ref";
                break;
            case 2: {  // corrupt one value
                auto targets = corruptible_pairs(record);
                if (targets.empty()) break;
                auto& pair = record.pairs[pick(targets)];
                pair.value = pick(invalid_pool(attribute_table().at(pair.attribute_pid).type));
                out.trace += " corrupt:" + pair.attribute_pid;
                break;
            }
            case 3: {  // blank one value
                if (record.pairs.empty()) break;
                auto& pair = record.pairs[pick_int(0, int(record.pairs.size()) - 1)];
                pair.value.clear();
                out.trace += " empty:" + pair.attribute_pid;
                break;
            }
            case 4:
                record.add("legacy/customNote", "free text");
                out.trace += " unknown-pid-key";
                break;
            case 5:
                record.add("license", "https://example.org/license");
                out.trace += " human-name-key";
                break;
            case 6:
                record.add(testsup::kAttrLicense, pick(valid_pool("url")));
                out.trace += " duplicate-license";
                break;
            case 7:
                // Only ever a second distinct value: a lone foreign reference
                // would make the engine adopt that profile's member list,
                // which the flat reference table deliberately does not model.
                if (!record.has_key(testsup::kAttrProfile)) break;
                record.add(testsup::kAttrProfile, testsup::kPidinstProfile);
                out.trace += " second-profile";
                break;
            case 8:
                record.add(testsup::kAttrHasMetadata, pick(valid_pool("handle")));
                out.trace += " extra-repeatable";
                break;
        }
    }

    // Indices of pairs whose type has corruption exemplars; the profile
    // reference is included (handle-typed), string-typed keys are not.
    std::vector<size_t> corruptible_pairs(const fdo::InformationRecord& record) {
        std::vector<size_t> out;
        for (size_t i = 0; i < record.pairs.size(); ++i) {
            auto it = attribute_table().find(record.pairs[i].attribute_pid);
            if (it != attribute_table().end() && !invalid_pool(it->second.type).empty()) {
                out.push_back(i);
            }
        }
        return out;
    }

    static void erase_key(fdo::InformationRecord& record, const std::string& key) {
        std::erase_if(record.pairs,
                      [&](const fdo::AttributePair& pair) { return pair.attribute_pid == key; });
    }

    template <typename T>
    const T& pick(const std::vector<T>& pool) {
        return pool[pick_int(0, int(pool.size()) - 1)];
    }
    size_t pick(const std::vector<size_t>& pool) {
        return pool[pick_int(0, int(pool.size()) - 1)];
    }

    int pick_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(int percent) { return pick_int(1, 100) <= percent; }

    std::mt19937_64 rng_;
};

}  // namespace refmodel
