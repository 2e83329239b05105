#include "fdo/operations.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "httplib.h"

#include "fdo/digest.hpp"
#include "fdo/errors.hpp"
#include "fdo/value_types.hpp"

namespace fdo {

namespace {

using nlohmann::json;

bool value_matches(const KeyValuePredicate& predicate, const std::string& value) {
    if (predicate.match == MatchKind::Exact) return value == predicate.expected;
    return value.rfind(predicate.expected, 0) == 0;
}

std::string to_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FetchFailed, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string fetch_http(const std::string& url) {
    auto path_start = url.find('/', url.find("://") + 3);
    std::string origin = path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
    httplib::Client client(origin);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(15, 0);
    client.set_follow_location(true);
    auto response = client.Get(path);
    if (!response) throw Error(ErrorCode::FetchFailed, "no response from " + url);
    if (response->status != 200) {
        throw Error(ErrorCode::FetchFailed,
                    "status " + std::to_string(response->status) + " from " + url);
    }
    return response->body;
}

struct Bbox {
    double min_x, min_y, max_x, max_y;

    bool intersects(const Bbox& other) const {
        return min_x <= other.max_x && other.min_x <= max_x &&
               min_y <= other.max_y && other.min_y <= max_y;
    }
};

std::optional<Bbox> bbox_from_json(const json& value) {
    if (!value.is_array() || value.size() < 4) return std::nullopt;
    for (size_t i = 0; i < 4; ++i) {
        if (!value[i].is_number()) return std::nullopt;
    }
    return Bbox{value[0].get<double>(), value[1].get<double>(),
                value[2].get<double>(), value[3].get<double>()};
}

// A STAC Feature carries "bbox" at the top level; a Collection nests it under
// extent.spatial.bbox[0]. Fixture-specific convention, not stable API.
std::optional<Bbox> payload_bbox(const json& doc) {
    if (doc.contains("bbox")) return bbox_from_json(doc["bbox"]);
    if (doc.contains("extent") && doc["extent"].contains("spatial")) {
        const auto& spatial = doc["extent"]["spatial"];
        if (spatial.contains("bbox") && spatial["bbox"].is_array() && !spatial["bbox"].empty()) {
            return bbox_from_json(spatial["bbox"][0]);
        }
    }
    return std::nullopt;
}

struct TimeSpan {
    Rfc3339Timestamp start;
    Rfc3339Timestamp end;
};

std::optional<TimeSpan> payload_timespan(const json& doc) {
    if (doc.contains("properties") && doc["properties"].contains("datetime") &&
        doc["properties"]["datetime"].is_string()) {
        auto instant = parse_rfc3339(doc["properties"]["datetime"].get<std::string>());
        if (!instant) return std::nullopt;
        return TimeSpan{*instant, *instant};
    }
    if (doc.contains("extent") && doc["extent"].contains("temporal")) {
        const auto& temporal = doc["extent"]["temporal"];
        if (temporal.contains("interval") && temporal["interval"].is_array() &&
            !temporal["interval"].empty() && temporal["interval"][0].is_array() &&
            temporal["interval"][0].size() >= 2) {
            const auto& interval = temporal["interval"][0];
            if (!interval[0].is_string() || !interval[1].is_string()) return std::nullopt;
            auto start = parse_rfc3339(interval[0].get<std::string>());
            auto end = parse_rfc3339(interval[1].get<std::string>());
            if (!start || !end) return std::nullopt;
            return TimeSpan{*start, *end};
        }
    }
    return std::nullopt;
}

Rfc3339Timestamp param_timestamp(const json& params, const char* key,
                                 const std::string& fallback) {
    std::string text = fallback;
    if (params.contains(key)) {
        if (!params[key].is_string()) {
            throw Error(ErrorCode::InvalidCriterion, std::string(key) + " must be a string");
        }
        text = params[key].get<std::string>();
    }
    auto parsed = parse_rfc3339(text);
    if (!parsed) {
        throw Error(ErrorCode::InvalidCriterion,
                    std::string(key) + " is not an RFC 3339 date-time: " + text);
    }
    return *parsed;
}

}  // namespace

bool criterion_matches(const AssociationCriterion& criterion, const InformationRecord& record) {
    for (const auto& key : criterion.required_keys) {
        if (!record.has_key(key)) return false;
    }
    if (!criterion.any_of_keys.empty()) {
        bool any = std::any_of(criterion.any_of_keys.begin(), criterion.any_of_keys.end(),
                               [&](const std::string& key) { return record.has_key(key); });
        if (!any) return false;
    }
    for (const auto& predicate : criterion.predicates) {
        auto values = record.values_of(predicate.attribute_pid);
        bool satisfied = std::any_of(values.begin(), values.end(), [&](const std::string& value) {
            return value_matches(predicate, value);
        });
        if (!satisfied) return false;
    }
    return true;
}

std::string_view to_string(OperationTarget target) {
    return target == OperationTarget::Metadata ? "metadata" : "bit_sequence";
}

json OperationResult::to_json() const {
    return {{"operation", operation},
            {"record_pid", record_pid},
            {"status", status},
            {"payload", payload}};
}

std::string OperationsEngine::register_operation(OperationDescriptor descriptor) {
    if (descriptor.name.empty()) {
        throw Error(ErrorCode::InvalidCriterion, "operation name must be non-empty");
    }
    if (descriptor.criterion.empty()) {
        throw Error(ErrorCode::InvalidCriterion,
                    "criterion needs at least one key or predicate: " + descriptor.name);
    }
    auto check_registered = [&](const std::string& pid) {
        if (!types_.find_attribute(pid)) {
            throw Error(ErrorCode::InvalidCriterion,
                        "criterion references unregistered attribute: " + pid);
        }
    };
    for (const auto& key : descriptor.criterion.required_keys) check_registered(key);
    for (const auto& key : descriptor.criterion.any_of_keys) check_registered(key);
    for (const auto& predicate : descriptor.criterion.predicates) {
        check_registered(predicate.attribute_pid);
    }

    std::unique_lock lock(mutex_);
    auto [it, inserted] = operations_.emplace(descriptor.name, descriptor);
    if (!inserted) {
        throw Error(ErrorCode::DuplicateOperationName, descriptor.name);
    }
    return descriptor.name;
}

std::vector<OperationDescriptor> OperationsEngine::descriptors() const {
    std::shared_lock lock(mutex_);
    std::vector<OperationDescriptor> out;
    out.reserve(operations_.size());
    for (const auto& [name, descriptor] : operations_) out.push_back(descriptor);
    return out;
}

std::optional<OperationDescriptor> OperationsEngine::find_operation(std::string_view name) const {
    std::shared_lock lock(mutex_);
    auto it = operations_.find(std::string(name));
    if (it == operations_.end()) return std::nullopt;
    return it->second;
}

std::vector<OperationDescriptor> OperationsEngine::associate(
    const InformationRecord& record) const {
    std::vector<OperationDescriptor> out;
    std::shared_lock lock(mutex_);
    for (const auto& [name, descriptor] : operations_) {
        if (criterion_matches(descriptor.criterion, record)) out.push_back(descriptor);
    }
    return out;
}

std::vector<std::string> OperationsEngine::associated_names(const InformationRecord& record) const {
    std::vector<std::string> out;
    for (const auto& descriptor : associate(record)) out.push_back(descriptor.name);
    return out;
}

std::set<std::string> OperationsEngine::location_keys() const {
    return types_.role_attribute_pids(MandatoryRole::DigitalResourceLocation);
}

bool OperationsEngine::applicable(const OperationDescriptor& descriptor,
                                  const InformationRecord& record) const {
    if (!criterion_matches(descriptor.criterion, record)) return false;
    if (descriptor.target == OperationTarget::Metadata) return true;
    auto keys = location_keys();
    return std::any_of(record.pairs.begin(), record.pairs.end(), [&](const AttributePair& pair) {
        return keys.count(pair.attribute_pid) > 0 && !pair.value.empty();
    });
}

BitSequence OperationsEngine::access_bit_sequence(const InformationRecord& record) const {
    auto keys = location_keys();
    std::optional<std::string> location;
    for (const auto& pair : record.pairs) {
        if (keys.count(pair.attribute_pid) > 0) {
            location = pair.value;
            break;
        }
    }
    if (!location || location->empty()) {
        throw Error(ErrorCode::MissingAccessKey, "digital resource location is missing");
    }

    BitSequence bits;
    bits.source_location = *location;
    bits.retrieved_at = std::chrono::system_clock::now();

    if (location->rfind("file:", 0) == 0) {
        std::string raw = location->substr(5);
        if (raw.rfind("//", 0) == 0) raw = raw.substr(2);
        std::filesystem::path path(raw);
        if (path.is_absolute()) {
            bits.bytes = read_file(path);
            return bits;
        }
        std::vector<std::filesystem::path> bases;
        if (!file_base_.empty()) bases.push_back(file_base_);
        for (const auto& root : registry_.fixture_roots()) bases.push_back(root);
        bases.push_back(std::filesystem::current_path());
        for (const auto& base : bases) {
            auto candidate = base / path;
            if (std::filesystem::is_regular_file(candidate)) {
                bits.bytes = read_file(candidate);
                return bits;
            }
        }
        throw Error(ErrorCode::FetchFailed, "no such file: " + raw);
    }
    if (location->rfind("http://", 0) == 0 || location->rfind("https://", 0) == 0) {
        bits.bytes = fetch_http(*location);
        return bits;
    }
    throw Error(ErrorCode::FetchFailed, "unsupported location scheme: " + *location);
}

OperationResult OperationsEngine::execute(const std::string& name,
                                          const InformationRecord& record, json params) const {
    auto descriptor = find_operation(name);
    if (!descriptor) throw Error(ErrorCode::NotFound, "operation: " + name);
    if (!applicable(*descriptor, record)) {
        throw Error(ErrorCode::NotApplicable, name + " is not applicable to record " +
                                                  (record.pid.empty() ? "<unregistered>" : record.pid));
    }
    OperationContext context{record, *this, std::move(params)};
    OperationResult result = descriptor->executor(context);
    result.operation = name;
    result.record_pid = record.pid;
    return result;
}

std::optional<std::string> spdx_license_id(std::string_view url) {
    std::string s(url);
    auto scheme = s.find("://");
    if (scheme != std::string::npos) s = s.substr(scheme + 3);
    if (s.rfind("www.", 0) == 0) s = s.substr(4);
    while (!s.empty() && s.back() == '/') s.pop_back();

    // spdx.org/licenses/<ID> passes the identifier through verbatim.
    std::string lowered = to_lower(s);
    if (lowered.rfind("spdx.org/licenses/", 0) == 0) {
        std::string id = s.substr(std::string("spdx.org/licenses/").size());
        if (!id.empty()) return id;
        return std::nullopt;
    }

    static const std::array<std::pair<std::string_view, std::string_view>, 12> table = {{
        {"creativecommons.org/licenses/by/4.0", "CC-BY-4.0"},
        {"creativecommons.org/licenses/by-sa/4.0", "CC-BY-SA-4.0"},
        {"creativecommons.org/licenses/by-nc/4.0", "CC-BY-NC-4.0"},
        {"creativecommons.org/licenses/by-nd/4.0", "CC-BY-ND-4.0"},
        {"creativecommons.org/publicdomain/zero/1.0", "CC0-1.0"},
        {"opensource.org/licenses/mit", "MIT"},
        {"opensource.org/licenses/apache-2.0", "Apache-2.0"},
        {"apache.org/licenses/license-2.0", "Apache-2.0"},
        {"gnu.org/licenses/gpl-3.0", "GPL-3.0-only"},
        {"gnu.org/licenses/agpl-3.0", "AGPL-3.0-only"},
        {"gnu.org/licenses/lgpl-3.0", "LGPL-3.0-only"},
        {"opensource.org/licenses/bsd-3-clause", "BSD-3-Clause"},
    }};
    for (const auto& [fragment, id] : table) {
        if (lowered == fragment || lowered.rfind(std::string(fragment) + "/", 0) == 0) {
            return std::string(id);
        }
    }
    return std::nullopt;
}

void register_builtin_operations(OperationsEngine& engine, const TypeRegistry& types,
                                 const std::string& profile_pid) {
    auto profile = types.find_profile(profile_pid);
    if (!profile) throw Error(ErrorCode::UnknownProfile, profile_pid);
    if (profile->roles.empty()) {
        throw Error(ErrorCode::InvalidCriterion,
                    "profile declares no role map: " + profile_pid);
    }
    auto role_pid = [&](MandatoryRole role) {
        auto pid = profile->role_attribute(role);
        if (!pid) {
            throw Error(ErrorCode::InvalidCriterion,
                        "profile misses role " + std::string(to_string(role)) + ": " + profile_pid);
        }
        return *pid;
    };
    const std::string license_pid = role_pid(MandatoryRole::License);
    const std::string checksum_pid = role_pid(MandatoryRole::Checksum);
    const std::string location_pid = role_pid(MandatoryRole::DigitalResourceLocation);
    const std::string type_pid = role_pid(MandatoryRole::DigitalResourceType);

    auto named_attribute = [&](std::string_view human_name) -> std::optional<std::string> {
        for (const auto& attr : profile->attributes) {
            if (attr.human_name == human_name) return attr.attribute_pid;
        }
        return std::nullopt;
    };
    auto has_metadata = named_attribute("hasMetadata");
    auto is_metadata_for = named_attribute("isMetadataFor");
    auto has_schema = named_attribute("hasSchema");

    engine.register_operation(
        {"evaluate_license",
         {.required_keys = {license_pid}, .any_of_keys = {}, .predicates = {}},
         OperationTarget::Metadata,
         [license_pid](const OperationContext& ctx) {
             OperationResult result;
             std::string license = *ctx.record.first_value(license_pid);
             auto spdx = spdx_license_id(license);
             result.status = "ok";
             result.payload = {{"license", license}, {"recognized", spdx.has_value()}};
             if (spdx) result.payload["spdx_id"] = *spdx;
             return result;
         }});

    engine.register_operation(
        {"validate_checksum",
         {.required_keys = {checksum_pid}, .any_of_keys = {}, .predicates = {}},
         OperationTarget::BitSequence,
         [checksum_pid](const OperationContext& ctx) {
             OperationResult result;
             std::string checksum = *ctx.record.first_value(checksum_pid);
             if (!validate_value(ValueType::ChecksumString, checksum)) {
                 result.status = "error";
                 result.payload = {{"detail", "malformed checksum value: " + checksum}};
                 return result;
             }
             auto colon = checksum.find(':');
             std::string algorithm = checksum.substr(0, colon);
             std::string expected = to_lower(checksum.substr(colon + 1));
             BitSequence bits = ctx.engine.access_bit_sequence(ctx.record);
             std::string actual = hex_digest(algorithm, bits.bytes);
             bool match = actual == expected;
             result.status = match ? "match" : "mismatch";
             result.payload = {{"algorithm", algorithm},
                               {"expected", expected},
                               {"actual", actual},
                               {"match", match},
                               {"location", bits.source_location},
                               {"length", bits.bytes.size()}};
             return result;
         }});

    if (has_metadata || is_metadata_for) {
        AssociationCriterion criterion;
        if (has_metadata) criterion.any_of_keys.insert(*has_metadata);
        if (is_metadata_for) criterion.any_of_keys.insert(*is_metadata_for);
        engine.register_operation(
            {"get_related_fdo", criterion, OperationTarget::Metadata,
             [](const OperationContext& ctx) {
                 OperationResult result;
                 json related = json::array();
                 for (const auto& pair : ctx.record.pairs) {
                     auto attr = ctx.engine.types().find_attribute(pair.attribute_pid);
                     if (!attr || !is_reference_type(attr->value_type)) continue;
                     if (!Pid::is_valid(pair.value)) continue;
                     if (!ctx.engine.registry().contains(pair.value)) continue;
                     related.push_back({{"predicate", pair.attribute_pid}, {"pid", pair.value}});
                 }
                 result.status = "ok";
                 result.payload = {{"related", std::move(related)}};
                 return result;
             }});
    }

    engine.register_operation(
        {"get_digital_resource",
         {.required_keys = {location_pid}, .any_of_keys = {}, .predicates = {}},
         OperationTarget::BitSequence,
         [](const OperationContext& ctx) {
             OperationResult result;
             BitSequence bits = ctx.engine.access_bit_sequence(ctx.record);
             result.status = "ok";
             result.payload = {{"location", bits.source_location},
                               {"length", bits.bytes.size()},
                               {"bytes_base64", base64_encode(bits.bytes)}};
             return result;
         }});

    if (has_schema) {
        AssociationCriterion stac_criterion{
            .required_keys = {location_pid},
            .any_of_keys = {},
            .predicates = {{*has_schema, MatchKind::Prefix, "https://schemas.stacspec.org"},
                           {type_pid, MatchKind::Exact, "application/json"}}};

        engine.register_operation(
            {"geographic_filter", stac_criterion, OperationTarget::BitSequence,
             [](const OperationContext& ctx) {
                 OperationResult result;
                 Bbox query{-180.0, -90.0, 180.0, 90.0};
                 if (ctx.params.contains("bbox")) {
                     auto parsed = bbox_from_json(ctx.params["bbox"]);
                     if (!parsed) {
                         throw Error(ErrorCode::InvalidCriterion,
                                     "bbox must be [min_x, min_y, max_x, max_y]");
                     }
                     query = *parsed;
                 }
                 BitSequence bits = ctx.engine.access_bit_sequence(ctx.record);
                 json doc = json::parse(bits.bytes, nullptr, false);
                 std::optional<Bbox> bbox;
                 if (!doc.is_discarded()) bbox = payload_bbox(doc);
                 if (!bbox) {
                     result.status = "error";
                     result.payload = {{"detail", "payload carries no bounding box"}};
                     return result;
                 }
                 bool intersects = bbox->intersects(query);
                 result.status = intersects ? "match" : "no_match";
                 result.payload = {{"id", doc.value("id", "")},
                                   {"bbox", {bbox->min_x, bbox->min_y, bbox->max_x, bbox->max_y}},
                                   {"query_bbox", {query.min_x, query.min_y, query.max_x, query.max_y}},
                                   {"intersects", intersects}};
                 return result;
             }});

        engine.register_operation(
            {"timestamp_filter", stac_criterion, OperationTarget::BitSequence,
             [](const OperationContext& ctx) {
                 OperationResult result;
                 Rfc3339Timestamp from = param_timestamp(ctx.params, "from", "0000-01-01T00:00:00Z");
                 Rfc3339Timestamp to = param_timestamp(ctx.params, "to", "9999-12-31T23:59:59Z");
                 BitSequence bits = ctx.engine.access_bit_sequence(ctx.record);
                 json doc = json::parse(bits.bytes, nullptr, false);
                 std::optional<TimeSpan> span;
                 if (!doc.is_discarded()) span = payload_timespan(doc);
                 if (!span) {
                     result.status = "error";
                     result.payload = {{"detail", "payload carries no datetime"}};
                     return result;
                 }
                 bool overlaps = !(span->end < from) && !(to < span->start);
                 result.status = overlaps ? "match" : "no_match";
                 result.payload = {{"id", doc.value("id", "")}, {"overlaps", overlaps}};
                 return result;
             }});
    }
}

}  // namespace fdo
