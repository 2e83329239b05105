#include "fdo/record.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fdo {

namespace {

using nlohmann::json;

json record_to_json(const InformationRecord& record) {
    json body = json::object();
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::string>> grouped;
    for (const auto& pair : record.pairs) {
        auto [it, inserted] = grouped.try_emplace(pair.attribute_pid);
        if (inserted) order.push_back(pair.attribute_pid);
        it->second.push_back(pair.value);
    }
    for (const auto& [key, values] : grouped) {
        if (values.size() == 1) {
            body[key] = values.front();
        } else {
            body[key] = values;
        }
    }
    json doc = json::object();
    if (!record.pid.empty()) doc["pid"] = record.pid;
    doc["record"] = std::move(body);
    if (!record.annotations.empty()) {
        json notes = json::object();
        for (const auto& [key, value] : record.annotations) notes[key] = value;
        doc["annotations"] = std::move(notes);
    }
    return doc;
}

std::string scalar_to_text(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

}  // namespace

void InformationRecord::add(std::string attribute_pid, std::string value) {
    pairs.push_back({std::move(attribute_pid), std::move(value)});
}

bool InformationRecord::has_key(std::string_view attribute_pid) const {
    return std::any_of(pairs.begin(), pairs.end(),
                       [&](const AttributePair& p) { return p.attribute_pid == attribute_pid; });
}

std::vector<std::string> InformationRecord::values_of(std::string_view attribute_pid) const {
    std::vector<std::string> out;
    for (const auto& pair : pairs) {
        if (pair.attribute_pid == attribute_pid) out.push_back(pair.value);
    }
    return out;
}

std::optional<std::string> InformationRecord::first_value(std::string_view attribute_pid) const {
    for (const auto& pair : pairs) {
        if (pair.attribute_pid == attribute_pid) return pair.value;
    }
    return std::nullopt;
}

std::set<std::string> InformationRecord::keys() const {
    std::set<std::string> out;
    for (const auto& pair : pairs) out.insert(pair.attribute_pid);
    return out;
}

InformationRecord InformationRecord::normalized() const {
    InformationRecord copy = *this;
    std::stable_sort(copy.pairs.begin(), copy.pairs.end(),
                     [](const AttributePair& a, const AttributePair& b) {
                         return a.attribute_pid < b.attribute_pid;
                     });
    return copy;
}

std::string_view to_string(ViolationCode code) {
    switch (code) {
        case ViolationCode::MissingMandatory: return "MissingMandatory";
        case ViolationCode::UnknownAttribute: return "UnknownAttribute";
        case ViolationCode::TypeMismatch: return "TypeMismatch";
        case ViolationCode::EmptyValue: return "EmptyValue";
        case ViolationCode::RepeatViolation: return "RepeatViolation";
        case ViolationCode::MultipleProfiles: return "MultipleProfiles";
        case ViolationCode::NoProfile: return "NoProfile";
    }
    return "UnknownViolation";
}

bool ValidationOutcome::has(ViolationCode code) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
}

size_t ValidationOutcome::count(ViolationCode code) const {
    return static_cast<size_t>(std::count_if(
        violations.begin(), violations.end(),
        [&](const Violation& v) { return v.code == code; }));
}

std::string ValidationOutcome::summary() const {
    if (valid) return "valid";
    std::ostringstream out;
    out << violations.size() << " violation(s):";
    for (const auto& v : violations) {
        out << " " << to_string(v.code);
        if (v.attribute_pid) out << "[" << *v.attribute_pid << "]";
    }
    return out.str();
}

std::string ValidationOutcome::to_document() const {
    json doc;
    doc["valid"] = valid;
    json list = json::array();
    for (const auto& v : violations) {
        json entry = {{"code", std::string(to_string(v.code))}, {"detail", v.detail}};
        if (v.attribute_pid) entry["attribute_pid"] = *v.attribute_pid;
        list.push_back(std::move(entry));
    }
    doc["violations"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::string serialize_record(const InformationRecord& record) {
    return record_to_json(record).dump(2) + "\n";
}

InformationRecord parse_record_document(const std::string& document, bool lenient) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedRecordDocument, e.what());
    }
    if (!doc.is_object()) {
        throw Error(ErrorCode::MalformedRecordDocument, "document is not an object");
    }
    if (!doc.contains("record") || !doc["record"].is_object()) {
        throw Error(ErrorCode::MalformedRecordDocument, "missing \"record\" object");
    }
    if (!lenient) {
        for (const auto& [key, value] : doc.items()) {
            if (key != "pid" && key != "record" && key != "annotations") {
                throw Error(ErrorCode::MalformedRecordDocument, "unknown top-level field: " + key);
            }
        }
    }

    InformationRecord record;
    if (doc.contains("pid")) {
        if (!doc["pid"].is_string()) {
            throw Error(ErrorCode::MalformedRecordDocument, "pid is not a string");
        }
        record.pid = doc["pid"].get<std::string>();
    }
    for (const auto& [key, value] : doc["record"].items()) {
        if (key.empty()) {
            throw Error(ErrorCode::MalformedRecordDocument, "empty attribute key");
        }
        if (value.is_string()) {
            record.add(key, value.get<std::string>());
        } else if (value.is_array()) {
            if (value.empty()) {
                throw Error(ErrorCode::MalformedRecordDocument, "empty value array under " + key);
            }
            for (const auto& element : value) {
                if (element.is_string()) {
                    record.add(key, element.get<std::string>());
                } else if (lenient && element.is_primitive()) {
                    record.add(key, scalar_to_text(element));
                } else {
                    throw Error(ErrorCode::MalformedRecordDocument,
                                "non-string array element under " + key);
                }
            }
        } else if (lenient && value.is_primitive()) {
            record.add(key, scalar_to_text(value));
        } else {
            throw Error(ErrorCode::MalformedRecordDocument, "non-string value under " + key);
        }
    }
    if (doc.contains("annotations")) {
        if (!doc["annotations"].is_object()) {
            throw Error(ErrorCode::MalformedRecordDocument, "annotations is not an object");
        }
        for (const auto& [key, value] : doc["annotations"].items()) {
            if (!value.is_boolean()) {
                throw Error(ErrorCode::MalformedRecordDocument, "annotation is not a boolean: " + key);
            }
            record.annotations[key] = value.get<bool>();
        }
    }
    return record;
}

InformationRecord load_record_file(const std::string& path, bool lenient) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MalformedRecordDocument, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_record_document(buffer.str(), lenient);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MalformedRecordDocument) {
            throw Error(ErrorCode::MalformedRecordDocument, path + ": " + e.detail());
        }
        throw;
    }
}

}  // namespace fdo
