#include "fdo/conformance.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "fdo/pid.hpp"
#include "fdo/value_types.hpp"

namespace fdo {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& items, const std::string& separator) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += separator;
        out += items[i];
    }
    return out;
}

}  // namespace

std::string_view to_string(CheckId check) {
    switch (check) {
        case CheckId::KipInstantiation: return "kip_instantiation";
        case CheckId::TypedAttributes: return "typed_attributes";
        case CheckId::MandatorySet: return "mandatory_set";
        case CheckId::BitSequenceAccess: return "bit_sequence_access";
        case CheckId::PidTriples: return "pid_triples";
    }
    return "kip_instantiation";
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Yes: return "yes";
        case Verdict::Partial: return "partial";
        case Verdict::No: return "no";
    }
    return "no";
}

Verdict ConformanceReport::verdict(CheckId check) const {
    for (const auto& row : rows) {
        if (row.check == check) return row.verdict;
    }
    return Verdict::No;
}

ConformanceReport ConformanceChecker::check(const InformationRecord& record) const {
    ConformanceReport report;
    report.record_pid = record.pid;

    // Row 1: exactly one resolvable profile reference.
    ConformanceRow kip{CheckId::KipInstantiation, Verdict::No, ""};
    std::optional<KernelInformationProfile> profile;
    {
        auto reference_keys = types_.role_attribute_pids(MandatoryRole::ProfileReference);
        std::vector<const AttributePair*> candidates;
        for (const auto& pair : record.pairs) {
            if (reference_keys.count(pair.attribute_pid) > 0 || types_.is_profile(pair.value)) {
                candidates.push_back(&pair);
            }
        }
        std::set<std::string> resolvable;
        std::set<std::string> all_values;
        for (const auto* pair : candidates) {
            all_values.insert(pair->value);
            if (types_.is_profile(pair->value)) resolvable.insert(pair->value);
        }
        if (candidates.empty()) {
            kip.verdict = Verdict::No;
            kip.explanation = "record carries no profile reference pair";
        } else if (resolvable.size() == 1 && all_values.size() == 1) {
            kip.verdict = Verdict::Yes;
            kip.explanation = "instantiates profile " + *resolvable.begin();
            profile = types_.find_profile(*resolvable.begin());
        } else if (resolvable.empty()) {
            kip.verdict = Verdict::Partial;
            kip.explanation = "profile reference present but unresolvable: " +
                              join({all_values.begin(), all_values.end()}, ", ");
        } else {
            kip.verdict = Verdict::Partial;
            kip.explanation = "record references more than one profile";
        }
    }
    report.rows.push_back(kip);

    // Row 2: every key a registered typed attribute PID.
    {
        ConformanceRow row{CheckId::TypedAttributes, Verdict::No, ""};
        auto keys = record.keys();
        std::vector<std::string> untyped;
        size_t typed = 0;
        for (const auto& key : keys) {
            if (types_.find_attribute(key)) {
                ++typed;
            } else {
                untyped.push_back(key);
            }
        }
        if (keys.empty()) {
            row.verdict = Verdict::No;
            row.explanation = "record has no attribute pairs";
        } else if (untyped.empty()) {
            row.verdict = Verdict::Yes;
            row.explanation = "all " + std::to_string(typed) + " keys are typed attribute PIDs";
        } else if (typed == 0) {
            row.verdict = Verdict::No;
            row.explanation = "no key is a registered typed attribute PID";
        } else {
            row.verdict = Verdict::Partial;
            row.explanation = "attributes not identifiable by PID: " + join(untyped, ", ");
        }
        report.rows.push_back(row);
    }

    // Row 3: all six mandatory roles present.
    {
        ConformanceRow row{CheckId::MandatorySet, Verdict::No, ""};
        std::vector<std::string> missing;
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
            if (!present) missing.emplace_back(to_string(role));
        }
        if (missing.empty()) {
            row.verdict = Verdict::Yes;
            row.explanation = "all six mandatory roles present";
        } else {
            row.verdict = Verdict::No;
            row.explanation = "missing mandatory roles: " + join(missing, ", ");
        }
        report.rows.push_back(row);
    }

    // Row 4: direct bit-sequence access via a location pair.
    {
        ConformanceRow row{CheckId::BitSequenceAccess, Verdict::No, ""};
        auto location_keys = types_.role_attribute_pids(MandatoryRole::DigitalResourceLocation);
        std::optional<std::string> location;
        for (const auto& pair : record.pairs) {
            if (location_keys.count(pair.attribute_pid) > 0 && !pair.value.empty()) {
                location = pair.value;
                break;
            }
        }
        auto landing_flag = record.annotations.find("landingPage");
        bool flagged_landing = landing_flag != record.annotations.end() && landing_flag->second;
        if (!location) {
            row.verdict = Verdict::No;
            row.explanation = flagged_landing
                ? "only a landing page is provided, no direct digital resource location"
                : "digital resource location is missing";
        } else if (flagged_landing) {
            row.verdict = Verdict::Partial;
            row.explanation = "digital resource location points at a landing page";
        } else if (!validate_value(ValueType::Url, *location)) {
            row.verdict = Verdict::Partial;
            row.explanation = "digital resource location is not a well-formed URL: " + *location;
        } else if (probe_) {
            auto content_type = probe_(*location);
            if (content_type && content_type->find("text/html") != std::string::npos) {
                row.verdict = Verdict::Partial;
                row.explanation = "digital resource location serves text/html (landing page)";
            } else {
                row.verdict = Verdict::Yes;
                row.explanation = "bit sequence directly accessible at " + *location;
            }
        } else {
            row.verdict = Verdict::Yes;
            row.explanation = "bit sequence directly accessible at " + *location;
        }
        report.rows.push_back(row);
    }

    // Row 5: FDO-to-FDO linkage by PID; URL-only relations count as partial.
    {
        ConformanceRow row{CheckId::PidTriples, Verdict::No, ""};
        std::vector<const AttributePair*> referencing;
        for (const auto& pair : record.pairs) {
            auto attr = types_.find_attribute(pair.attribute_pid);
            if (attr && is_reference_type(attr->value_type)) referencing.push_back(&pair);
        }
        bool links_out = std::any_of(referencing.begin(), referencing.end(),
                                     [&](const AttributePair* pair) {
                                         return Pid::is_valid(pair->value) &&
                                                pair->value != record.pid &&
                                                registry_.contains(pair->value);
                                     });
        bool linked_in = false;
        if (!record.pid.empty() && registry_.contains(record.pid)) {
            for (const auto& entry : registry_.entries()) {
                if (entry.pid.str() == record.pid) continue;
                for (const auto& pair : entry.record.pairs) {
                    auto attr = types_.find_attribute(pair.attribute_pid);
                    if (attr && is_reference_type(attr->value_type) && pair.value == record.pid) {
                        linked_in = true;
                        break;
                    }
                }
                if (linked_in) break;
            }
        }
        if (links_out || linked_in) {
            row.verdict = Verdict::Yes;
            row.explanation = links_out ? "references another FDO by PID"
                                        : "referenced by another FDO by PID";
        } else if (!referencing.empty()) {
            row.verdict = Verdict::Partial;
            row.explanation = "entity relations exist only via URLs or out-of-scope PIDs";
        } else {
            row.verdict = Verdict::No;
            row.explanation = "no referencing pairs";
        }
        report.rows.push_back(row);
    }

    report.overall = std::all_of(report.rows.begin(), report.rows.end(),
                                 [](const ConformanceRow& row) { return row.verdict == Verdict::Yes; });
    return report;
}

ConformanceReport ConformanceChecker::check_document(const std::string& document) const {
    return check(parse_record_document(document, /*lenient=*/true));
}

std::string render_report(const ConformanceReport& report, ReportFormat format) {
    if (format == ReportFormat::Document) {
        json doc;
        doc["record_pid"] = report.record_pid;
        json rows = json::array();
        for (const auto& row : report.rows) {
            rows.push_back({{"check", std::string(to_string(row.check))},
                            {"verdict", std::string(to_string(row.verdict))},
                            {"explanation", row.explanation}});
        }
        doc["rows"] = std::move(rows);
        doc["overall"] = report.overall;
        return doc.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "record: " << (report.record_pid.empty() ? "<unregistered>" : report.record_pid) << "\n";
    for (const auto& row : report.rows) {
        std::string check(to_string(row.check));
        std::string verdict(to_string(row.verdict));
        out << "  " << check << std::string(21 - check.size(), ' ') << verdict
            << std::string(9 - verdict.size(), ' ') << row.explanation << "\n";
    }
    out << "  overall: " << (report.overall ? "yes" : "no") << "\n";
    return out.str();
}

}  // namespace fdo
