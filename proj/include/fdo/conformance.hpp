#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdo/pid_registry.hpp"
#include "fdo/record.hpp"
#include "fdo/type_system.hpp"

namespace fdo {

enum class CheckId {
    KipInstantiation,
    TypedAttributes,
    MandatorySet,
    BitSequenceAccess,
    PidTriples,
};

inline constexpr std::array<CheckId, 5> kAllChecks = {
    CheckId::KipInstantiation, CheckId::TypedAttributes, CheckId::MandatorySet,
    CheckId::BitSequenceAccess, CheckId::PidTriples,
};

std::string_view to_string(CheckId check);

enum class Verdict { Yes, Partial, No };

std::string_view to_string(Verdict verdict);

struct ConformanceRow {
    CheckId check;
    Verdict verdict;
    std::string explanation;

    bool operator==(const ConformanceRow&) const = default;
};

struct ConformanceReport {
    std::string record_pid;
    std::vector<ConformanceRow> rows;  // always five, in kAllChecks order
    bool overall = false;

    Verdict verdict(CheckId check) const;
};

enum class ReportFormat { Table, Document };

std::string render_report(const ConformanceReport& report, ReportFormat format);

// Judges arbitrary Handle-record snapshots against the model's assertions:
// single resolvable profile, PID-keyed typed attributes, the mandatory role
// set, direct bit-sequence access, and FDO-to-FDO linkage.
class ConformanceChecker {
  public:
    ConformanceChecker(TypeRegistry& types, PidRegistry& registry)
        : types_(types), registry_(registry) {}

    ConformanceReport check(const InformationRecord& record) const;

    // Lenient parse, then check. Throws MalformedRecordDocument.
    ConformanceReport check_document(const std::string& document) const;

    // Online landing-page heuristic: returns the content type behind a URL.
    // Offline (unset), the snapshot's "landingPage" annotation decides.
    using ContentTypeProbe = std::function<std::optional<std::string>(const std::string& url)>;
    void set_content_type_probe(ContentTypeProbe probe) { probe_ = std::move(probe); }

  private:
    TypeRegistry& types_;
    PidRegistry& registry_;
    ContentTypeProbe probe_;
};

}  // namespace fdo
