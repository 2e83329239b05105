#include <algorithm>

#include "doctest.h"
#include "json.hpp"

#include "fdo/type_system.hpp"
#include "support.hpp"

using fdo::Error;
using fdo::ErrorCode;
using fdo::KernelInformationProfile;
using fdo::MandatoryRole;
using fdo::TypedAttributeDefinition;
using fdo::TypeRegistry;
using fdo::ValueType;
using nlohmann::json;

namespace {

TypedAttributeDefinition attr(std::string pid, std::string name, ValueType type,
                              bool obligatory = false, bool repeatable = false) {
    return {std::move(pid), std::move(name), type, obligatory, repeatable};
}

ErrorCode thrown_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::NotFound;
}

}  // namespace

TEST_CASE("attribute registration is write-once per PID") {
    TypeRegistry types;
    auto defn = attr("21.T11148/aa01", "licenseUrl", ValueType::Url, true, false);
    CHECK(types.register_attribute(defn) == "21.T11148/aa01");
    CHECK(types.attribute_count() == 1);

    // Identical content is an idempotent no-op.
    CHECK(types.register_attribute(defn) == "21.T11148/aa01");
    CHECK(types.attribute_count() == 1);

    auto conflicting = defn;
    conflicting.repeatable = true;
    CHECK(thrown_code([&] { types.register_attribute(conflicting); }) ==
          ErrorCode::DuplicatePidConflict);

    auto found = types.find_attribute("21.T11148/aa01");
    REQUIRE(found.has_value());
    CHECK(*found == defn);
    CHECK_FALSE(types.find_attribute("21.T11148/zz99").has_value());
}

TEST_CASE("attribute registration validates PID syntax and name") {
    TypeRegistry types;
    CHECK(thrown_code([&] {
              types.register_attribute(attr("no-slash-here", "x", ValueType::String));
          }) == ErrorCode::InvalidPidSyntax);
    CHECK(thrown_code([&] {
              types.register_attribute(attr("21.T11148/ok", "", ValueType::String));
          }) == ErrorCode::InvalidPidSyntax);
    CHECK(types.attribute_count() == 0);
}

TEST_CASE("profile registration registers member attributes") {
    TypeRegistry types;
    KernelInformationProfile profile;
    profile.profile_pid = "21.T11148/p001";
    profile.name = "Demo";
    profile.attributes = {attr("21.T11148/aa01", "a", ValueType::String, true),
                          attr("21.T11148/aa02", "b", ValueType::Url)};

    CHECK(types.register_profile(profile) == profile.profile_pid);
    CHECK(types.attribute_count() == 2);
    CHECK(types.is_profile("21.T11148/p001"));
    CHECK_FALSE(types.is_profile("21.T11148/aa01"));

    // Idempotent; conflicting content rejected.
    types.register_profile(profile);
    auto changed = profile;
    changed.name = "Demo v2";
    CHECK(thrown_code([&] { types.register_profile(changed); }) ==
          ErrorCode::DuplicatePidConflict);

    auto dup = profile;
    dup.profile_pid = "21.T11148/p002";
    dup.attributes.push_back(dup.attributes.front());
    CHECK(thrown_code([&] { types.register_profile(dup); }) == ErrorCode::DuplicatePidConflict);
    CHECK(thrown_code([&] {
              KernelInformationProfile bad;
              bad.profile_pid = "nopid";
              types.register_profile(bad);
          }) == ErrorCode::InvalidPidSyntax);
}

TEST_CASE("bundled profile snapshots import with expected shape") {
    TypeRegistry types;
    testsup::load_profiles(types);

    auto pids = types.profile_pids();
    CHECK(pids == std::vector<std::string>{testsup::kPidinstProfile, testsup::kHelmholtzProfile,
                                           testsup::kDisscoProfile});
    CHECK(std::is_sorted(pids.begin(), pids.end()));

    auto helmholtz = types.find_profile(testsup::kHelmholtzProfile);
    REQUIRE(helmholtz.has_value());
    CHECK(helmholtz->attributes.size() == 15);
    CHECK(helmholtz->roles.size() == 6);
    CHECK(helmholtz->role_attribute(MandatoryRole::ProfileReference) == testsup::kAttrProfile);
    CHECK(helmholtz->role_attribute(MandatoryRole::License) == testsup::kAttrLicense);
    CHECK(helmholtz->role_attribute(MandatoryRole::Checksum) == testsup::kAttrChecksum);
    CHECK(helmholtz->role_attribute(MandatoryRole::DigitalResourceLocation) ==
          testsup::kAttrLocation);
    CHECK(helmholtz->role_attribute(MandatoryRole::CreationDate) == testsup::kAttrCreated);
    CHECK(helmholtz->role_attribute(MandatoryRole::DigitalResourceType) == testsup::kAttrType);

    auto location = types.find_attribute(testsup::kAttrLocation);
    REQUIRE(location.has_value());
    CHECK(location->value_type == ValueType::Url);
    CHECK(location->obligatory);
    CHECK(location->repeatable);

    // Foreign profiles carry no role map.
    auto pidinst = types.find_profile(testsup::kPidinstProfile);
    REQUIRE(pidinst.has_value());
    CHECK(pidinst->roles.empty());
    auto dissco = types.find_profile(testsup::kDisscoProfile);
    REQUIRE(dissco.has_value());
    CHECK(dissco->roles.empty());
}

TEST_CASE("snapshot export/import round-trips every bundled profile") {
    TypeRegistry source;
    testsup::load_profiles(source);
    for (const auto& pid : source.profile_pids()) {
        std::string snapshot = source.export_profile_snapshot(pid);
        TypeRegistry fresh;
        auto imported = fresh.import_profile_snapshot(snapshot);
        CHECK(imported == *source.find_profile(pid));
        CHECK(fresh.export_profile_snapshot(pid) == snapshot);
    }
    CHECK(thrown_code([&] { source.export_profile_snapshot("21.T11148/none"); }) ==
          ErrorCode::NotFound);
}

TEST_CASE("profile completeness validation") {
    TypeRegistry types;
    testsup::load_profiles(types);
    auto helmholtz = *types.find_profile(testsup::kHelmholtzProfile);

    SUBCASE("declared role map is complete and valid") {
        auto outcome = types.validate_profile(helmholtz, helmholtz.roles);
        CHECK(outcome.valid);
        CHECK(outcome.missing_roles.empty());
        CHECK(outcome.problems.empty());
    }

    SUBCASE("absent roles are reported individually") {
        auto roles = helmholtz.roles;
        roles.erase(MandatoryRole::Checksum);
        auto outcome = types.validate_profile(helmholtz, roles);
        CHECK_FALSE(outcome.valid);
        CHECK(outcome.missing_roles == std::vector<MandatoryRole>{MandatoryRole::Checksum});

        auto empty = types.validate_profile(helmholtz, {});
        CHECK(empty.missing_roles.size() == 6);
    }

    SUBCASE("role to an attribute outside the profile") {
        auto roles = helmholtz.roles;
        roles[MandatoryRole::License] = "21.T11148/0000000000ffffffffff";
        auto outcome = types.validate_profile(helmholtz, roles);
        CHECK_FALSE(outcome.valid);
        REQUIRE(outcome.problems.size() == 1);
        CHECK(outcome.problems[0].find("outside the profile") != std::string::npos);
    }

    SUBCASE("role to a non-obligatory attribute") {
        auto roles = helmholtz.roles;
        roles[MandatoryRole::License] = testsup::kAttrVersion;
        auto outcome = types.validate_profile(helmholtz, roles);
        CHECK_FALSE(outcome.valid);
        REQUIRE(outcome.problems.size() == 1);
        CHECK(outcome.problems[0].find("non-obligatory") != std::string::npos);
    }

    SUBCASE("one attribute cannot serve two roles") {
        auto roles = helmholtz.roles;
        roles[MandatoryRole::License] = roles[MandatoryRole::Checksum];
        auto outcome = types.validate_profile(helmholtz, roles);
        CHECK_FALSE(outcome.valid);
        bool flagged = std::any_of(outcome.problems.begin(), outcome.problems.end(),
                                   [](const std::string& p) {
                                       return p.find("serves two roles") != std::string::npos;
                                   });
        CHECK(flagged);
    }

    SUBCASE("profile reference must not be repeatable") {
        auto roles = helmholtz.roles;
        roles[MandatoryRole::ProfileReference] = testsup::kAttrLocation;
        auto outcome = types.validate_profile(helmholtz, roles);
        CHECK_FALSE(outcome.valid);
        bool flagged = std::any_of(outcome.problems.begin(), outcome.problems.end(),
                                   [](const std::string& p) {
                                       return p.find("must not be repeatable") != std::string::npos;
                                   });
        CHECK(flagged);
    }

    SUBCASE("unregistered member attribute is rejected outright") {
        KernelInformationProfile foreign;
        foreign.profile_pid = "21.T11148/p003";
        foreign.name = "Unregistered";
        foreign.attributes = {attr("21.T11148/feedfeedfeedfeedfeed", "x", ValueType::String)};
        CHECK(thrown_code([&] { types.validate_profile(foreign, {}); }) ==
              ErrorCode::UnknownAttributePid);
    }
}

TEST_CASE("malformed snapshots are rejected with MalformedSnapshot") {
    auto expect_malformed = [](const json& doc) {
        TypeRegistry types;
        CHECK(thrown_code([&] { types.import_profile_snapshot(doc.dump()); }) ==
              ErrorCode::MalformedSnapshot);
    };

    json valid = {{"profile_pid", "21.T11148/p010"},
                  {"name", "Minimal"},
                  {"attributes",
                   json::array({{{"pid", "21.T11148/aa10"},
                                 {"name", "a"},
                                 {"valueType", "string"},
                                 {"obligatory", true},
                                 {"repeatable", false}}})}};
    {
        TypeRegistry types;
        CHECK(types.import_profile_snapshot(valid.dump()).profile_pid == "21.T11148/p010");
    }

    {
        TypeRegistry types;
        CHECK(thrown_code([&] { types.import_profile_snapshot("{nope"); }) ==
              ErrorCode::MalformedSnapshot);
        CHECK(thrown_code([&] { types.import_profile_snapshot("[]"); }) ==
              ErrorCode::MalformedSnapshot);
        CHECK(thrown_code([&] { types.import_profile_snapshot_file("/no/such/file"); }) ==
              ErrorCode::MalformedSnapshot);
    }

    auto doc = valid;
    doc.erase("profile_pid");
    expect_malformed(doc);

    doc = valid;
    doc["profile_pid"] = "not a pid";
    expect_malformed(doc);

    doc = valid;
    doc["attributes"] = json::array();
    expect_malformed(doc);

    doc = valid;
    doc["attributes"].push_back(doc["attributes"][0]);
    expect_malformed(doc);

    doc = valid;
    doc["attributes"][0]["valueType"] = "uuid";
    expect_malformed(doc);

    doc = valid;
    doc["attributes"][0].erase("repeatable");
    expect_malformed(doc);

    doc = valid;
    doc["attributes"][0]["obligatory"] = "yes";
    expect_malformed(doc);

    doc = valid;
    doc["roles"] = {{"nonsense_role", "21.T11148/aa10"}};
    expect_malformed(doc);

    doc = valid;
    doc["roles"] = {{"license", 7}};
    expect_malformed(doc);

    doc = valid;
    doc["roles"] = json::array();
    expect_malformed(doc);
}

TEST_CASE("role attribute lookup spans all registered profiles") {
    TypeRegistry types;
    testsup::load_profiles(types);
    CHECK(types.role_attribute_pids(MandatoryRole::License) ==
          std::set<std::string>{testsup::kAttrLicense});
    CHECK(types.role_attribute_pids(MandatoryRole::ProfileReference) ==
          std::set<std::string>{testsup::kAttrProfile});

    // A second profile contributing a different license attribute widens the set.
    json doc = {{"profile_pid", "21.T11148/p020"},
                {"name", "Alt"},
                {"attributes",
                 json::array({{{"pid", "21.T11148/bb20"},
                               {"name", "altLicense"},
                               {"valueType", "url"},
                               {"obligatory", true},
                               {"repeatable", false}}})},
                {"roles", {{"license", "21.T11148/bb20"}}}};
    types.import_profile_snapshot(doc.dump());
    CHECK(types.role_attribute_pids(MandatoryRole::License) ==
          std::set<std::string>{testsup::kAttrLicense, "21.T11148/bb20"});
}

TEST_CASE("mandatory role names round-trip") {
    for (MandatoryRole role : fdo::kAllMandatoryRoles) {
        auto name = fdo::to_string(role);
        auto back = fdo::mandatory_role_from_name(name);
        REQUIRE(back.has_value());
        CHECK(*back == role);
    }
    CHECK_FALSE(fdo::mandatory_role_from_name("embargo_date").has_value());
    CHECK(fdo::to_string(MandatoryRole::DigitalResourceLocation) == "digital_resource_location");
}
