#pragma once

// Shared fixtures and helpers for the test suites.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fdo/pid_registry.hpp"
#include "fdo/record.hpp"
#include "fdo/type_system.hpp"

#ifndef FDO_SOURCE_DIR
#error "FDO_SOURCE_DIR must be defined"
#endif

namespace testsup {

inline const std::filesystem::path kSourceDir = FDO_SOURCE_DIR;
inline const std::filesystem::path kProfilesDir = kSourceDir / "fixtures" / "profiles";
inline const std::filesystem::path kEnergyDir = kSourceDir / "fixtures" / "energy";
inline const std::filesystem::path kExternalDir = kSourceDir / "fixtures" / "external";

// Helmholtz profile and its attribute PIDs.
inline const std::string kHelmholtzProfile = "21.T11148/b9b76f887845e32d29f7";
inline const std::string kPidinstProfile = "21.T11148/301c6f3ae08d59b7f24e";
inline const std::string kDisscoProfile = "21.T11148/e4b02c9f7a15836dcd50";

inline const std::string kAttrProfile = "21.T11148/8f2a41cd90be375d6016";
inline const std::string kAttrLocation = "21.T11148/c91e63f0a4825b7dd3e9";
inline const std::string kAttrCreated = "21.T11148/17d30ae5b9f2648cc01a";
inline const std::string kAttrModified = "21.T11148/5be4790fa6d1823eb2c7";
inline const std::string kAttrLicense = "21.T11148/44e2fd7a08b395c61a2d";
inline const std::string kAttrType = "21.T11148/d67bc10a95e482f3071c";
inline const std::string kAttrChecksum = "21.T11148/3a8d90e7f6c24b15ad68";
inline const std::string kAttrVersion = "21.T11148/f0922c4be87d5a31906e";
inline const std::string kAttrHasMetadata = "21.T11148/d0773859091aeb451528";
inline const std::string kAttrIsMetadataFor = "21.T11148/4fe7cde52629b61e3b82";
inline const std::string kAttrHasSchema = "21.T11148/61fd6446ab904e77bc23";
inline const std::string kAttrTopic = "21.T11148/2cba358990e704bf56d1";
inline const std::string kAttrContact = "21.T11148/9e73cf5046a1db28e43f";
inline const std::string kAttrIdentifier = "21.T11148/7cd506a8923efb104d7e";
inline const std::string kAttrLanguage = "21.T11148/0ecd0b1e5a63d87fa942";

// The 18 energy-research record PIDs, keyed by their letter in the bundled
// graph listing.
inline const std::string kNodeA = "21.11152/e670f510-7e00-4d3a-9b90-3bac7a7c069e";
inline const std::string kNodeB = "21.11152/6ea60288-d895-414e-80c0-26c9fdd662b2";
inline const std::string kNodeC = "21.11152/58d43ddc-5e29-4980-8675-ae579b50a1e2";
inline const std::string kNodeD = "21.11152/6858a0b5-cc60-40e9-afef-8c2dd8b35e8e";
inline const std::string kNodeE = "21.11152/3ab9f444-05f6-445e-a691-62fae4021bea";
inline const std::string kNodeF = "21.11152/365fd8cf-8e86-41b8-9d0e-b816fdd01d29";
inline const std::string kNodeG = "21.11152/041a6111-644a-4617-afb3-3c421a88e8e3";
inline const std::string kNodeH = "21.11152/f48bf4e7-3879-4216-8f64-45a060b8f658";
inline const std::string kNodeI = "21.11152/7b58b3b5-75eb-4417-ac4d-abe025e159f6";
inline const std::string kNodeJ = "21.11152/ba370aa3-6422-428c-9ff7-c2ef429df603";
inline const std::string kNodeK = "21.11152/09cb76fc-b8cb-4116-a22a-68c5bdfa77b0";
inline const std::string kNodeL = "21.11152/24a55398-b96b-43dd-b0fb-cd8ce302c7ce";
inline const std::string kNodeM = "21.11152/721234ac-4b5a-4d02-9944-82a08ef2db35";
inline const std::string kNodeN = "21.11152/ebaeb5bc-0514-47c9-bcd2-98f0253843d8";
inline const std::string kNodeO = "21.11152/9854677c-77c5-4a0b-916b-57dd9ec20198";
inline const std::string kNodeP = "21.11152/cfd0fc0e-f5ea-464e-a57f-28e882924860";
inline const std::string kNodeQ = "21.11152/976fcf28-f924-4a21-b53d-5d054ad8198d";
inline const std::string kNodeR = "21.11152/37833c54-1d36-42e4-858d-831447122863";

inline const std::string kPidinstSnapshotPid = "21.T11998/0000-001A-3905-1";
inline const std::string kDariahSnapshotPid = "21.11113/0000-000B-CA4C-D";
inline const std::string kDisscoSnapshotPid = "10.3535/G0G-G7D-N5J";

inline void load_profiles(fdo::TypeRegistry& types) {
    for (const auto& name :
         {"dissco-digital-specimen.json", "helmholtz-kip.json", "pidinst-instrument.json"}) {
        types.import_profile_snapshot_file((kProfilesDir / name).string());
    }
}

inline void load_all_fixtures(fdo::PidRegistry& registry) {
    registry.load_fixture_set(kEnergyDir);
    registry.load_fixture_set(kExternalDir);
}

// A minimal record that validates against the Helmholtz profile.
inline fdo::InformationRecord minimal_valid_record() {
    fdo::InformationRecord record;
    record.add(kAttrProfile, kHelmholtzProfile);
    record.add(kAttrLicense, "https://creativecommons.org/licenses/by/4.0/");
    record.add(kAttrChecksum,
               "sha256:2cf24dba5fb0a30e26e83b2ac5b9e29e1b161e5c1fa7425e73043362938b9824");
    record.add(kAttrLocation, "https://example.org/data.bin");
    record.add(kAttrCreated, "2024-01-01T00:00:00Z");
    record.add(kAttrType, "application/octet-stream");
    return record;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// Self-deleting scratch directory.
class TempDir {
  public:
    TempDir() {
        static std::mt19937_64 rng{std::random_device{}()};
        path_ = std::filesystem::temp_directory_path() /
                ("fdo-test-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

// Runs a shell command, captures combined stdout/stderr and the exit code.
struct CommandResult {
    int exit_code = -1;
    std::string output;
};

inline CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (!pipe) return result;
    char buffer[4096];
    size_t n;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.output.append(buffer, n);
    }
    int status = pclose(pipe);
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

}  // namespace testsup
