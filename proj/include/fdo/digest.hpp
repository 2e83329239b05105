#pragma once

#include <string>
#include <string_view>

namespace fdo {

// Lowercase hex digest of `bytes` for algorithm ∈ {md5, sha1, sha256,
// sha512}. Throws std::invalid_argument for unknown algorithms.
std::string hex_digest(std::string_view algorithm, std::string_view bytes);

std::string base64_encode(std::string_view bytes);

}  // namespace fdo
