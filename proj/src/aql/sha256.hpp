#pragma once

#include <string>

namespace aql {

// SHA-256 digest as lowercase hex. Used for content-addressed cache keys and
// task digests; verified against the FIPS 180-4 test vectors in the suite.
std::string sha256_hex(const std::string& data);

}  // namespace aql
