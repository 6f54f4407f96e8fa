#pragma once

#include <array>
#include <string>

#include <openssl/evp.h>

#include "dmirror/error.hpp"

namespace dmirror {

/// Lowercase hex SHA-256 of the bytes of s.
inline std::string sha256_hex(const std::string& s) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  ensure(EVP_Digest(s.data(), s.size(), md.data(), &len, EVP_sha256(), nullptr) == 1, "sha256: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace dmirror
