#include "translid/md5.hpp"

#include <openssl/evp.h>

#include "translid/error.hpp"

namespace translid {

Md5Digest md5(std::span<const std::uint8_t> data) {
  Md5Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_md5(), nullptr) != 1 ||
      len != out.size())
    throw Error(ErrorCode::kInvalidArgument, "MD5 digest failed");
  return out;
}

Md5Digest md5(std::string_view text) {
  return md5(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string to_hex(const Md5Digest& digest) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(32);
  for (auto b : digest) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 15]);
  }
  return out;
}

}  // namespace translid
