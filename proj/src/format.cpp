#include "translid/format.hpp"

#include <array>
#include <charconv>

namespace translid {

std::string format_double(double value) {
  std::array<char, 64> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

}  // namespace translid
