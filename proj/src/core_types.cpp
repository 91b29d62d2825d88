#include "bitretrieve/core_types.hpp"

namespace bitretrieve {

std::string_view to_string(FieldKind field) { return field == FieldKind::Real ? "real" : "complex"; }

FieldKind parse_field(std::string_view text) {
  if (text == "real" || text == "Real" || text == "R") return FieldKind::Real;
  if (text == "complex" || text == "Complex" || text == "C") return FieldKind::Complex;
  throw InvalidInput("unknown field '" + std::string(text) + "' (expected real or complex)");
}

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_)
    if (b > 1) throw InvalidInput("bit string: entries must be 0 or 1");
}

std::string BitString::serialize() const {
  std::string out;
  out.reserve(bits_.size() + 1);
  for (auto b : bits_) out += b ? '1' : '0';
  out += '\n';
  return out;
}

BitString BitString::parse(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0') bits.push_back(0);
    else if (c == '1') bits.push_back(1);
    else throw InvalidInput("bit string: unexpected character");
  }
  return BitString(std::move(bits));
}

}  // namespace bitretrieve
