#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace eyeball {

enum class AddressFamily : std::uint8_t { V4 = 4, V6 = 6 };

/// IPv4 or IPv6 address stored in network byte order. IPv4 uses the first
/// four bytes; the remainder stays zero.
class IpAddress {
 public:
  IpAddress() = default;

  static std::optional<IpAddress> parse(std::string_view text) noexcept;
  static IpAddress v4(std::uint32_t hostOrder) noexcept;
  static IpAddress v6(const std::array<std::uint8_t, 16>& bytes) noexcept;

  AddressFamily family() const noexcept { return family_; }
  bool isV4() const noexcept { return family_ == AddressFamily::V4; }
  unsigned bitLength() const noexcept { return isV4() ? 32 : 128; }
  const std::array<std::uint8_t, 16>& bytes() const noexcept { return bytes_; }

  /// Bit i counted from the most significant bit of the address.
  bool bit(unsigned i) const noexcept { return (bytes_[i / 8] >> (7 - i % 8)) & 1U; }
  std::uint32_t toV4() const noexcept;

  /// Address with every bit past prefixLength cleared.
  IpAddress masked(unsigned prefixLength) const noexcept;

  std::string str() const;

  auto operator<=>(const IpAddress&) const = default;

 private:
  AddressFamily family_ = AddressFamily::V4;
  std::array<std::uint8_t, 16> bytes_{};
};

struct Cidr {
  IpAddress network;
  unsigned length = 0;

  /// Accepts "a.b.c.d/len" or "x::y/len"; host bits are cleared.
  static std::optional<Cidr> parse(std::string_view text) noexcept;

  bool contains(const IpAddress& addr) const noexcept;
  std::string str() const;

  auto operator<=>(const Cidr&) const = default;
};

/// True for private, loopback, link-local, shared, documentation, benchmark,
/// multicast and other special-purpose ranges that carry no inter-domain or
/// geographic meaning.
bool is_special_purpose(const IpAddress& addr) noexcept;

}  // namespace eyeball
