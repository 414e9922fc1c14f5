#include "eyeball/ip.hpp"

#include <arpa/inet.h>

#include <charconv>
#include <vector>

namespace eyeball {

std::optional<IpAddress> IpAddress::parse(std::string_view text) noexcept {
  if (text.empty() || text.size() > INET6_ADDRSTRLEN) return std::nullopt;
  char buf[INET6_ADDRSTRLEN + 1] = {};
  text.copy(buf, text.size());
  IpAddress out;
  if (text.find(':') == std::string_view::npos) {
    in_addr v4{};
    if (inet_pton(AF_INET, buf, &v4) != 1) return std::nullopt;
    out.family_ = AddressFamily::V4;
    const auto* p = reinterpret_cast<const std::uint8_t*>(&v4.s_addr);
    for (int i = 0; i < 4; ++i) out.bytes_[i] = p[i];
    return out;
  }
  in6_addr v6{};
  if (inet_pton(AF_INET6, buf, &v6) != 1) return std::nullopt;
  out.family_ = AddressFamily::V6;
  for (int i = 0; i < 16; ++i) out.bytes_[i] = v6.s6_addr[i];
  return out;
}

IpAddress IpAddress::v4(std::uint32_t hostOrder) noexcept {
  IpAddress out;
  out.family_ = AddressFamily::V4;
  out.bytes_[0] = static_cast<std::uint8_t>(hostOrder >> 24);
  out.bytes_[1] = static_cast<std::uint8_t>(hostOrder >> 16);
  out.bytes_[2] = static_cast<std::uint8_t>(hostOrder >> 8);
  out.bytes_[3] = static_cast<std::uint8_t>(hostOrder);
  return out;
}

IpAddress IpAddress::v6(const std::array<std::uint8_t, 16>& bytes) noexcept {
  IpAddress out;
  out.family_ = AddressFamily::V6;
  out.bytes_ = bytes;
  return out;
}

std::uint32_t IpAddress::toV4() const noexcept {
  return (std::uint32_t{bytes_[0]} << 24) | (std::uint32_t{bytes_[1]} << 16) |
         (std::uint32_t{bytes_[2]} << 8) | std::uint32_t{bytes_[3]};
}

IpAddress IpAddress::masked(unsigned prefixLength) const noexcept {
  IpAddress out = *this;
  for (unsigned i = 0; i < 16; ++i) {
    const unsigned start = i * 8;
    if (start >= prefixLength) {
      out.bytes_[i] = 0;
    } else if (prefixLength - start < 8) {
      out.bytes_[i] &= static_cast<std::uint8_t>(0xFFU << (8 - (prefixLength - start)));
    }
  }
  return out;
}

std::string IpAddress::str() const {
  char buf[INET6_ADDRSTRLEN] = {};
  if (isV4()) {
    inet_ntop(AF_INET, bytes_.data(), buf, sizeof buf);
  } else {
    inet_ntop(AF_INET6, bytes_.data(), buf, sizeof buf);
  }
  return buf;
}

std::optional<Cidr> Cidr::parse(std::string_view text) noexcept {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto addr = IpAddress::parse(text.substr(0, slash));
  if (!addr) return std::nullopt;
  const auto lenText = text.substr(slash + 1);
  unsigned len = 0;
  auto [ptr, ec] = std::from_chars(lenText.data(), lenText.data() + lenText.size(), len);
  if (ec != std::errc{} || ptr != lenText.data() + lenText.size() || lenText.empty()) return std::nullopt;
  if (len > addr->bitLength()) return std::nullopt;
  return Cidr{addr->masked(len), len};
}

bool Cidr::contains(const IpAddress& addr) const noexcept {
  if (addr.family() != network.family()) return false;
  return addr.masked(length) == network;
}

std::string Cidr::str() const { return network.str() + "/" + std::to_string(length); }

namespace {

const std::vector<Cidr>& special_ranges() {
  static const std::vector<Cidr> ranges = [] {
    std::vector<Cidr> out;
    for (const char* text : {
             "0.0.0.0/8",       "10.0.0.0/8",      "100.64.0.0/10",   "127.0.0.0/8",
             "169.254.0.0/16",  "172.16.0.0/12",   "192.0.0.0/24",    "192.0.2.0/24",
             "192.88.99.0/24",  "192.168.0.0/16",  "198.18.0.0/15",   "198.51.100.0/24",
             "203.0.113.0/24",  "224.0.0.0/4",     "240.0.0.0/4",     "::/128",
             "::1/128",         "::ffff:0:0/96",   "100::/64",        "2001::/23",
             "2001:db8::/32",   "fc00::/7",        "fe80::/10",       "ff00::/8",
         }) {
      out.push_back(*Cidr::parse(text));
    }
    return out;
  }();
  return ranges;
}

}  // namespace

bool is_special_purpose(const IpAddress& addr) noexcept {
  for (const auto& range : special_ranges()) {
    if (range.contains(addr)) return true;
  }
  return false;
}

}  // namespace eyeball
