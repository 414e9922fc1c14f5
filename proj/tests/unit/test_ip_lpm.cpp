#include <random>

#include <doctest.h>

#include "eyeball/ip.hpp"
#include "eyeball/lpm.hpp"
#include "support/oracles.hpp"

using namespace eyeball;

namespace {

IpAddress ip(const char* s) { return *IpAddress::parse(s); }
Cidr cidr(const char* s) { return *Cidr::parse(s); }

}  // namespace

TEST_SUITE("ip_lpm") {

TEST_CASE("address parsing and printing") {
  CHECK(ip("1.2.3.4").str() == "1.2.3.4");
  CHECK(ip("1.2.3.4").toV4() == 0x01020304U);
  CHECK(ip("2001:db8::1").str() == "2001:db8::1");
  CHECK_FALSE(ip("2001:db8::1").isV4());
  CHECK_FALSE(IpAddress::parse("300.1.1.1"));
  CHECK_FALSE(IpAddress::parse("1.2.3"));
  CHECK_FALSE(IpAddress::parse(""));
  CHECK(IpAddress::v4(0x0A000001U) == ip("10.0.0.1"));
  CHECK(ip("255.255.255.255").bit(31));
  CHECK_FALSE(ip("254.0.0.0").bit(7));
  CHECK(ip("128.0.0.0").bit(0));
}

TEST_CASE("cidr parsing masks host bits") {
  CHECK(cidr("10.1.2.3/8").str() == "10.0.0.0/8");
  CHECK(cidr("0.0.0.0/0").length == 0);
  CHECK(cidr("1.2.3.4/32").str() == "1.2.3.4/32");
  CHECK(cidr("2001:db8:ffff::/32").str() == "2001:db8::/32");
  CHECK_FALSE(Cidr::parse("300.1.1.0/24"));
  CHECK_FALSE(Cidr::parse("1.2.3.0/33"));
  CHECK_FALSE(Cidr::parse("1.2.3.0"));
  CHECK_FALSE(Cidr::parse("1.2.3.0/"));
  CHECK_FALSE(Cidr::parse("1.2.3.0/2x"));
  CHECK(cidr("10.0.0.0/8").contains(ip("10.255.0.1")));
  CHECK_FALSE(cidr("10.0.0.0/8").contains(ip("11.0.0.1")));
  CHECK_FALSE(cidr("::/0").contains(ip("1.1.1.1")));
}

TEST_CASE("special-purpose ranges") {
  for (const char* s : {"10.1.1.1", "192.168.1.1", "172.16.0.1", "172.31.255.255", "127.0.0.1", "169.254.3.3",
                        "100.64.0.1", "224.0.0.5", "0.1.2.3", "fe80::1", "::1", "fc00::5"}) {
    CAPTURE(s);
    CHECK(is_special_purpose(ip(s)));
  }
  for (const char* s : {"8.8.8.8", "172.32.0.1", "100.128.0.1", "20.1.1.1", "2a00:1450::1"}) {
    CAPTURE(s);
    CHECK_FALSE(is_special_purpose(ip(s)));
  }
}

TEST_CASE("longest prefix wins") {
  PrefixTable t;
  t.insert(cidr("1.0.0.0/8"), AsNumber(100));
  t.insert(cidr("1.2.0.0/16"), AsNumber(200));
  CHECK(t.lookup(ip("1.2.3.4")) == AsNumber(200));
  CHECK(t.lookup(ip("1.3.3.4")) == AsNumber(100));
  CHECK_FALSE(t.lookup(ip("9.9.9.9")));
  CHECK(t.size() == 2);
}

TEST_CASE("default route and host routes") {
  PrefixTable t;
  t.insert(cidr("0.0.0.0/0"), AsNumber(1));
  t.insert(cidr("5.6.7.8/32"), AsNumber(2));
  CHECK(t.lookup(ip("9.9.9.9")) == AsNumber(1));
  CHECK(t.lookup(ip("5.6.7.8")) == AsNumber(2));
  CHECK(t.lookup(ip("5.6.7.9")) == AsNumber(1));
  CHECK_FALSE(t.lookup(ip("2001:db8::1")));
}

TEST_CASE("reinserting a prefix replaces its value") {
  PrefixTable t;
  t.insert(cidr("1.0.0.0/8"), AsNumber(100));
  t.insert(cidr("1.0.0.0/8"), AsNumber(101));
  CHECK(t.size() == 1);
  CHECK(t.lookup(ip("1.1.1.1")) == AsNumber(101));
  REQUIRE(t.entries().size() == 1);
  CHECK(t.entries()[0].second == AsNumber(101));
}

TEST_CASE("families are kept apart") {
  PrefixTable t;
  t.insert(cidr("::/0"), AsNumber(6));
  t.insert(cidr("2001:db8::/32"), AsNumber(7));
  CHECK_FALSE(t.lookup(ip("1.1.1.1")));
  CHECK(t.lookup(ip("2001:db8::1")) == AsNumber(7));
  CHECK(t.lookup(ip("2a00::1")) == AsNumber(6));
}

TEST_CASE("geo unknown sentinel shadows a covering prefix") {
  GeoTable g;
  g.insert(cidr("5.5.0.0/16"), CountryCode("CA"));
  g.insert(cidr("5.5.7.0/24"), std::nullopt);
  CHECK(g.lookup(ip("5.5.1.1")) == CountryCode("CA"));
  CHECK_FALSE(g.lookup(ip("5.5.7.7")));
  CHECK_FALSE(g.lookup(ip("6.6.6.6")));
}

TEST_CASE("random tables agree with a linear scan") {
  std::mt19937_64 rng(20170401);
  for (int table = 0; table < 40; ++table) {
    const auto entries = oracle::random_nested_table(rng, 1 + rng() % 300);
    PrefixTable t;
    for (const auto& [c, asn] : entries) t.insert(c, asn);
    for (int q = 0; q < 500; ++q) {
      const auto addr = oracle::random_query(rng, entries);
      const auto expected = oracle::lpm_linear_scan(entries, addr);
      const auto got = t.lookup(addr);
      if (got != expected) {
        FAIL_CHECK("mismatch at " << addr.str());
      }
    }
  }
}

TEST_CASE("batch lookup equals the serial reference") {
  std::mt19937_64 rng(7);
  const auto entries = oracle::random_nested_table(rng, 400);
  PrefixTable t;
  for (const auto& [c, asn] : entries) t.insert(c, asn);
  std::vector<IpAddress> queries;
  for (int i = 0; i < 5000; ++i) queries.push_back(oracle::random_query(rng, entries));
  CHECK(lookup_batch(t, queries) == lookup_batch_reference(t, queries));
  CHECK(lookup_batch(t, {}).empty());
}

}  // TEST_SUITE
