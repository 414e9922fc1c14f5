#include <cmath>

#include <doctest.h>

#include "eyeball/model.hpp"

using namespace eyeball;

namespace {

EyeballNetwork net(std::uint32_t asn, double f) { return {AsNumber(asn), CountryCode("CA"), f, 0}; }

}  // namespace

TEST_SUITE("model") {

TEST_CASE("country codes are two upper-case letters") {
  CHECK(CountryCode::parse("CA"));
  CHECK_FALSE(CountryCode::parse("ca"));
  CHECK_FALSE(CountryCode::parse("CAN"));
  CHECK_FALSE(CountryCode::parse(""));
  CHECK_THROWS_AS(CountryCode("X1"), std::invalid_argument);
  CHECK(CountryCode("NL").str() == "NL");
  CHECK(CountryCode("CA") < CountryCode("DE"));
}

TEST_CASE("AS numbers") {
  CHECK(AsNumber::parse("812")->value() == 812);
  CHECK(AsNumber::parse("AS577")->value() == 577);
  CHECK(AsNumber::parse("4294967295")->value() == 4294967295U);
  CHECK_FALSE(AsNumber::parse("0"));
  CHECK_FALSE(AsNumber::parse("4294967296"));
  CHECK_FALSE(AsNumber::parse("-1"));
  CHECK_FALSE(AsNumber::parse("12a"));
  CHECK_FALSE(AsNumber::parse("AS"));
  CHECK_THROWS_AS(AsNumber(0), std::invalid_argument);
}

TEST_CASE("geo points validate ranges") {
  CHECK(GeoPoint::valid(90, 180));
  CHECK(GeoPoint::valid(-90, -180));
  CHECK_FALSE(GeoPoint::valid(90.1, 0));
  CHECK_FALSE(GeoPoint::valid(0, -180.5));
  CHECK_FALSE(GeoPoint::valid(std::nan(""), 0));
  CHECK_THROWS(GeoPoint::make(100, 0));
}

TEST_CASE("user estimates floor the product") {
  CHECK(estimate_users(0.25, 33000000) == 8250000);
  CHECK(estimate_users(0.14, 33000000) == 4620000);
  CHECK(estimate_users(0.333, 10) == 3);
  CHECK(estimate_users(0.0, 10) == 0);
  CHECK(estimate_users(1.0, 7) == 7);
  // 0.07 * 100 is 7.000000000000001 in binary; still 7.
  CHECK(estimate_users(0.07, 100) == 7);
  // 0.29 * 100 is 28.999999999999996 in binary; the decimal product is 29.
  CHECK(estimate_users(0.29, 100) == 29);
}

TEST_CASE("eyeball set invariants") {
  const CountryCode ca("CA");
  const GeoPoint ottawa{45.4, -75.7};
  EyeballSet ok(ca, 100, ottawa, {net(1, 0.5), net(2, 0.3), net(3, 0.2)});
  CHECK(ok.size() == 3);
  CHECK(ok.coveredFraction() == doctest::Approx(1.0));
  CHECK_THROWS_AS(EyeballSet(ca, 100, ottawa, {net(1, 0.7), net(2, 0.31)}), std::invalid_argument);
  CHECK_THROWS_AS(EyeballSet(ca, 100, ottawa, {net(1, 0.2), net(2, 0.3)}), std::invalid_argument);
  CHECK_THROWS_AS(EyeballSet(ca, 100, ottawa, {net(2, 0.3), net(1, 0.3)}), std::invalid_argument);
  CHECK_THROWS_AS(EyeballSet(ca, 100, ottawa, {net(1, 0.3), net(1, 0.2)}), std::invalid_argument);
  EyeballNetwork foreign{AsNumber(9), CountryCode("US"), 0.1, 0};
  CHECK_THROWS_AS(EyeballSet(ca, 100, ottawa, {foreign}), std::invalid_argument);

  EyeballSet tied(ca, 100, ottawa, {net(1, 0.3), net(2, 0.3)});
  CHECK(tied.indexOf(AsNumber(2)) == 1);
  CHECK_FALSE(tied.indexOf(AsNumber(3)));
  CHECK(tied.coveredFraction() == doctest::Approx(0.6));
}

TEST_CASE("first reply skips timeouts") {
  TracerouteHop hop;
  hop.index = 1;
  CHECK(hop.firstReply() == nullptr);
  hop.responses.push_back(HopTimeout{});
  CHECK(hop.firstReply() == nullptr);
  hop.responses.push_back(HopReply{*IpAddress::parse("1.2.3.4"), 3.0});
  hop.responses.push_back(HopReply{*IpAddress::parse("5.6.7.8"), 4.0});
  REQUIRE(hop.firstReply());
  CHECK(hop.firstReply()->address.str() == "1.2.3.4");
}

TEST_CASE("probe selectability needs every attribute") {
  Probe p;
  p.id = 1;
  p.asnV4 = AsNumber(812);
  p.location = GeoPoint{43.6, -79.4};
  p.publicAddressV4 = IpAddress::parse("1.2.3.4");
  p.isPublic = true;
  p.isConnected = true;
  CHECK(p.selectable());
  auto q = p;
  q.isPublic = false;
  CHECK_FALSE(q.selectable());
  q = p;
  q.isConnected = false;
  CHECK_FALSE(q.selectable());
  q = p;
  q.location.reset();
  CHECK_FALSE(q.selectable());
  q = p;
  q.asnV4.reset();
  CHECK_FALSE(q.selectable());
  q = p;
  q.publicAddressV4.reset();
  CHECK_FALSE(q.selectable());
}

TEST_CASE("verdict names round-trip") {
  for (auto v : {LocalityVerdict::InCountry, LocalityVerdict::OutOfCountry, LocalityVerdict::Inconsistent,
                 LocalityVerdict::NoCoverage, LocalityVerdict::Undetermined}) {
    CHECK(parse_locality_verdict(to_string(v)) == v);
  }
  for (auto v : {DirectnessVerdict::Direct, DirectnessVerdict::Indirect, DirectnessVerdict::Mixed,
                 DirectnessVerdict::NotApplicable}) {
    CHECK(parse_directness_verdict(to_string(v)) == v);
  }
  for (auto v : {Locality::InCountry, Locality::OutOfCountry, Locality::Undetermined}) {
    CHECK(parse_locality(to_string(v)) == v);
  }
  for (auto v : {Directness::Direct, Directness::Indirect, Directness::Undetermined}) {
    CHECK(parse_directness(to_string(v)) == v);
  }
  CHECK(to_string(LocalityVerdict::InCountry) == "in_country");
  CHECK_FALSE(parse_locality_verdict("sideways"));
}

TEST_CASE("matrix constructor checks shape and no-coverage cells") {
  const CountryCode ca("CA");
  EyeballSet set(ca, 100, GeoPoint{45, -75}, {net(1, 0.6), net(2, 0.4)});
  auto cell = [](std::uint32_t s, std::uint32_t d, LocalityVerdict l) {
    CellVerdict c;
    c.srcAsn = AsNumber(s);
    c.dstAsn = AsNumber(d);
    c.locality = l;
    return c;
  };
  using L = LocalityVerdict;
  EyeballMatrix m(set, {cell(1, 1, L::InCountry), cell(1, 2, L::InCountry), cell(2, 1, L::Undetermined),
                        cell(2, 2, L::InCountry)});
  CHECK(m.dimension() == 2);
  CHECK(m.at(1, 0).locality == L::Undetermined);
  REQUIRE(m.find(AsNumber(2), AsNumber(1)));
  CHECK(m.find(AsNumber(2), AsNumber(1))->srcAsn == AsNumber(2));
  CHECK(m.find(AsNumber(3), AsNumber(1)) == nullptr);

  CHECK_THROWS_AS(EyeballMatrix(set, {cell(1, 1, L::InCountry)}), std::invalid_argument);
  CHECK_THROWS_AS(EyeballMatrix(set, {cell(1, 2, L::InCountry), cell(1, 1, L::InCountry), cell(2, 1, L::InCountry),
                                      cell(2, 2, L::InCountry)}),
                  std::invalid_argument);
  auto bad = cell(1, 2, L::NoCoverage);
  bad.evidence.push_back(Evidence{{1, 2, 3}, {}});
  CHECK_THROWS_AS(EyeballMatrix(set, {cell(1, 1, L::InCountry), bad, cell(2, 1, L::InCountry),
                                      cell(2, 2, L::InCountry)}),
                  std::invalid_argument);
}

}  // TEST_SUITE
