#include "eyeball/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "json_codec.hpp"

namespace eyeball {

using nlohmann::json;

std::string_view to_string(IngestErrorKind kind) noexcept {
  switch (kind) {
    case IngestErrorKind::MalformedHeader: return "MalformedHeader";
    case IngestErrorKind::RowParse: return "RowParseError";
    case IngestErrorKind::DuplicateCountry: return "DuplicateCountry";
    case IngestErrorKind::JsonSyntax: return "JsonSyntaxError";
    case IngestErrorKind::MissingField: return "MissingField";
    case IngestErrorKind::HopOrder: return "HopOrderError";
    case IngestErrorKind::InvalidCidr: return "InvalidCidr";
    case IngestErrorKind::InvalidAsn: return "InvalidAsn";
    case IngestErrorKind::InvalidCountry: return "InvalidCountry";
  }
  return "IngestError";
}

std::string ParseIssue::message() const {
  std::string out(to_string(kind));
  if (line > 0) out += " at line " + std::to_string(line);
  if (!reason.empty()) out += ": " + reason;
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

[[noreturn]] void fail(IngestErrorKind kind, std::size_t line, std::string reason) {
  throw IngestError(ParseIssue{kind, line, std::move(reason)});
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    const auto raw = text.substr(0, nl);
    if (auto t = trim(raw); !t.empty()) out.push_back({number, t});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

/// Splits into header + data rows; checks the header and field counts.
template <typename OnRow>
void read_csv(std::string_view text, std::string_view expectedHeader, std::vector<ParseIssue>& errors,
              OnRow&& onRow) {
  const auto lines = split_lines(text);
  if (lines.empty()) fail(IngestErrorKind::MalformedHeader, 1, "missing header '" + std::string(expectedHeader) + "'");
  const auto header = split_fields(lines.front().text);
  const auto expected = split_fields(expectedHeader);
  if (header != expected) {
    fail(IngestErrorKind::MalformedHeader, lines.front().number,
         "expected '" + std::string(expectedHeader) + "', got '" + std::string(lines.front().text) + "'");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i].text);
    try {
      if (fields.size() != expected.size()) {
        fail(IngestErrorKind::RowParse, lines[i].number,
             "expected " + std::to_string(expected.size()) + " fields, got " + std::to_string(fields.size()));
      }
      onRow(lines[i].number, fields);
    } catch (const IngestError& e) {
      errors.push_back(e.issue());
    }
  }
}

double parse_real(std::string_view s, std::size_t line, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    fail(IngestErrorKind::RowParse, line, "invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t parse_count(std::string_view s, std::size_t line, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(IngestErrorKind::RowParse, line, "invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

CountryCode parse_country(std::string_view s, std::size_t line, IngestErrorKind kind) {
  auto cc = CountryCode::parse(s);
  if (!cc) fail(kind, line, "invalid country code '" + std::string(s) + "'");
  return *cc;
}

Cidr parse_cidr(std::string_view s, std::size_t line) {
  auto cidr = Cidr::parse(s);
  if (!cidr) fail(IngestErrorKind::InvalidCidr, line, "invalid prefix '" + std::string(s) + "'");
  return *cidr;
}

template <typename T>
T strict(Collected<T> collected) {
  if (!collected.errors.empty()) throw IngestError(collected.errors.front());
  return std::move(collected.values);
}

}  // namespace

// ---------------------------------------------------------------- population

Collected<std::vector<PopulationEstimateRow>> parse_population_estimates_collect(std::string_view text) {
  Collected<std::vector<PopulationEstimateRow>> out;
  std::map<std::pair<CountryCode, AsNumber>, std::size_t> seen;
  read_csv(text, "country,asn,fraction_percent", out.errors, [&](std::size_t line, const auto& f) {
    PopulationEstimateRow row;
    row.country = parse_country(f[0], line, IngestErrorKind::RowParse);
    auto asn = AsNumber::parse(f[1]);
    if (!asn) fail(IngestErrorKind::RowParse, line, "invalid asn '" + std::string(f[1]) + "'");
    row.asn = *asn;
    row.fractionPercent = parse_real(f[2], line, "fraction_percent");
    if (row.fractionPercent < 0.0 || row.fractionPercent > 100.0) {
      fail(IngestErrorKind::RowParse, line, "fraction_percent " + std::string(f[2]) + " outside [0,100]");
    }
    auto key = std::make_pair(row.country, row.asn);
    if (auto it = seen.find(key); it != seen.end()) {
      out.warnings.push_back("line " + std::to_string(line) + ": duplicate " + row.country.str() + " AS" +
                             row.asn.str() + ", keeping the last value");
      out.values[it->second] = row;
    } else {
      seen.emplace(key, out.values.size());
      out.values.push_back(row);
    }
  });
  return out;
}

std::vector<PopulationEstimateRow> parse_population_estimates(std::string_view text) {
  return strict(parse_population_estimates_collect(text));
}

std::string write_population_estimates(const std::vector<PopulationEstimateRow>& rows) {
  std::string out = "country,asn,fraction_percent\n";
  for (const auto& r : rows) out += r.country.str() + "," + r.asn.str() + "," + format_double(r.fractionPercent) + "\n";
  return out;
}

// ------------------------------------------------------------- country users

Collected<CountryUsers> parse_country_users_collect(std::string_view text) {
  Collected<CountryUsers> out;
  read_csv(text, "country,internet_users", out.errors, [&](std::size_t line, const auto& f) {
    auto cc = parse_country(f[0], line, IngestErrorKind::RowParse);
    if (!f[1].empty() && f[1].front() == '-') {
      fail(IngestErrorKind::RowParse, line, "negative internet_users '" + std::string(f[1]) + "'");
    }
    const auto users = parse_count(f[1], line, "internet_users");
    if (!out.values.emplace(cc, users).second) {
      fail(IngestErrorKind::DuplicateCountry, line, "country " + cc.str() + " listed twice");
    }
  });
  return out;
}

CountryUsers parse_country_users(std::string_view text) { return strict(parse_country_users_collect(text)); }

std::string write_country_users(const CountryUsers& users) {
  std::string out = "country,internet_users\n";
  for (const auto& [cc, n] : users) out += cc.str() + "," + std::to_string(n) + "\n";
  return out;
}

// ------------------------------------------------------------------ capitals

Capitals parse_capitals(std::string_view text) {
  Collected<Capitals> out;
  read_csv(text, "country,latitude,longitude", out.errors, [&](std::size_t line, const auto& f) {
    auto cc = parse_country(f[0], line, IngestErrorKind::RowParse);
    const double lat = parse_real(f[1], line, "latitude");
    const double lon = parse_real(f[2], line, "longitude");
    if (!GeoPoint::valid(lat, lon)) fail(IngestErrorKind::RowParse, line, "coordinates out of range");
    if (!out.values.emplace(cc, GeoPoint{lat, lon}).second) {
      fail(IngestErrorKind::DuplicateCountry, line, "country " + cc.str() + " listed twice");
    }
  });
  return strict(std::move(out));
}

std::string write_capitals(const Capitals& capitals) {
  std::string out = "country,latitude,longitude\n";
  for (const auto& [cc, p] : capitals) {
    out += cc.str() + "," + format_double(p.latitude) + "," + format_double(p.longitude) + "\n";
  }
  return out;
}

// --------------------------------------------------------------- JSON codecs

namespace detail {

namespace {

const json* field(const json& obj, std::string_view name) {
  auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

const json& required(const json& obj, std::string_view name, std::size_t line) {
  const json* v = field(obj, name);
  if (!v) fail(IngestErrorKind::MissingField, line, std::string(name));
  return *v;
}

std::uint64_t as_unsigned(const json& v, std::string_view name, std::size_t line) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(IngestErrorKind::RowParse, line, std::string(name) + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

double as_real(const json& v, std::string_view name, std::size_t line) {
  if (!v.is_number()) fail(IngestErrorKind::RowParse, line, std::string(name) + " must be a number");
  return v.get<double>();
}

AsNumber as_asn(const json& v, std::string_view name, std::size_t line) {
  std::optional<AsNumber> asn;
  if (v.is_number_unsigned() || v.is_number_integer()) {
    const auto raw = v.get<std::int64_t>();
    if (raw > 0 && raw <= 0xFFFFFFFFLL) asn = AsNumber(static_cast<std::uint64_t>(raw));
  } else if (v.is_string()) {
    asn = AsNumber::parse(v.get<std::string>());
  }
  if (!asn) fail(IngestErrorKind::RowParse, line, "invalid " + std::string(name));
  return *asn;
}

IpAddress as_address(const json& v, std::string_view name, std::size_t line) {
  std::optional<IpAddress> addr;
  if (v.is_string()) addr = IpAddress::parse(v.get<std::string>());
  if (!addr) fail(IngestErrorKind::RowParse, line, "invalid " + std::string(name));
  return *addr;
}

}  // namespace

Probe probe_from_json(const json& obj, std::size_t line) {
  if (!obj.is_object()) fail(IngestErrorKind::RowParse, line, "probe entry is not an object");
  Probe p;
  p.id = as_unsigned(required(obj, "id", line), "id", line);
  if (const auto* v = field(obj, "asn_v4")) p.asnV4 = as_asn(*v, "asn_v4", line);
  if (const auto* v = field(obj, "asn_v6")) p.asnV6 = as_asn(*v, "asn_v6", line);

  const json* lat = field(obj, "latitude");
  const json* lon = field(obj, "longitude");
  if (const auto* geometry = field(obj, "geometry"); geometry && !lat && !lon) {
    // GeoJSON point: coordinates are [longitude, latitude].
    if (const auto* coords = field(*geometry, "coordinates"); coords && coords->is_array() && coords->size() == 2) {
      lon = &(*coords)[0];
      lat = &(*coords)[1];
    }
  }
  if (lat && lon) {
    const double la = as_real(*lat, "latitude", line);
    const double lo = as_real(*lon, "longitude", line);
    if (!GeoPoint::valid(la, lo)) fail(IngestErrorKind::RowParse, line, "probe coordinates out of range");
    p.location = GeoPoint{la, lo};
  }
  if (const auto* v = field(obj, "address_v4")) p.publicAddressV4 = as_address(*v, "address_v4", line);
  if (p.publicAddressV4 && !p.publicAddressV4->isV4()) fail(IngestErrorKind::RowParse, line, "address_v4 is not IPv4");
  if (const auto* v = field(obj, "country_code")) {
    if (!v->is_string()) fail(IngestErrorKind::RowParse, line, "country_code must be a string");
    p.country = CountryCode::parse(v->get<std::string>());
  }
  if (const auto* v = field(obj, "is_public")) {
    if (!v->is_boolean()) fail(IngestErrorKind::RowParse, line, "is_public must be a boolean");
    p.isPublic = v->get<bool>();
  }
  if (const auto* v = field(obj, "status")) {
    if (v->is_string()) {
      p.isConnected = v->get<std::string>() == "Connected";
    } else if (const auto* name = v->is_object() ? field(*v, "name") : nullptr; name && name->is_string()) {
      p.isConnected = name->get<std::string>() == "Connected";
    } else {
      fail(IngestErrorKind::RowParse, line, "status must be a string");
    }
  }
  return p;
}

json probe_to_json(const Probe& p) {
  json obj = json::object();
  obj["id"] = p.id;
  obj["asn_v4"] = p.asnV4 ? json(p.asnV4->value()) : json(nullptr);
  obj["asn_v6"] = p.asnV6 ? json(p.asnV6->value()) : json(nullptr);
  obj["latitude"] = p.location ? json(p.location->latitude) : json(nullptr);
  obj["longitude"] = p.location ? json(p.location->longitude) : json(nullptr);
  obj["address_v4"] = p.publicAddressV4 ? json(p.publicAddressV4->str()) : json(nullptr);
  obj["country_code"] = p.country ? json(p.country->str()) : json(nullptr);
  obj["is_public"] = p.isPublic;
  obj["status"] = p.isConnected ? "Connected" : "Disconnected";
  return obj;
}

Traceroute traceroute_from_json(const json& obj, std::size_t line) {
  if (!obj.is_object()) fail(IngestErrorKind::RowParse, line, "traceroute record is not an object");
  Traceroute tr;
  tr.srcProbeId = as_unsigned(required(obj, "src_probe", line), "src_probe", line);
  tr.dstProbeId = as_unsigned(required(obj, "dst_probe", line), "dst_probe", line);
  tr.srcAsn = as_asn(required(obj, "src_asn", line), "src_asn", line);
  tr.dstAsn = as_asn(required(obj, "dst_asn", line), "dst_asn", line);
  tr.dstAddress = as_address(required(obj, "dst_addr", line), "dst_addr", line);
  const auto af = as_unsigned(required(obj, "af", line), "af", line);
  if (af != 4 && af != 6) fail(IngestErrorKind::RowParse, line, "af must be 4 or 6");
  tr.addressFamily = static_cast<int>(af);
  if ((af == 4) != tr.dstAddress.isV4()) fail(IngestErrorKind::RowParse, line, "dst_addr does not match af");
  const auto& ts = required(obj, "timestamp", line);
  if (!ts.is_number_integer()) fail(IngestErrorKind::RowParse, line, "timestamp must be an integer");
  tr.timestamp = ts.get<std::int64_t>();

  const auto& hops = required(obj, "hops", line);
  if (!hops.is_array()) fail(IngestErrorKind::RowParse, line, "hops must be an array");
  for (const auto& h : hops) {
    if (!h.is_object()) fail(IngestErrorKind::RowParse, line, "hop is not an object");
    TracerouteHop hop;
    const auto index = as_unsigned(required(h, "hop", line), "hop", line);
    if (index == 0 || index > 0xFFFFFFFFULL) fail(IngestErrorKind::RowParse, line, "hop index must be positive");
    hop.index = static_cast<std::uint32_t>(index);
    if (!tr.hops.empty() && hop.index <= tr.hops.back().index) {
      fail(IngestErrorKind::HopOrder, line,
           "hop " + std::to_string(hop.index) + " follows hop " + std::to_string(tr.hops.back().index));
    }
    const json* results = field(h, "results");
    if (!results) results = field(h, "result");
    if (results) {
      if (!results->is_array()) fail(IngestErrorKind::RowParse, line, "hop results must be an array");
      for (const auto& r : *results) {
        if (!r.is_object()) fail(IngestErrorKind::RowParse, line, "hop result is not an object");
        if (const auto* from = field(r, "from")) {
          HopReply reply{as_address(*from, "from", line), std::nullopt};
          if (const auto* rtt = field(r, "rtt")) {
            reply.rttMs = as_real(*rtt, "rtt", line);
            if (*reply.rttMs < 0.0) fail(IngestErrorKind::RowParse, line, "negative rtt");
          }
          hop.responses.emplace_back(reply);
        } else {
          hop.responses.emplace_back(HopTimeout{});
        }
      }
    }
    tr.hops.push_back(std::move(hop));
  }
  return tr;
}

json traceroute_to_json(const Traceroute& tr) {
  json hops = json::array();
  for (const auto& hop : tr.hops) {
    json results = json::array();
    for (const auto& r : hop.responses) {
      if (const auto* reply = std::get_if<HopReply>(&r)) {
        json o = {{"from", reply->address.str()}};
        if (reply->rttMs) o["rtt"] = *reply->rttMs;
        results.push_back(std::move(o));
      } else {
        results.push_back({{"x", "*"}});
      }
    }
    hops.push_back({{"hop", hop.index}, {"results", std::move(results)}});
  }
  return json{{"src_probe", tr.srcProbeId}, {"dst_probe", tr.dstProbeId}, {"src_asn", tr.srcAsn.value()},
              {"dst_asn", tr.dstAsn.value()}, {"dst_addr", tr.dstAddress.str()}, {"af", tr.addressFamily},
              {"timestamp", tr.timestamp},    {"hops", std::move(hops)}};
}

}  // namespace detail

// ------------------------------------------------------------------- probes

Collected<std::vector<Probe>> parse_probe_inventory_collect(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(IngestErrorKind::JsonSyntax, 0, e.what());
  }
  if (!doc.is_array()) fail(IngestErrorKind::JsonSyntax, 0, "probe inventory must be a JSON array");
  Collected<std::vector<Probe>> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    try {
      out.values.push_back(detail::probe_from_json(doc[i], 0));
    } catch (const IngestError& e) {
      auto issue = e.issue();
      issue.reason = "probe #" + std::to_string(i) + ": " + issue.reason;
      out.errors.push_back(std::move(issue));
    }
  }
  return out;
}

std::vector<Probe> parse_probe_inventory(std::string_view text) { return strict(parse_probe_inventory_collect(text)); }

std::string write_probe_inventory(const std::vector<Probe>& probes) {
  json arr = json::array();
  for (const auto& p : probes) arr.push_back(detail::probe_to_json(p));
  return arr.dump(1) + "\n";
}

// -------------------------------------------------------------- traceroutes

Collected<std::vector<Traceroute>> parse_traceroute_results_collect(std::string_view text) {
  Collected<std::vector<Traceroute>> out;
  for (const auto& line : split_lines(text)) {
    try {
      json obj;
      try {
        obj = json::parse(line.text);
      } catch (const json::parse_error& e) {
        fail(IngestErrorKind::JsonSyntax, line.number, e.what());
      }
      out.values.push_back(detail::traceroute_from_json(obj, line.number));
    } catch (const IngestError& e) {
      out.errors.push_back(e.issue());
    }
  }
  return out;
}

std::vector<Traceroute> parse_traceroute_results(std::string_view text) {
  return strict(parse_traceroute_results_collect(text));
}

std::string write_traceroute_results(const std::vector<Traceroute>& traceroutes) {
  std::string out;
  for (const auto& tr : traceroutes) out += detail::traceroute_to_json(tr).dump() + "\n";
  return out;
}

// ----------------------------------------------------------- prefix tables

Collected<PrefixTable> parse_prefix_table_collect(std::string_view text) {
  Collected<PrefixTable> out;
  read_csv(text, "prefix,origin_asn", out.errors, [&](std::size_t line, const auto& f) {
    const auto cidr = parse_cidr(f[0], line);
    auto asn = AsNumber::parse(f[1]);
    if (!asn) fail(IngestErrorKind::InvalidAsn, line, "invalid origin_asn '" + std::string(f[1]) + "'");
    out.values.insert(cidr, *asn);
  });
  return out;
}

PrefixTable parse_prefix_table(std::string_view text) { return strict(parse_prefix_table_collect(text)); }

std::string write_prefix_table(const PrefixTable& table) {
  std::string out = "prefix,origin_asn\n";
  for (const auto& [cidr, asn] : table.entries()) out += cidr.str() + "," + asn.str() + "\n";
  return out;
}

Collected<GeoTable> parse_geo_table_collect(std::string_view text) {
  Collected<GeoTable> out;
  read_csv(text, "prefix,country", out.errors, [&](std::size_t line, const auto& f) {
    const auto cidr = parse_cidr(f[0], line);
    std::optional<CountryCode> cc;
    if (f[1] != "??") cc = parse_country(f[1], line, IngestErrorKind::InvalidCountry);
    out.values.insert(cidr, std::move(cc));
  });
  return out;
}

GeoTable parse_geo_table(std::string_view text) { return strict(parse_geo_table_collect(text)); }

std::string write_geo_table(const GeoTable& table) {
  std::string out = "prefix,country\n";
  for (const auto& [cidr, cc] : table.entries()) out += cidr.str() + "," + (cc ? cc->str() : std::string("??")) + "\n";
  return out;
}

}  // namespace eyeball
