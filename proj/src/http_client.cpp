#include "eyeball/http_client.hpp"

#include <cstdlib>
#include <map>
#include <set>
#include <thread>

#include <httplib.h>

#include "eyeball/ingest.hpp"
#include "json_codec.hpp"

namespace eyeball {

using nlohmann::json;

RateLimiter::RateLimiter(double perSecond) {
  if (!(perSecond > 0.0)) throw std::invalid_argument("rate limit must be positive");
  interval_ = std::chrono::nanoseconds(static_cast<std::int64_t>(1e9 / perSecond));
}

void RateLimiter::acquire() {
  Clock::time_point slot;
  {
    std::lock_guard lock(mu_);
    const auto now = Clock::now();
    slot = (next_ && *next_ > now) ? *next_ : now;
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // /path?query
};

SplitUrl split_url(const std::string& url) {
  const auto scheme = url.find("://");
  const auto start = scheme == std::string::npos ? 0 : scheme + 3;
  const auto slash = url.find('/', start);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

std::string join(const std::string& base, const std::string& suffix) {
  if (!base.empty() && base.back() == '/') return base + suffix;
  return base + "/" + suffix;
}

}  // namespace

MeasurementApiClient::MeasurementApiClient(std::string baseUrl, HttpClientOptions options)
    : baseUrl_(std::move(baseUrl)), options_(std::move(options)), limiter_(options_.requestsPerSecond) {}

MeasurementApiClient::Response MeasurementApiClient::get(const std::string& url) {
  limiter_.acquire();
  const auto parts = split_url(url);
  httplib::Client client(parts.origin);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  httplib::Headers headers;
  if (!options_.credentialEnv.empty()) {
    if (const char* key = std::getenv(options_.credentialEnv.c_str()); key && *key) {
      headers.emplace("Authorization", std::string("Key ") + key);
    }
  }
  auto res = client.Get(parts.path, headers);
  if (!res) return {0, httplib::to_string(res.error())};
  return {res->status, res->body};
}

std::vector<Probe> MeasurementApiClient::fetchProbeInventory(const std::optional<CountryCode>& country) {
  std::string url = join(baseUrl_, "probes/");
  if (country) url += "?country_code=" + country->str();
  std::vector<Probe> out;
  std::set<std::string> visited;
  while (!url.empty()) {
    if (!visited.insert(url).second) throw PaginationLoop(url);
    const auto res = get(url);
    if (res.status != 200) throw HttpError(res.status, url);
    json page;
    try {
      page = json::parse(res.body);
    } catch (const json::parse_error& e) {
      throw IngestError(ParseIssue{IngestErrorKind::JsonSyntax, 0, url + ": " + e.what()});
    }
    const json& results = page.is_array() ? page : page.value("results", json::array());
    for (const auto& obj : results) out.push_back(detail::probe_from_json(obj, 0));
    url.clear();
    if (page.is_object()) {
      if (auto it = page.find("next"); it != page.end() && it->is_string()) {
        url = it->get<std::string>();
        if (!url.empty() && url.front() == '/') url = split_url(baseUrl_).origin + url;
      }
    }
  }
  return out;
}

namespace {

/// Fills schema fields missing from platform-native result records.
json complete_record(json rec, const std::map<std::uint64_t, const Probe*>& byId,
                     const std::map<IpAddress, const Probe*>& byAddress) {
  if (!rec.contains("src_probe") && rec.contains("prb_id")) rec["src_probe"] = rec["prb_id"];
  if (!rec.contains("hops") && rec.contains("result")) rec["hops"] = rec["result"];
  if (!rec.contains("dst_probe") && rec.contains("dst_addr") && rec["dst_addr"].is_string()) {
    if (auto addr = IpAddress::parse(rec["dst_addr"].get<std::string>())) {
      if (auto it = byAddress.find(*addr); it != byAddress.end()) rec["dst_probe"] = it->second->id;
    }
  }
  auto asn_of = [&](const json& id) -> json {
    if (!id.is_number_unsigned()) return nullptr;
    auto it = byId.find(id.get<std::uint64_t>());
    if (it == byId.end() || !it->second->asnV4) return nullptr;
    return it->second->asnV4->value();
  };
  if (!rec.contains("src_asn") && rec.contains("src_probe")) rec["src_asn"] = asn_of(rec["src_probe"]);
  if (!rec.contains("dst_asn") && rec.contains("dst_probe")) rec["dst_asn"] = asn_of(rec["dst_probe"]);
  return rec;
}

}  // namespace

MeasurementFetch MeasurementApiClient::fetchMeasurementResults(const std::vector<std::uint64_t>& measurementIds,
                                                               const std::vector<Probe>& knownProbes) {
  if (measurementIds.empty()) throw std::invalid_argument("no measurement ids given");
  std::map<std::uint64_t, const Probe*> byId;
  std::map<IpAddress, const Probe*> byAddress;
  for (const auto& p : knownProbes) {
    byId.emplace(p.id, &p);
    if (p.publicAddressV4) byAddress.emplace(*p.publicAddressV4, &p);
  }

  MeasurementFetch out;
  for (const auto id : measurementIds) {
    const auto url = join(baseUrl_, "measurements/" + std::to_string(id) + "/results/");
    const auto res = get(url);
    if (res.status != 200) {
      out.failures.push_back({id, res.status, HttpError(res.status, url).what()});
      continue;
    }
    std::vector<Traceroute> batch;
    try {
      const json doc = json::parse(res.body);
      if (!doc.is_array()) throw IngestError(ParseIssue{IngestErrorKind::JsonSyntax, 0, "expected a JSON array"});
      for (std::size_t i = 0; i < doc.size(); ++i) {
        batch.push_back(detail::traceroute_from_json(complete_record(doc[i], byId, byAddress), i + 1));
      }
    } catch (const json::parse_error& e) {
      out.failures.push_back({id, res.status, std::string("JsonSyntaxError: ") + e.what()});
      continue;
    } catch (const IngestError& e) {
      out.failures.push_back({id, res.status, e.what()});
      continue;
    }
    out.traceroutes.insert(out.traceroutes.end(), std::make_move_iterator(batch.begin()),
                           std::make_move_iterator(batch.end()));
  }
  return out;
}

std::vector<Probe> fetch_probe_inventory(const std::string& baseUrl, const std::optional<CountryCode>& country,
                                         HttpClientOptions options) {
  return MeasurementApiClient(baseUrl, std::move(options)).fetchProbeInventory(country);
}

MeasurementFetch fetch_measurement_results(const std::string& baseUrl, const std::vector<std::uint64_t>& ids,
                                           HttpClientOptions options) {
  return MeasurementApiClient(baseUrl, std::move(options)).fetchMeasurementResults(ids);
}

}  // namespace eyeball
