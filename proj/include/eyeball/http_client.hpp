#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eyeball/model.hpp"

namespace eyeball {

class HttpError : public std::runtime_error {
 public:
  HttpError(int status, std::string url)
      : std::runtime_error("HTTP " + std::to_string(status) + " for " + url), status_(status), url_(std::move(url)) {}

  /// HTTP status, or 0 when the connection itself failed.
  int status() const noexcept { return status_; }
  const std::string& url() const noexcept { return url_; }

 private:
  int status_;
  std::string url_;
};

class PaginationLoop : public std::runtime_error {
 public:
  explicit PaginationLoop(const std::string& url) : std::runtime_error("pagination loop at " + url) {}
};

/// Spaces out acquisitions to at most `perSecond` per second across all
/// threads sharing the limiter.
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;

  explicit RateLimiter(double perSecond);

  /// Blocks until the next slot is available.
  void acquire();

  std::chrono::nanoseconds interval() const noexcept { return interval_; }

 private:
  std::mutex mu_;
  std::chrono::nanoseconds interval_;
  std::optional<Clock::time_point> next_;
};

struct HttpClientOptions {
  double requestsPerSecond = 4.0;
  /// Environment variable holding an API key; sent as "Authorization: Key <value>".
  std::string credentialEnv;
  std::chrono::seconds timeout{30};
};

struct MeasurementFailure {
  std::uint64_t measurementId = 0;
  int status = 0;
  std::string message;
};

struct MeasurementFetch {
  std::vector<Traceroute> traceroutes;
  std::vector<MeasurementFailure> failures;
};

/// Client for the probe inventory and measurement result endpoints:
///   GET {base}/probes/?country_code=CC  -> {"next": url|null, "results": [...]}
///   GET {base}/measurements/{id}/results/ -> [...]
class MeasurementApiClient {
 public:
  explicit MeasurementApiClient(std::string baseUrl, HttpClientOptions options = {});

  /// Follows pagination to exhaustion. Throws HttpError on any failing page
  /// and PaginationLoop when a page URL repeats.
  std::vector<Probe> fetchProbeInventory(const std::optional<CountryCode>& country);

  /// Per-id failures are collected, never thrown. Records lacking
  /// dst_probe/src_asn/dst_asn are completed from `knownProbes` by address
  /// and probe id. Throws std::invalid_argument on an empty id list.
  MeasurementFetch fetchMeasurementResults(const std::vector<std::uint64_t>& measurementIds,
                                           const std::vector<Probe>& knownProbes = {});

 private:
  struct Response {
    int status;
    std::string body;
  };
  Response get(const std::string& url);

  std::string baseUrl_;
  HttpClientOptions options_;
  RateLimiter limiter_;
};

std::vector<Probe> fetch_probe_inventory(const std::string& baseUrl, const std::optional<CountryCode>& country,
                                         HttpClientOptions options = {});
MeasurementFetch fetch_measurement_results(const std::string& baseUrl, const std::vector<std::uint64_t>& ids,
                                           HttpClientOptions options = {});

}  // namespace eyeball
