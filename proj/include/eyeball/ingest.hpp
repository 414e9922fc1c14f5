#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eyeball/lpm.hpp"
#include "eyeball/model.hpp"

namespace eyeball {

enum class IngestErrorKind {
  MalformedHeader,
  RowParse,
  DuplicateCountry,
  JsonSyntax,
  MissingField,
  HopOrder,
  InvalidCidr,
  InvalidAsn,
  InvalidCountry,
};

std::string_view to_string(IngestErrorKind kind) noexcept;

/// A single problem found while parsing. line is 1-based; 0 when the input
/// has no line structure (e.g. a JSON array element without position).
struct ParseIssue {
  IngestErrorKind kind;
  std::size_t line = 0;
  std::string reason;

  std::string message() const;
};

class IngestError : public std::runtime_error {
 public:
  explicit IngestError(ParseIssue issue) : std::runtime_error(issue.message()), issue_(std::move(issue)) {}

  IngestErrorKind kind() const noexcept { return issue_.kind; }
  std::size_t line() const noexcept { return issue_.line; }
  const ParseIssue& issue() const noexcept { return issue_; }

 private:
  ParseIssue issue_;
};

/// Values plus every per-record problem, for collect-errors mode.
template <typename T>
struct Collected {
  T values{};
  std::vector<ParseIssue> errors;
  /// Non-fatal notes, such as duplicates resolved by last-wins.
  std::vector<std::string> warnings;
};

struct PopulationEstimateRow {
  CountryCode country;
  AsNumber asn;
  double fractionPercent = 0.0;

  bool operator==(const PopulationEstimateRow&) const = default;
};

/// The one place percentages become [0,1] fractions.
inline double user_fraction(const PopulationEstimateRow& row) noexcept { return row.fractionPercent / 100.0; }

using CountryUsers = std::map<CountryCode, std::uint64_t>;
using Capitals = std::map<CountryCode, GeoPoint>;

// Strict parsers throw IngestError on the first problem. The *_collect
// variants keep going and report every problem they skipped.

std::vector<PopulationEstimateRow> parse_population_estimates(std::string_view text);
Collected<std::vector<PopulationEstimateRow>> parse_population_estimates_collect(std::string_view text);

CountryUsers parse_country_users(std::string_view text);
Collected<CountryUsers> parse_country_users_collect(std::string_view text);

Capitals parse_capitals(std::string_view text);

std::vector<Probe> parse_probe_inventory(std::string_view text);
Collected<std::vector<Probe>> parse_probe_inventory_collect(std::string_view text);

std::vector<Traceroute> parse_traceroute_results(std::string_view text);
Collected<std::vector<Traceroute>> parse_traceroute_results_collect(std::string_view text);

PrefixTable parse_prefix_table(std::string_view text);
Collected<PrefixTable> parse_prefix_table_collect(std::string_view text);

GeoTable parse_geo_table(std::string_view text);
Collected<GeoTable> parse_geo_table_collect(std::string_view text);

// Serializers producing input accepted by the matching parser.

std::string write_population_estimates(const std::vector<PopulationEstimateRow>& rows);
std::string write_country_users(const CountryUsers& users);
std::string write_capitals(const Capitals& capitals);
std::string write_probe_inventory(const std::vector<Probe>& probes);
std::string write_traceroute_results(const std::vector<Traceroute>& traceroutes);
std::string write_prefix_table(const PrefixTable& table);
std::string write_geo_table(const GeoTable& table);

/// Shortest decimal text that parses back to exactly v.
std::string format_double(double v);

}  // namespace eyeball
