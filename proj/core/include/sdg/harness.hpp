#pragma once

// Named randomized checks and JSON reports.
//
// A check runs `trials` independent trials. Trial t of check C draws from the
// stream Rng::derive(seed, C, t) and gets its own generator context, so a
// trial can be replayed alone and the report does not depend on scheduling.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdg/io.hpp"
#include "sdg/representation.hpp"

namespace sdg {

inline constexpr const char* kVersion = "0.1.0";

struct CheckConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 50;
  std::size_t base_dim = 2;
  std::size_t fiber_dim = 2;
  std::vector<std::size_t> degrees = {0, 1, 2};
  /// Restrict checks to one representation / groupoid; unset runs every
  /// compatible combination.
  std::optional<RepresentationKind> representation;
  std::optional<GroupoidKind> groupoid;
  long bound = 3;
  /// Fixed gauge field (polynomial strings in x1..xm) used instead of a
  /// random one whenever the gauge representation is exercised.
  std::optional<std::vector<std::vector<std::string>>> gauge;
  /// When false, reports carry millis = 0 so they are byte-stable.
  bool timing = true;

  /// Throws InputError when a field is out of range.
  void validate() const;
  bool wants_degree(std::size_t n) const;
};

Json config_to_json(const CheckConfig& cfg);
/// Overlays the keys present in `j` (seed, trials, base_dim, fiber_dim,
/// degrees, rep, groupoid, bound, timing, gauge) onto `base`.
CheckConfig config_from_json(const Json& j, CheckConfig base = {});

struct CheckReport {
  std::string check;
  std::size_t trials = 0;
  std::vector<Json> failures;
  std::int64_t millis = 0;

  bool passed() const noexcept { return failures.empty(); }
};

const std::vector<std::string>& check_names();
bool is_check(std::string_view name);

/// Throws InputError for an unknown name or an invalid config.
CheckReport run_check(std::string_view name, const CheckConfig& cfg);
std::vector<CheckReport> run_suite(const CheckConfig& cfg);

Json report_to_json(const std::vector<CheckReport>& reports, const CheckConfig& cfg);
/// Empty when `report` matches the report schema (docs/formats.md).
std::vector<std::string> validate_report_schema(const Json& report);
/// Plain-text table of a report document.
std::string render_report(const Json& report);

/// Valid (groupoid, representation) pairs admitted by the config.
std::vector<std::pair<GroupoidKind, RepresentationKind>> combinations(const CheckConfig& cfg);
std::vector<GroupoidKind> groupoids(const CheckConfig& cfg);

/// Trivial/adjoint as given; gauge with a random field from `rng`.
Representation make_representation(RepresentationKind kind, std::size_t base_dim, std::size_t fiber_dim, Rng& rng,
                                   long bound);
/// As above, but the gauge field comes from `cfg.gauge` when set and its
/// size is `fiber_dim`.
Representation make_representation(const CheckConfig& cfg, RepresentationKind kind, std::size_t fiber_dim, Rng& rng);

/// Random classical form of the given degree whose indices range over the
/// first-order coordinates of `groupoid` cubes. With `constant` set the
/// coefficients do not depend on the base point.
DifferentialForm random_classical_form(Rng& rng, std::size_t degree, GroupoidKind groupoid, std::size_t base_dim,
                                       std::size_t fiber_dim, long bound, bool constant = false);

}  // namespace sdg
