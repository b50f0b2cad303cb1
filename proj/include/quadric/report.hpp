#pragma once

// CheckReport and the JSON schemas shared by the command-line tool.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "quadric/hypersurface.hpp"

namespace quadric {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 7;

struct Check {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool lower_bound = false;  // passes iff residual > tol
};

struct CheckReport {
  std::string command;
  Json params = Json::object();
  std::vector<Check> checks;
  std::uint64_t seed = kDefaultSeed;
  std::string version = kVersion;
  Json result = Json::object();  // command-specific payload

  /// Adds a check that passes iff residual <= tol.
  void expect_below(std::string name, double residual, double tol);
  /// Adds a check that passes iff residual > tol (a gap that must stay open).
  void expect_above(std::string name, double residual, double tol);
  void add(Check check) { checks.push_back(std::move(check)); }
  void merge(const CheckReport& other, const std::string& prefix);

  std::size_t passed() const;
  std::size_t failed() const { return checks.size() - passed(); }
  bool all_passed() const { return failed() == 0; }
};

Json to_json(const CheckReport& report);
/// Pretty-printed JSON with a trailing newline. Byte-stable for equal input.
std::string dump(const CheckReport& report);

/// {m, N, S, alpha, q_xi}; S row-major in the basis Z_1..Z_m, JZ_1..JZ_m.
Json hypersurface_to_json(const HypersurfaceData& h);

/// Thrown for malformed or inconsistent serialized data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses HypersurfaceData. Syntax errors carry "line L, column C"; a
/// stored alpha disagreeing with g(S xi, xi) by more than 1e-9 is rejected.
/// Geometric precondition failures (e.g. non-unit N) surface as GeometryError.
HypersurfaceData hypersurface_from_json_text(const std::string& text);
HypersurfaceData hypersurface_from_json(const Json& doc);

}  // namespace quadric
