#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "godron/analysis.hpp"
#include "godron/rational.hpp"

namespace godron {

/// Plain-data view of an Analysis, as written to and read from JSON.
/// Every index is an exact rational ("p/q" in JSON).
struct ReportPoint {
  std::string kind;
  int chart = 0;
  double s = 0.0;
  double t = 0.0;
  std::array<double, 3> position{};
  int sign = 0;
  Rational index;
  std::optional<double> rho;
  std::optional<int> sigma;
  std::optional<double> rho_platonova;
  std::optional<Rational> winding;
  std::optional<Rational> asymptotic_winding;

  friend bool operator==(const ReportPoint&, const ReportPoint&) = default;
};

struct ReportCheck {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool pass = false;

  friend bool operator==(const ReportCheck&, const ReportCheck&) = default;
};

struct ReportRegion {
  int id = 0;
  std::string kind;
  int chi = 0;
  int signed_nodes = 0;
  int signed_godrons = 0;
  Rational index_sum;
  /// Positions in Report::nodes and Report::godrons.
  std::vector<int> nodes;
  std::vector<int> godrons;
  std::vector<ReportCheck> checks;

  friend bool operator==(const ReportRegion&, const ReportRegion&) = default;
};

struct Report {
  std::string surface_id;
  std::string surface;
  std::map<std::string, double> params;
  int grid = 0;
  int seed_grid = 0;
  double tol_parabolic = 0.0;
  int chi_surface = 0;
  std::string verdict;
  int exit_code = 0;
  int parabolic_polylines = 0;
  int flecnodal_polylines = 0;
  std::vector<ReportPoint> nodes;
  std::vector<ReportPoint> godrons;
  std::vector<ReportRegion> regions;
  std::vector<ReportCheck> global;
  std::vector<std::string> warnings;

  friend bool operator==(const Report&, const Report&) = default;
};

Report make_report(const Analysis& analysis);

/// Pretty-printed JSON; doubles are written with round-trip precision.
std::string write_report_json(const Report& report);
/// Throws ValidationError on malformed input.
Report parse_report_json(const std::string& text);

}  // namespace godron
