#pragma once
//! Command dispatch for the command-line front end.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "diracres/potential.hpp"
#include "diracres/states.hpp"

namespace diracres {

enum class OutputFormat { csv, json };

struct RunConfig {
  PotentialSpec potential;
  std::string potential_path;
  std::string command;
  std::vector<cplx> points;
  std::optional<Region> region;
  std::vector<double> radii;
  double tol = 1e-11;       //!< integrator relative tolerance
  int nodes = 512;          //!< Nystrom nodes
  double trunc = 120.0;     //!< truncation radius for resonance sums
  double ceiling = 40.0;    //!< validity ceiling on 2|Im k| gamma
  double t_max = 400.0;     //!< cutoff of the Omega integral
  std::string out = "-";
  OutputFormat format = OutputFormat::csv;
};

//! One output record; columns re_lambda, im_lambda, re_value, im_value, abs_error_estimate, route.
struct OutputRow {
  cplx lambda;
  cplx value;
  double error = 0.0;
  std::string route;
};

const std::vector<std::string>& known_commands();

//! "lo,hi,n" or "lo,hi,n,im": n points on a horizontal segment.
std::vector<cplx> parse_grid(const std::string& spec);
//! Comma-separated "re" or "re:im" items.
std::vector<cplx> parse_points(const std::string& spec);
Region parse_region(const std::string& spec);
std::vector<double> parse_list(const std::string& spec);

//! Throws UsageError for malformed settings and ValidityCeilingError when the
//! requested work crosses the ceiling.
void validate(const RunConfig& c);

//! Fills rows; rows computed before an exception stay in `rows`.
void execute(const RunConfig& c, std::vector<OutputRow>& rows);

void write_rows(std::ostream& os, const RunConfig& c, const std::vector<OutputRow>& rows);

//! Validates, executes and writes output. Returns 0, 2 (configuration),
//! 3 (numerical failure) or 4 (validity ceiling). On failure the partial rows
//! are written and a manifest goes to <out>.failure.json (stderr for stdout output).
int run(const RunConfig& c, std::ostream& diag);

}  // namespace diracres
