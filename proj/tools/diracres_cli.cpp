//! Command-line front end: reads a potential file, dispatches one command and
//! writes a CSV or JSON table.

#include <CLI11.hpp>
#include <iostream>

#include "diracres/cli.hpp"
#include "diracres/config.hpp"
#include "diracres/errors.hpp"

int main(int argc, char** argv) {
  using namespace diracres;
  CLI::App app{"Jost functions, resonances and trace identities for radial Dirac operators"};
  std::string potential, command, grid, points, region, radii, format = "csv";
  RunConfig c;
  app.add_option("--potential", potential, "potential file (YAML)")->required();
  app.add_option("--command", command, "eval-jost | find-states | counting | omega | det | relation-check | "
                                       "trace-check | hadamard")
      ->required();
  app.add_option("--out", c.out, "output path, '-' for stdout");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", c.tol, "integrator relative tolerance");
  app.add_option("--region", region, "re_lo,re_hi,im_lo,im_hi");
  app.add_option("--radii", radii, "r1,r2,... (counting radii or truncation radii for hadamard)");
  app.add_option("--nodes", c.nodes, "Nystrom nodes N");
  app.add_option("--trunc", c.trunc, "truncation radius R for resonance sums");
  app.add_option("--grid", grid, "lo,hi,n[,im]: n points on a horizontal segment");
  app.add_option("--points", points, "re[:im],... explicit spectral points");
  app.add_option("--ceiling", c.ceiling, "validity ceiling on 2|Im k| gamma");
  app.add_option("--tmax", c.t_max, "cutoff of the Omega integral for relation-check");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    c.potential_path = potential;
    c.potential = parse_potential_file(potential);
    c.command = command;
    c.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (!grid.empty()) c.points = parse_grid(grid);
    if (!points.empty()) {
      const auto extra = parse_points(points);
      c.points.insert(c.points.end(), extra.begin(), extra.end());
    }
    if (!region.empty()) c.region = parse_region(region);
    if (!radii.empty()) c.radii = parse_list(radii);
  } catch (const ConfigError& e) {
    std::cerr << "error (config): " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error (usage): " << e.what() << '\n';
    return 2;
  }
  return run(c, std::cerr);
}
