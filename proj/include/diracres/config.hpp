#pragma once
//! Potential files: YAML documents with kappa, mass, optional name, and pieces
//! given either as {lo, hi, coeffs} maps or as [lo, hi, [c0, c1, ...]] triples.

#include <string>

#include "diracres/potential.hpp"

namespace diracres {

//! Throws ConfigError with "<source>:<line>: <field>: <reason>" diagnostics.
PotentialSpec parse_potential_file(const std::string& path);
PotentialSpec parse_potential_string(const std::string& text, const std::string& source = "<string>");

}  // namespace diracres
