#include "diracres/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "diracres/errors.hpp"

namespace diracres {

namespace {

[[noreturn]] void fail(const std::string& src, const YAML::Node& n, const std::string& field, const std::string& why) {
  std::ostringstream os;
  os << src << ":" << (n.Mark().line >= 0 ? n.Mark().line + 1 : 0) << ": " << field << ": " << why;
  throw ConfigError(os.str());
}

double number(const std::string& src, const YAML::Node& n, const std::string& field) {
  if (!n || !n.IsScalar()) fail(src, n, field, "expected a number");
  double x = 0.0;
  try {
    x = n.as<double>();
  } catch (const YAML::Exception&) {
    fail(src, n, field, "malformed number '" + n.Scalar() + "'");
  }
  if (!std::isfinite(x)) fail(src, n, field, "number is not finite");
  return x;
}

PotentialPiece piece(const std::string& src, const YAML::Node& n, std::size_t idx) {
  const std::string f = "pieces[" + std::to_string(idx) + "]";
  YAML::Node lo, hi, co;
  if (n.IsMap()) {
    lo = n["lo"];
    hi = n["hi"];
    co = n["coeffs"];
  } else if (n.IsSequence() && n.size() == 3) {
    lo = n[0];
    hi = n[1];
    co = n[2];
  } else {
    fail(src, n, f, "expected {lo, hi, coeffs} or [lo, hi, [coeffs]]");
  }
  if (!lo) fail(src, n, f + ".lo", "missing");
  if (!hi) fail(src, n, f + ".hi", "missing");
  if (!co) fail(src, n, f + ".coeffs", "missing");
  PotentialPiece p;
  p.lo = number(src, lo, f + ".lo");
  p.hi = number(src, hi, f + ".hi");
  if (!(p.hi > p.lo)) fail(src, n, f, "hi must exceed lo");
  if (co.IsScalar()) {
    p.coeffs.push_back(number(src, co, f + ".coeffs"));
  } else if (co.IsSequence() && co.size() > 0) {
    for (std::size_t j = 0; j < co.size(); ++j)
      p.coeffs.push_back(number(src, co[j], f + ".coeffs[" + std::to_string(j) + "]"));
  } else {
    fail(src, co, f + ".coeffs", "expected a non-empty list of numbers");
  }
  return p;
}

PotentialSpec build(const std::string& src, const YAML::Node& root) {
  if (!root.IsMap()) fail(src, root, "document", "expected a mapping with kappa, mass, pieces");
  const YAML::Node k = root["kappa"];
  if (!k) fail(src, root, "kappa", "missing");
  const double kd = number(src, k, "kappa");
  if (kd != std::floor(kd)) fail(src, k, "kappa", "must be an integer");
  if (kd < 1) fail(src, k, "kappa", "must be >= 1");
  const YAML::Node m = root["mass"];
  if (!m) fail(src, root, "mass", "missing");
  const double mass = number(src, m, "mass");
  if (mass < 0) fail(src, m, "mass", "must be >= 0");
  const YAML::Node ps = root["pieces"];
  if (!ps || !ps.IsSequence() || ps.size() == 0) fail(src, ps ? ps : root, "pieces", "expected a non-empty list");
  std::vector<PotentialPiece> pieces;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    PotentialPiece p = piece(src, ps[i], i);
    const std::string f = "pieces[" + std::to_string(i) + "]";
    if (i == 0 && p.lo != 0.0) fail(src, ps[i], f + ".lo", "support must start at 0");
    if (i > 0) {
      const double prev = pieces.back().hi;
      if (p.lo < prev) fail(src, ps[i], f, "overlaps the previous piece");
      if (p.lo > prev) fail(src, ps[i], f, "leaves a gap after the previous piece (not contiguous)");
    }
    pieces.push_back(std::move(p));
  }
  std::string name;
  if (root["name"]) name = root["name"].as<std::string>();
  try {
    return PotentialSpec(static_cast<int>(kd), mass, std::move(pieces), name);
  } catch (const ConfigError& e) {
    fail(src, root, "potential", e.what());
  }
}

}  // namespace

PotentialSpec parse_potential_string(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": syntax: " + e.msg);
  }
  return build(source, root);
}

PotentialSpec parse_potential_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open potential file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_potential_string(ss.str(), path);
}

}  // namespace diracres
