#pragma once
//! Location and classification of eigenvalues, resonances, anti-bound and
//! virtual states; counting function of Jost-function zeros.

#include <functional>
#include <string>
#include <vector>

#include "diracres/jost.hpp"
#include "diracres/potential.hpp"

namespace diracres {

enum class StateKind { eigenvalue, resonance, anti_bound, virtual_state, unclassified };
const char* to_string(StateKind k);

struct State {
  cplx location;
  StateKind kind = StateKind::unclassified;
  int multiplicity = 1;
  double residual = 0.0;     //!< |g+| (or |F| for gap states) at the polished root
  double local_scale = 0.0;  //!< radius * |g'| at the root
  Rim rim = Rim::bulk;
};

enum class CellStatus { pending, split, isolated, empty };

struct ContourCell {
  double re_lo = 0.0, re_hi = 0.0, im_lo = 0.0, im_hi = 0.0;
  int winding = 0;
  int phase_samples = 0;
  CellStatus status = CellStatus::pending;
};

struct Region {
  double re_lo = 0.0, re_hi = 0.0, im_lo = 0.0, im_hi = 0.0;
};

struct StateFinderOptions {
  JostOptions jost;
  double max_phase_step = 1.5707963267948966;  //!< refine until consecutive steps are below this
  int max_refine_depth = 40;
  double min_cell_fraction = 1e-6;  //!< of the region diameter
  double newton_tol = 1e-10;
  int newton_max_iter = 60;
  double initial_spacing = 0.0;     //!< 0 selects 0.25 / max(gamma, 1)
  double classify_ratio = 10.0;
  double classify_eps = 1e-6;
  double gap_clearance = 1e-6;
  int gap_samples = 4000;
  double dogbone_clearance = 1e-3;  //!< times m
};

struct StateSearch {
  std::vector<State> states;
  std::vector<ContourCell> cells;
  int total_winding = 0;
  Region searched;  //!< region after clearance adjustments
  std::size_t evaluations = 0;
};

StateSearch find_states(const PotentialSpec& v, const Region& region, const StateFinderOptions& o = {});

//! Net phase change / 2 pi of f along the closed polyline through `vertices`.
struct Winding {
  int value = 0;
  double raw = 0.0;  //!< accumulated phase / 2 pi before rounding
  int samples = 0;
};
Winding winding_number(const std::function<cplx(cplx)>& f, const std::vector<cplx>& vertices, double spacing,
                       const StateFinderOptions& o);
Winding winding_on_circle(const std::function<cplx(cplx)>& f, cplx center, double r, double spacing,
                          const StateFinderOptions& o);

std::vector<State> gap_states(const PotentialSpec& v, const StateFinderOptions& o = {});

struct VirtualIndicator {
  double endpoint = 0.0;
  cplx value;
  double extrapolation_change = 0.0;
  bool is_virtual = false;
};
VirtualIndicator virtual_indicator(const PotentialSpec& v, int endpoint_sign, const StateFinderOptions& o = {});

struct CountingRow {
  double r = 0.0;
  int count = 0;
  double ratio = 0.0;  //!< count / (2 r gamma / pi)
  double raw_winding = 0.0;
  int samples = 0;
};
std::vector<CountingRow> counting_function(const PotentialSpec& v, const std::vector<double>& radii,
                                           const StateFinderOptions& o = {});

//! Fraction of states with |lambda| <= r lying outside both sectors |arg| < delta, |arg -+ pi| < delta.
double sector_fraction(const std::vector<State>& states, double r, double delta);

//! Newton iteration on g+ with Cauchy derivative; returns the polished state (kind left unclassified).
bool newton_polish(const PotentialSpec& v, cplx start, const StateFinderOptions& o, State& out,
                   const Region* confine = nullptr);

}  // namespace diracres
