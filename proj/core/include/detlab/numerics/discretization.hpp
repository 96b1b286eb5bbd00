#pragma once

namespace detlab {

// Shared discretization settings. Grid sizes here are the base level;
// refinement doubles the panel count.
struct Discretization {
  double x_max = 30.0;
  int n_panels = 8;
  int nodes_per_panel = 16;
  int l_max = 40;
  double tolerance = 1e-6;
  int max_refinements = 4;
  double ode_tolerance = 1e-12;
};

}  // namespace detlab
