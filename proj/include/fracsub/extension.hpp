#pragma once

#include <vector>

#include "fracsub/field.hpp"

namespace fracsub {

// Degenerate-weight extension W of a boundary field U to the slab
// [-L,L)^N x (0, Y]: div(y^{1-sigma} grad W) = 0 with W(.,0) = U and a
// Dirichlet cap W(.,Y) = 0. Diagonal in the x-frequency: each mode solves
// (y^{1-sigma} Whats')' = y^{1-sigma} |xi|^2 What on a geometrically graded
// y-mesh, discretized in conservation form with exact flux integrals
// a_{j+1/2} = sigma / (y_{j+1}^sigma - y_j^sigma), which handles the
// degeneracy at y = 0 exactly.
struct ExtensionOptions {
  double y_min = 0.0;   // first node; default h/4
  double q = 1.1;       // geometric ratio, in (1, 1.2]
  double Y = 0.0;       // slab height; default 4L
  std::vector<double> snap_levels;  // extra y-nodes inserted exactly
};

struct ExtensionField {
  Grid grid;            // boundary grid
  double sigma = 0.0;
  std::vector<double> ys;                 // ys[0] = 0 < ys[1] < ... <= Y
  std::vector<std::vector<double>> levels;  // levels[j] = W(., ys[j])

  double sup() const;
  const std::vector<double>& at_level(std::size_t j) const { return levels[j]; }
  // index of the node closest to y (exact when y was snapped)
  std::size_t level_index(double y) const;
};

ExtensionField extend(const Field& U, double sigma, ExtensionOptions opt = {});

// Conormal trace mu_sigma lim y^{1-sigma} dW/dy at y = 0+, oriented so that
// the trace of the extension of the Riesz potential reproduces the data.
// Discretely this is the boundary flux -mu_sigma sigma (W(.,y1) - W(.,0)) /
// y1^sigma, Richardson-extrapolated over the two smallest mesh levels with
// the boundary-layer exponent 2 - sigma.
Field conormal_trace(const ExtensionField& W);

// Weighted Dirichlet energy mu_sigma int y^{1-sigma} |grad W|^2 with exact
// flux energies in y and spectral x-derivatives.
double extension_energy(const ExtensionField& W);

struct UniquenessReport {
  bool hypothesis_met = false;  // candidate decays at the box edge
  double sup_diff = 0.0;        // || candidate - K*rho ||_inf
  double energy_diff = 0.0;     // weighted energy of extend(candidate - K*rho)
  double sup_diff_tol = 0.0;
  double energy_tol = 0.0;
  bool pass = false;
};

// Confronts a candidate solution of the linear problem with the convolution
// solution: zero difference in sup norm and zero extension energy force
// coincidence for decaying candidates.
UniquenessReport linear_uniqueness_check(const Field& candidate, const Field& rho, double sigma,
                                         double rel_tol = 1e-6);

}  // namespace fracsub
