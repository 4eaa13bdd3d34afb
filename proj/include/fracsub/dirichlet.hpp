#pragma once

#include "fracsub/field.hpp"

namespace fracsub {

// Fractional power of the Dirichlet Laplacian on the box (-R,R)^N through its
// sine eigenbasis: modes xi_k(x) = prod_d sin(k_d pi (x_d + R) / (2R)) with
// eigenvalues lambda_k = sum_d (k_d pi / (2R))^2. The box must align with the
// ambient grid (R a multiple of h); fields live on the ambient grid and are
// zero outside the box.
class DirichletOperator {
 public:
  DirichletOperator(const Grid& ambient, double R, double sigma);

  // inverse: U = sum_k lambda_k^{-sigma/2} <rhs, xi_k> xi_k
  Field solve(const Field& rhs) const;
  // forward: sum_k lambda_k^{+sigma/2} <u, xi_k> xi_k
  Field apply(const Field& u) const;

  // <a, b> h^N over the interior of the box.
  double box_inner(const Field& a, const Field& b) const;
  // || (-Lap_D)^{sigma/4} u ||_{L2(box)} via the eigenexpansion.
  double box_seminorm(const Field& u) const;

  double R() const { return R_; }
  int interior_points() const { return m_; }
  double lambda_max() const { return lambda_max_; }
  const Grid& ambient() const { return ambient_; }

  // True on grid points strictly inside the box.
  bool inside(std::int64_t flat_index) const;

 private:
  Field transform(const Field& in, double power) const;

  Grid ambient_;
  double R_;
  double sigma_;
  int i0_ = 0;  // first interior index per axis
  int m_ = 0;   // interior points per axis
  double lambda_max_ = 0.0;
  std::vector<double> lam_pow_fwd_;  // lambda^{+s/2} on the interior lattice
  std::vector<double> lam_pow_inv_;
};

Field dirichlet_solve(const Field& rho, double R, double sigma);
Field dirichlet_apply(const Field& u, double R, double sigma);

}  // namespace fracsub
