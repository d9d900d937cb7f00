#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bouncer/drive.hpp"
#include "bouncer/eigenbasis.hpp"
#include "bouncer/qdyn.hpp"

namespace bouncer {

/// Uniform grid x_j = j dx, j = 0..n_points+1, with Dirichlet walls at x = 0 and
/// x = x_max; only the n_points interior values are stored.
struct GridSpec {
  double x_max = 80.0;
  int n_points = 4096;
  double dt = 1e-3;

  double dx() const { return x_max / (n_points + 1); }
  Eigen::VectorXd positions() const;  // interior points
  void validate() const;
};

struct GridState {
  double t = 0.0;
  Eigen::VectorXcd psi;  // interior values

  double norm(double dx) const { return psi.squaredNorm() * dx; }
};

/// Samples psi_level on the grid and renormalizes it there. Throws InvalidInput
/// when the classical turning point |lambda_level| is not below x_max / 2.
GridState init_from_level(const EigenBasis& basis, int level, const GridSpec& spec);

struct GridResult {
  std::vector<ObservableRecord> records;  // occupations are projections on the basis
  GridState final_state;
  double max_norm_drift = 0.0;
  double max_tail_fraction = 0.0;  // largest share of |psi|^2 in the last 10% of the grid
};

/// Crank-Nicolson propagation of i psi_t = [-1/2 d_xx + x/2 - f(t) x] psi with
/// the second-order three-point Laplacian; f is evaluated at the half step. The
/// scheme is a Cayley transform and preserves the discrete norm to roundoff.
/// Every sample_every steps (and at t_end) the state is projected onto the
/// basis eigenfunctions. Throws InternalError if a tridiagonal pivot vanishes.
GridResult propagate_grid(const GridState& state, const DriveProgram& program,
                          const GridSpec& spec, double t_end, const EigenBasis& basis,
                          int sample_every = 100);

/// |<psi_n|psi>|^2 for every basis level, by the grid inner product.
Eigen::VectorXd grid_projections(const Eigen::MatrixXd& eigenfunctions, const GridState& state,
                                 double dx);

}  // namespace bouncer
