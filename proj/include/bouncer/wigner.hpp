#pragma once

#include <Eigen/Dense>

#include "bouncer/eigenbasis.hpp"
#include "bouncer/qdyn.hpp"

namespace bouncer {

/// W(x, p) on a uniform position grid and its transform-conjugate momentum grid.
/// Rows follow xs, columns follow ps.
struct WignerGrid {
  Eigen::VectorXd xs;
  Eigen::VectorXd ps;
  Eigen::MatrixXd values;
  double t = 0.0;
  double omega_d = 0.0;

  double dx() const { return xs(1) - xs(0); }
  double dp() const { return ps(1) - ps(0); }
};

/// W(x, p) = (1/pi) int psi*(x + y) psi(x - y) exp(2 i p y) dy with psi taken as
/// zero outside the sampled interval, which realizes the hard wall when
/// xs(0) == 0. Lags are multiples of dx, so for K = fft length (the smallest power
/// of two >= xs.size()) the momentum grid is p_l = l pi / (K dx),
/// l = -K/2 .. K/2 - 1, covering one full period pi/dx. Each row is assembled
/// from conjugate-symmetric lag products and is therefore real.
///
/// Throws InvalidInput if xs is not uniform, if the discrete norm of psi differs
/// from 1 by more than 1e-3, or if more than 1e-6 of it sits in the last 5% of
/// the interval (the grid then truncates the state).
WignerGrid wigner_transform(const Eigen::Ref<const Eigen::VectorXcd>& psi,
                            const Eigen::Ref<const Eigen::VectorXd>& xs);

/// Wigner function of a spectral state sampled on [0, x_max] with spacing dx.
WignerGrid wigner_of_state(const EigenBasis& basis, const QuantumState& state, double dx,
                           double x_max);

/// |psi~(p)|^2 with psi~(p) = (2 pi)^{-1/2} int_0^inf psi(x) exp(-i p x) dx, by
/// composite Gauss-Legendre quadrature of the continuous spectral wavefunction.
/// Independent of the sampled grid used by wigner_transform.
Eigen::VectorXd momentum_density(const EigenBasis& basis, const QuantumState& state,
                                 const Eigen::Ref<const Eigen::VectorXd>& ps, double x_max);

struct WignerDiagnostics {
  double total = 0.0;          // double integral of W
  double purity = 0.0;         // 2 pi double integral of W^2
  double min_value = 0.0;
  double max_abs = 0.0;
  double position_marginal_error = 0.0;  // max |int W dp - |psi|^2|
  double momentum_marginal_error = 0.0;  // max |int W dx - |psi~|^2|, if a reference is given
};

WignerDiagnostics diagnose(const WignerGrid& w, const Eigen::Ref<const Eigen::VectorXcd>& psi,
                           const Eigen::VectorXd* momentum_reference = nullptr);

/// Fraction of int |W| dx dp lying where |H(x, p) - energy| <= band * energy,
/// H = p^2/2 + x/2.
double shell_concentration(const WignerGrid& w, double energy, double band);

/// Classical orbit p = +-sqrt(2H - x) on x in [0, 2H], n_samples points.
struct ClassicalOrbit {
  double energy = 0.0;
  Eigen::VectorXd xs;
  Eigen::VectorXd p_upper;  // the lower branch is -p_upper
};
ClassicalOrbit classical_overlay(double energy, int n_samples = 201);

}  // namespace bouncer
