#pragma once

#include <Eigen/Dense>
#include <iosfwd>

#include "bouncer/airy.hpp"

namespace bouncer {

inline constexpr int kMaxLevels = 200;

/// Eigenstructure of the scaled quantum bouncer H0 = p^2/2 + x/2 on x >= 0 with
/// psi(0) = 0:
///   psi_n(x) = Ai(x + lambda_n) / |Ai'(lambda_n)|,   E_n = |lambda_n| / 2.
///
/// Levels are numbered n = 1..N in the public API; Eigen containers are indexed
/// by n - 1.
struct EigenBasis {
  int n_levels = 0;
  Eigen::VectorXd zeros;        // lambda_n, negative, strictly decreasing
  Eigen::VectorXd energies;     // E_n, scaled
  Eigen::VectorXd norm_derivs;  // Ai'(lambda_n), signed
  Eigen::MatrixXd dipole;       // X(m, n) = <m|x|n>, scaled length
};

/// Zeros, energies and the quadrature dipole matrix for levels 1..n_levels.
/// Requires 1 <= n_levels <= 200.
EigenBasis build_basis(int n_levels);

/// psi_n(x) for 1 <= level <= N and x >= 0. Throws DomainError for x < 0.
/// Beyond the supported Airy range the eigenfunction is numerically zero.
double eigenfunction(const EigenBasis& basis, int level, double x);

/// Matrix of eigenfunctions sampled on the given positions: rows follow xs,
/// columns follow levels.
Eigen::MatrixXd eigenfunctions_on(const EigenBasis& basis, const Eigen::Ref<const Eigen::VectorXd>& xs);

/// <m|x|n> by composite Gauss-Legendre quadrature on [0, |lambda_N| + 16],
/// refined by panel halving until two successive estimates agree to 1e-12.
/// The result is cross-checked against the closed forms
///   X(n, n) = (2/3)|lambda_n|,   |X(m, n)| = 2 / (lambda_m - lambda_n)^2
/// to 1e-8. Throws InternalError naming (m, n) if either test fails.
Eigen::MatrixXd dipole_matrix(const EigenBasis& basis);

/// Closed-form dipole element for the sign convention of psi_n above.
double dipole_closed_form(const EigenBasis& basis, int m, int n);

/// CSV dump: level, lambda, energy, ai_prime, then one column per dipole row.
void write_basis_csv(std::ostream& out, const EigenBasis& basis);

}  // namespace bouncer
