#include "bouncer/eigenbasis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "bouncer/error.hpp"
#include "bouncer/format.hpp"
#include "bouncer/quadrature.hpp"

namespace bouncer {
namespace {

constexpr double kTailLength = 16.0;  // Ai(16)^2 ~ 1e-37

void check_level(const EigenBasis& basis, int level) {
  if (level < 1 || level > basis.n_levels) {
    throw InvalidInput("level " + std::to_string(level) + " outside 1.." +
                       std::to_string(basis.n_levels));
  }
}

Eigen::MatrixXd dipole_on_rule(const EigenBasis& basis, const GaussLegendreRule& rule) {
  const Eigen::MatrixXd psi = eigenfunctions_on(basis, rule.nodes);
  const Eigen::VectorXd wx = rule.weights.cwiseProduct(rule.nodes);
  Eigen::MatrixXd x = psi.transpose() * wx.asDiagonal() * psi;
  return 0.5 * (x + x.transpose());
}

}  // namespace

EigenBasis build_basis(int n_levels) {
  if (n_levels < 1 || n_levels > kMaxLevels) {
    throw InvalidInput("build_basis: n_levels must be in 1..200, got " +
                       std::to_string(n_levels));
  }
  EigenBasis basis;
  basis.n_levels = n_levels;
  basis.zeros.resize(n_levels);
  basis.norm_derivs.resize(n_levels);
  for (int n = 1; n <= n_levels; ++n) {
    const double z = airy_zero(n);
    if (n > 1 && !(z < basis.zeros(n - 2))) {
      throw InternalError("build_basis: zeros out of order at index " + std::to_string(n));
    }
    basis.zeros(n - 1) = z;
    basis.norm_derivs(n - 1) = airy_eval(z).ai_prime;
  }
  basis.energies = -0.5 * basis.zeros;
  basis.dipole = dipole_matrix(basis);
  return basis;
}

double eigenfunction(const EigenBasis& basis, int level, double x) {
  check_level(basis, level);
  if (!(x >= 0.0)) throw DomainError("eigenfunction: x must be >= 0, got " + std::to_string(x));
  const double arg = x + basis.zeros(level - 1);
  if (arg > kAiryMaxArgument) return 0.0;
  return airy_eval(arg).ai / std::fabs(basis.norm_derivs(level - 1));
}

Eigen::MatrixXd eigenfunctions_on(const EigenBasis& basis,
                                  const Eigen::Ref<const Eigen::VectorXd>& xs) {
  Eigen::MatrixXd out(xs.size(), basis.n_levels);
  for (int n = 1; n <= basis.n_levels; ++n) {
    for (Eigen::Index i = 0; i < xs.size(); ++i) {
      out(i, n - 1) = eigenfunction(basis, n, xs(i));
    }
  }
  return out;
}

double dipole_closed_form(const EigenBasis& basis, int m, int n) {
  check_level(basis, m);
  check_level(basis, n);
  if (m == n) return 2.0 / 3.0 * std::fabs(basis.zeros(n - 1));
  const double d = basis.zeros(m - 1) - basis.zeros(n - 1);
  const double sign = ((m + n) % 2 == 0) ? -1.0 : 1.0;
  return sign * 2.0 / (d * d);
}

Eigen::MatrixXd dipole_matrix(const EigenBasis& basis) {
  const double upper = std::fabs(basis.zeros(basis.n_levels - 1)) + kTailLength;
  double panel = 1.0;
  Eigen::MatrixXd coarse = dipole_on_rule(basis, composite_gauss_legendre(0.0, upper, panel));
  Eigen::MatrixXd fine;
  for (int refinement = 0;; ++refinement) {
    panel *= 0.5;
    fine = dipole_on_rule(basis, composite_gauss_legendre(0.0, upper, panel));
    Eigen::Index im = 0, in = 0;
    const double change = (fine - coarse).cwiseAbs().maxCoeff(&im, &in);
    if (change < 1e-12 * std::max(1.0, fine.cwiseAbs().maxCoeff())) break;
    if (refinement == 6) {
      throw InternalError("dipole_matrix: quadrature did not converge for element (" +
                          std::to_string(im + 1) + ", " + std::to_string(in + 1) + ")");
    }
    coarse = fine;
  }
  for (int m = 1; m <= basis.n_levels; ++m) {
    for (int n = 1; n <= basis.n_levels; ++n) {
      const double expected = dipole_closed_form(basis, m, n);
      if (std::fabs(fine(m - 1, n - 1) - expected) > 1e-8 * std::max(1.0, std::fabs(expected))) {
        throw InternalError("dipole_matrix: element (" + std::to_string(m) + ", " +
                            std::to_string(n) + ") disagrees with closed form");
      }
    }
  }
  return fine;
}

void write_basis_csv(std::ostream& out, const EigenBasis& basis) {
  out << "level,lambda,energy,ai_prime";
  for (int n = 1; n <= basis.n_levels; ++n) out << ",x_" << n;
  out << '\n';
  for (int m = 1; m <= basis.n_levels; ++m) {
    out << m << ',' << fmt_double(basis.zeros(m - 1)) << ',' << fmt_double(basis.energies(m - 1))
        << ',' << fmt_double(basis.norm_derivs(m - 1));
    for (int n = 1; n <= basis.n_levels; ++n) out << ',' << fmt_double(basis.dipole(m - 1, n - 1));
    out << '\n';
  }
}

}  // namespace bouncer
