#include "bouncer/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <vector>

namespace bouncer {

GaussLegendreRule gauss_legendre(int order) {
  if (order < 1) throw InvalidInput("gauss_legendre: order must be >= 1");
  // Jacobi matrix of the Legendre recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussLegendreRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
  // Symmetrize against eigen-solver roundoff.
  for (int i = 0; i < order / 2; ++i) {
    const int j = order - 1 - i;
    const double x = 0.5 * (rule.nodes(j) - rule.nodes(i));
    const double w = 0.5 * (rule.weights(i) + rule.weights(j));
    rule.nodes(i) = -x;
    rule.nodes(j) = x;
    rule.weights(i) = w;
    rule.weights(j) = w;
  }
  if (order % 2 == 1) rule.nodes(order / 2) = 0.0;
  return rule;
}

GaussLegendreRule composite_gauss_legendre(double lo, double hi, double panel_width, int order) {
  if (!(hi > lo) || !(panel_width > 0.0)) {
    throw InvalidInput("composite_gauss_legendre: need hi > lo and panel_width > 0");
  }
  const GaussLegendreRule base = gauss_legendre(order);
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel_width)));
  const double h = (hi - lo) / panels;
  GaussLegendreRule out;
  out.nodes.resize(static_cast<Eigen::Index>(panels) * order);
  out.weights.resize(out.nodes.size());
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * h;
    out.nodes.segment(p * order, order) = (c + 0.5 * h * base.nodes.array()).matrix();
    out.weights.segment(p * order, order) = 0.5 * h * base.weights;
  }
  return out;
}

}  // namespace bouncer
