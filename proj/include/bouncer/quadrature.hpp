#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "bouncer/error.hpp"

namespace bouncer {

/// Gauss-Legendre rule on [-1, 1], computed by the Golub-Welsch eigenvalue method.
struct GaussLegendreRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

GaussLegendreRule gauss_legendre(int order);

/// Composite Gauss-Legendre nodes/weights covering [lo, hi] with panels of
/// width <= panel_width.
GaussLegendreRule composite_gauss_legendre(double lo, double hi, double panel_width,
                                           int order = 16);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

namespace detail {

// Kronrod 15 / Gauss 7 abscissae and weights on [-1, 1].
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
std::pair<double, double> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kronrod += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {kronrod * h, std::fabs((kronrod - gauss) * h)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) quadrature with recursive bisection.
/// Converges when the summed error estimate is below max(abs_tol, rel_tol |I|).
/// Throws InternalError when the interval budget is exhausted.
template <typename F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, double abs_tol = 1e-13,
                                    double rel_tol = 1e-12, int max_intervals = 20000) {
  struct Piece {
    double a, b, value, error;
  };
  std::vector<Piece> pieces;
  auto [v0, e0] = detail::gk15(f, a, b);
  pieces.push_back({a, b, v0, e0});
  double total = v0;
  double err = e0;
  while (err > std::max(abs_tol, rel_tol * std::fabs(total))) {
    if (static_cast<int>(pieces.size()) >= max_intervals) {
      throw InternalError("integrate_adaptive: no convergence on [" + std::to_string(a) +
                          ", " + std::to_string(b) + "], error estimate " +
                          std::to_string(err));
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      if (pieces[i].error > pieces[worst].error) worst = i;
    }
    const Piece p = pieces[worst];
    const double mid = 0.5 * (p.a + p.b);
    auto [vl, el] = detail::gk15(f, p.a, mid);
    auto [vr, er] = detail::gk15(f, mid, p.b);
    pieces[worst] = {p.a, mid, vl, el};
    pieces.push_back({mid, p.b, vr, er});
    total = 0.0;
    err = 0.0;
    for (const auto& q : pieces) {
      total += q.value;
      err += q.error;
    }
  }
  return {total, err};
}

}  // namespace bouncer
