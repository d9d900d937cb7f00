#include "bouncer/wigner.hpp"

#include <unsupported/Eigen/FFT>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bouncer/error.hpp"
#include "bouncer/quadrature.hpp"

namespace bouncer {
namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

Eigen::Index next_pow2(Eigen::Index n) {
  Eigen::Index k = 1;
  while (k < n) k <<= 1;
  return k;
}

}  // namespace

WignerGrid wigner_transform(const Eigen::Ref<const Eigen::VectorXcd>& psi,
                            const Eigen::Ref<const Eigen::VectorXd>& xs) {
  const Eigen::Index n = xs.size();
  if (n < 4 || psi.size() != n) throw InvalidInput("wigner_transform: need >= 4 matching samples");
  const double dx = xs(1) - xs(0);
  const Eigen::ArrayXd steps = xs.tail(n - 1).array() - xs.head(n - 1).array();
  if (!(dx > 0.0) || ((steps - dx).abs() > 1e-9 * dx).any()) {
    throw InvalidInput("wigner_transform: position grid must be uniform and increasing");
  }
  const double norm = psi.squaredNorm() * dx;
  if (std::fabs(norm - 1.0) > 1e-3) {
    throw InvalidInput("wigner_transform: state is not normalized on the grid (norm " +
                       std::to_string(norm) + ")");
  }
  const Eigen::Index tail = std::max<Eigen::Index>(1, n / 20);
  if (psi.tail(tail).squaredNorm() * dx > 1e-6) {
    throw InvalidInput("wigner_transform: grid truncates the state; enlarge x_max");
  }

  const Eigen::Index k_len = next_pow2(n);
  WignerGrid w;
  w.xs = xs;
  w.ps.resize(k_len);
  for (Eigen::Index l = 0; l < k_len; ++l) {
    w.ps(l) = static_cast<double>(l - k_len / 2) * kPi / (static_cast<double>(k_len) * dx);
  }
  w.values.resize(n, k_len);

  Eigen::FFT<double> fft;
  std::vector<Complex> lag(k_len), spectrum(k_len);
  for (Eigen::Index j = 0; j < n; ++j) {
    std::fill(lag.begin(), lag.end(), Complex(0.0, 0.0));
    const Eigen::Index kmax = std::min(j, n - 1 - j);
    lag[0] = std::norm(psi(j));
    for (Eigen::Index k = 1; k <= kmax; ++k) {
      const Complex g = std::conj(psi(j + k)) * psi(j - k);
      lag[k] = g;
      lag[k_len - k] = std::conj(g);
    }
    // forward transform gives sum_k g_k exp(-2 pi i l k / K) = W at p_{-l}
    fft.fwd(spectrum, lag);
    for (Eigen::Index l = 0; l < k_len; ++l) {
      const Eigen::Index index = l - k_len / 2;  // p = index * pi / (K dx)
      const Eigen::Index src = ((-index) % k_len + k_len) % k_len;
      w.values(j, l) = dx / kPi * spectrum[src].real();
    }
  }
  return w;
}

WignerGrid wigner_of_state(const EigenBasis& basis, const QuantumState& state, double dx,
                           double x_max) {
  if (!(dx > 0.0) || !(x_max > 4 * dx)) throw InvalidInput("wigner_of_state: bad grid");
  const Eigen::Index n = static_cast<Eigen::Index>(std::floor(x_max / dx + 1e-9)) + 1;
  const Eigen::VectorXd xs = Eigen::VectorXd::LinSpaced(n, 0.0, (n - 1) * dx);
  WignerGrid w = wigner_transform(wavefunction_on_grid(basis, state, xs), xs);
  w.t = state.t;
  return w;
}

Eigen::VectorXd momentum_density(const EigenBasis& basis, const QuantumState& state,
                                 const Eigen::Ref<const Eigen::VectorXd>& ps, double x_max) {
  const double p_max = ps.cwiseAbs().maxCoeff();
  // Panels resolve both the eigenfunction oscillations and exp(-i p x).
  const double panel = std::min(0.5, 2.0 / std::max(1.0, p_max));
  const GaussLegendreRule rule = composite_gauss_legendre(0.0, x_max, panel, 16);
  const Eigen::VectorXcd psi = wavefunction_on_grid(basis, state, rule.nodes);
  const Eigen::VectorXcd weighted = rule.weights.cast<Complex>().cwiseProduct(psi);
  Eigen::VectorXd out(ps.size());
  const double scale = 1.0 / (2.0 * kPi);
  for (Eigen::Index l = 0; l < ps.size(); ++l) {
    Complex acc(0.0, 0.0);
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      acc += weighted(i) * std::polar(1.0, -ps(l) * rule.nodes(i));
    }
    out(l) = scale * std::norm(acc);
  }
  return out;
}

WignerDiagnostics diagnose(const WignerGrid& w, const Eigen::Ref<const Eigen::VectorXcd>& psi,
                           const Eigen::VectorXd* momentum_reference) {
  const double dx = w.dx();
  const double dp = w.dp();
  WignerDiagnostics d;
  d.total = w.values.sum() * dx * dp;
  d.purity = 2.0 * kPi * w.values.squaredNorm() * dx * dp;
  d.min_value = w.values.minCoeff();
  d.max_abs = w.values.cwiseAbs().maxCoeff();
  const Eigen::VectorXd pos_marginal = w.values.rowwise().sum() * dp;
  d.position_marginal_error = (pos_marginal - psi.cwiseAbs2()).cwiseAbs().maxCoeff();
  if (momentum_reference != nullptr) {
    const Eigen::VectorXd mom_marginal = w.values.colwise().sum().transpose() * dx;
    d.momentum_marginal_error = (mom_marginal - *momentum_reference).cwiseAbs().maxCoeff();
  }
  return d;
}

double shell_concentration(const WignerGrid& w, double energy, double band) {
  double inside = 0.0;
  double total = 0.0;
  for (Eigen::Index j = 0; j < w.xs.size(); ++j) {
    for (Eigen::Index l = 0; l < w.ps.size(); ++l) {
      const double a = std::fabs(w.values(j, l));
      const double h = 0.5 * w.ps(l) * w.ps(l) + 0.5 * w.xs(j);
      total += a;
      if (std::fabs(h - energy) <= band * energy) inside += a;
    }
  }
  return total > 0.0 ? inside / total : 0.0;
}

ClassicalOrbit classical_overlay(double energy, int n_samples) {
  if (!(energy > 0.0)) throw InvalidInput("classical_overlay: energy must be > 0");
  if (n_samples < 2) throw InvalidInput("classical_overlay: need at least two samples");
  ClassicalOrbit orbit;
  orbit.energy = energy;
  orbit.xs = Eigen::VectorXd::LinSpaced(n_samples, 0.0, 2.0 * energy);
  orbit.p_upper = (2.0 * energy - orbit.xs.array()).max(0.0).sqrt().matrix();
  return orbit;
}

}  // namespace bouncer
