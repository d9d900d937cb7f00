#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "bouncer/drive.hpp"
#include "bouncer/eigenbasis.hpp"

namespace bouncer {

/// Pure state psi = sum_n c_n psi_n at scaled time t.
struct QuantumState {
  double t = 0.0;
  Eigen::VectorXcd coeffs;
};

/// Pure eigenstate |level> at t = 0.
QuantumState eigenstate(const EigenBasis& basis, int level);

struct ObservableRecord {
  double t = 0.0;
  double omega_d = 0.0;
  Eigen::VectorXd occupations;  // P_n = |c_n|^2
  double mean_n = 0.0;          // <n>
  double width_n = 0.0;         // standard deviation of n
  double mean_energy = 0.0;     // sum_n E_n P_n, scaled
  double norm = 0.0;            // sum_n P_n
};

/// Level statistics of an occupation vector (index i holds level i + 1).
template <typename Derived>
ObservableRecord level_statistics(const Eigen::MatrixBase<Derived>& occupations,
                                  const Eigen::VectorXd& energies) {
  ObservableRecord r;
  r.occupations = occupations;
  const Eigen::Index n = occupations.size();
  const Eigen::ArrayXd levels = Eigen::ArrayXd::LinSpaced(n, 1.0, static_cast<double>(n));
  const Eigen::ArrayXd p = r.occupations.array();
  r.norm = p.sum();
  r.mean_n = (levels * p).sum();
  const double second = (levels.square() * p).sum();
  r.width_n = std::sqrt(std::max(0.0, second - r.mean_n * r.mean_n));
  r.mean_energy = (energies.head(n).array() * p).sum();
  return r;
}

ObservableRecord observables(const EigenBasis& basis, const QuantumState& state, double omega_d);

/// psi(x) = sum_n c_n psi_n(x) at the given positions (all >= 0).
Eigen::VectorXcd wavefunction_on_grid(const EigenBasis& basis, const QuantumState& state,
                                      const Eigen::Ref<const Eigen::VectorXd>& xs);

struct PropagationOptions {
  double dt = 1e-3;
  int sample_every = 100;
  std::vector<double> snapshot_times;  // states are captured at the nearest step
  double abort_norm_drift = 1e-4;
  double truncation_guard = 1e-3;      // abort when P_N exceeds this
};

struct PropagationResult {
  std::vector<ObservableRecord> records;
  QuantumState final_state;
  std::vector<QuantumState> snapshots;
  double max_norm_drift = 0.0;
  long steps = 0;
};

/// Raised when propagation cannot continue; carries everything computed so far.
class SolverAbort : public std::runtime_error {
 public:
  SolverAbort(const std::string& what, PropagationResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const PropagationResult& partial() const { return partial_; }

 private:
  PropagationResult partial_;
};

/// Integrates i dc_n/dt = E_n c_n - eps omega_d^2 cos(phi_d) sum_m X_nm c_m from
/// initial.t to program.t_final with the classical fourth-order Runge-Kutta
/// method. The norm is never renormalized; its drift is monitored instead.
///
/// Stability guidance: dt * E_N should stay well below 1; dt = 1e-3 is ample for
/// N = 40. Throws InvalidInput for bad options or a non-normalized initial state
/// and SolverAbort on norm drift > abort_norm_drift, non-finite coefficients or
/// P_N > truncation_guard.
PropagationResult propagate(const EigenBasis& basis, const DriveProgram& program,
                            const QuantumState& initial, const PropagationOptions& options);

}  // namespace bouncer
