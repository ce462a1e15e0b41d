#pragma once

#include <optional>
#include <vector>

#include "pxchain/sparse.hpp"
#include "pxchain/tb_subspace.hpp"
#include "pxchain/types.hpp"

namespace pxchain {
namespace dyn {

struct KrylovError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Which pattern list the leaked-weight observable is measured against.
enum class LeakageSpan { ring, open_chain, none };

struct EvolveConfig {
  double t_max = 10.0;
  double dt_record = 0.1;
  double tolerance = 1e-8;  // local propagation error per recorded step, in (0, 1e-4]
  int max_krylov = 30;

  LeakageSpan leakage_span = LeakageSpan::ring;
  int blockade_alpha = 1;          // ring patterns for the blockade family
  bool record_entropy = true;      // half-cut von Neumann entropy
  bool record_energy = false;      // <H> per record point (one extra matvec)
  bool record_density = true;
  bool dump_states = false;

  double max_memory_gb = 8.0;      // resource guard
  double max_minutes = 30.0;

  void validate() const;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<double> fidelity;   // |<psi0|psi(t)>|
  std::vector<double> leakage;    // weight outside the chosen span
  std::vector<double> entropy;    // empty if not recorded
  std::vector<double> energy;     // empty if not recorded
  std::vector<double> norm;
  std::vector<double> com;        // center of mass of the zero density, NaN if undefined
  std::vector<std::vector<double>> zero_density;  // per record point, length L
  std::vector<StateVector> states;                // only with dump_states
  int L = 0;
};

/// Unitary evolution psi(t) = exp(-i H t) psi0 by adaptive short-step
/// Lanczos, recording observables every dt_record. H must be Hermitian and
/// psi0 normalized.
Trajectory evolve(const LinearOperator& h, const StateVector& psi0, const EvolveConfig& cfg);

/// Single-shot propagation to time t, no recording.
StateVector krylov_propagate(const LinearOperator& h, const StateVector& psi0, double t,
                             double tolerance = 1e-10, int max_krylov = 40);

/// <P_i> for every site, values in [0, 1].
std::vector<double> site_zero_density(const StateVector& psi);

/// Mean position of a nonnegative profile in site units (1-based). Periodic
/// chains use the circular mean so the result is wrap-safe.
double center_of_mass(const std::vector<double>& profile, int L, bool periodic);

/// Unwrap a circular position series into a continuous one.
std::vector<double> unwrap_positions(const std::vector<double>& com, int L);

/// Least-squares slope of y(t) over the window [t0, t1].
double linear_drift_rate(const std::vector<double>& t, const std::vector<double>& y, double t0,
                         double t1);

struct RevivalPeak {
  double t = 0.0;
  double value = 0.0;
};
struct RevivalReport {
  std::vector<RevivalPeak> peaks;
  bool plateau = false;
  double baseline = 0.0;  // first-minimum reference
};

/// Local maxima of a fidelity series above the first-minimum baseline, with
/// parabolic refinement of the peak positions.
RevivalReport detect_revivals(const std::vector<double>& t, const std::vector<double>& f);

/// Oscillation period from the autocorrelation of y(t); returns the lags of
/// the first few autocorrelation maxima.
std::vector<double> autocorrelation_peak_lags(const std::vector<double>& t,
                                              const std::vector<double>& y, int max_peaks = 3);

}  // namespace dyn
}  // namespace pxchain
