#pragma once

#include <vector>

#include "pxchain/tb_subspace.hpp"
#include "pxchain/types.hpp"

namespace pxchain {
namespace leak {

/// First-order prediction of the weight leaked out of the hopping subspace.
struct LeakagePrediction {
  std::vector<double> tau;     // time grid
  std::vector<double> p;       // predicted leaked weight, p = Lambda/(1+Lambda)
  std::vector<double> lambda;  // Lambda(tau)
  std::vector<cplx> psi0_k;    // momentum amplitudes, n = -L..L-1
  double g = 0.0;
  int L = 0;
};

/// Closed-form channel kernel
///   F_s(E, g; tau) = 2i e^{-i(E+s g) tau/2} sin((E+s g) tau/2) / (E+s g),
/// continuous at E+s g = 0 where it takes the value i tau.
cplx f_kernel(double E, double g, double tau, int sign);

/// Interference sum over (k_n > 0, s = +-) channels with the k_n, k_n+pi
/// pairing; psi0_k holds the 2L momentum amplitudes ordered n = -L..L-1 and
/// must be normalized. Lambda >= 0 and vanishes when only k = +-pi/2 is
/// occupied.
double lambda_tau(const std::vector<cplx>& psi0_k, int L, double g, double tau);

/// Momentum amplitudes <k_n|psi> of a full-space state, ordered n = -L..L-1.
std::vector<cplx> momentum_amplitudes(const tb::TBRing& ring, const StateVector& psi);

/// Leakage prediction for an initial state inside the hopping subspace
/// (leaked weight below 1e-10 required).
LeakagePrediction p_predict(const StateVector& psi0, double g, const std::vector<double>& tau_grid);

/// Revival frequency of the two-momentum superposition: 4 |sin k sin q|.
double revival_frequency(double k, double q);

}  // namespace leak
}  // namespace pxchain
