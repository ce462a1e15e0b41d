#include "pxchain/leakage.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pxchain {
namespace leak {

namespace {
constexpr double pi = std::numbers::pi;
}

cplx f_kernel(double E, double g, double tau, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("f_kernel: sign must be +-1");
  const double x = E + sign * g;
  const cplx phase = std::polar(1.0, -x * tau / 2.0);
  double sinc;  // sin(x tau/2)/x, finite at x = 0
  if (std::abs(x * tau) < 1e-8) {
    const double u = x * tau / 2.0;
    sinc = (tau / 2.0) * (1.0 - u * u / 6.0);
  } else {
    sinc = std::sin(x * tau / 2.0) / x;
  }
  return cplx{0.0, 2.0} * phase * sinc;
}

double lambda_tau(const std::vector<cplx>& psi0_k, int L, double g, double tau) {
  if (static_cast<int>(psi0_k.size()) != 2 * L)
    throw std::invalid_argument("lambda_tau: need 2L momentum amplitudes");
  double norm2 = 0.0;
  for (const auto& a : psi0_k) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > 1e-8)
    throw std::invalid_argument("lambda_tau: momentum amplitudes not normalized");

  // Channels are the L unordered momentum pairs {k, k + pi}. Representatives
  // n = 1..L-1 pair with n - L; the {0, -pi} pair completes the set.
  auto amp = [&](int n) {  // n in -L..L-1
    return psi0_k[static_cast<std::size_t>(n + L)];
  };
  double lambda = 0.0;
  for (int n = 0; n <= L - 1; ++n) {
    if (2 * n == L) continue;  // cos^2(pi/2) = 0: the protected channel drops out exactly
    const double k = pi * n / L;
    const double c2 = std::cos(k) * std::cos(k);
    const double e0 = 2.0 * std::cos(k);
    const double e1 = 2.0 * std::cos(k - pi);  // partner momentum k - pi == k + pi (mod 2 pi)
    const cplx a0 = amp(n);
    const cplx a1 = amp(n - L);
    for (int s : {+1, -1}) {
      const cplx z = a0 * f_kernel(e0, g, tau, s) + a1 * f_kernel(e1, g, tau, s);
      lambda += c2 * std::norm(z);
    }
  }
  return lambda;
}

std::vector<cplx> momentum_amplitudes(const tb::TBRing& ring, const StateVector& psi) {
  const int L = ring.L;
  auto w = tb::tb_projector_weights(ring, psi);
  std::vector<cplx> out(static_cast<std::size_t>(2 * L));
  const double norm = 1.0 / std::sqrt(2.0 * L);
  for (int n = -L; n <= L - 1; ++n) {
    const double k = pi * n / L;
    cplx acc{0.0, 0.0};
    for (int r = 1; r <= 2 * L; ++r)
      acc += std::polar(norm, -k * r) * w.coeff[static_cast<std::size_t>(r - 1)];
    out[static_cast<std::size_t>(n + L)] = acc;
  }
  return out;
}

LeakagePrediction p_predict(const StateVector& psi0, double g, const std::vector<double>& tau_grid) {
  tb::TBRing ring(psi0.L);
  auto w = tb::tb_projector_weights(ring, psi0);
  if (w.leaked > 1e-10)
    throw std::invalid_argument("p_predict: initial state has weight outside the hopping subspace");
  LeakagePrediction pred;
  pred.L = psi0.L;
  pred.g = g;
  pred.tau = tau_grid;
  pred.psi0_k = momentum_amplitudes(ring, psi0);
  // normalize the grid amplitudes exactly (guards 1e-10 of tolerated leak)
  double n2 = 0.0;
  for (const auto& a : pred.psi0_k) n2 += std::norm(a);
  const double s = 1.0 / std::sqrt(n2);
  for (auto& a : pred.psi0_k) a *= s;
  pred.lambda.reserve(tau_grid.size());
  pred.p.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    const double lam = lambda_tau(pred.psi0_k, pred.L, g, tau);
    pred.lambda.push_back(lam);
    pred.p.push_back(lam / (1.0 + lam));
  }
  return pred;
}

double revival_frequency(double k, double q) { return 4.0 * std::abs(std::sin(k) * std::sin(q)); }

}  // namespace leak
}  // namespace pxchain
