#include "pxchain/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "pxchain/entropy.hpp"

namespace pxchain {
namespace dyn {

namespace {
constexpr double pi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

struct LanczosBasis {
  std::vector<std::vector<cplx>> v;  // orthonormal vectors
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples v[j] and v[j+1]; beta.back() is the residual
  bool happy = false;
};

// Standard three-term Lanczos without reorthogonalization; adequate for the
// short steps used here and validated against the dense oracle in tests.
LanczosBasis lanczos(const LinearOperator& h, const std::vector<cplx>& start, int m) {
  const std::size_t n = start.size();
  LanczosBasis b;
  b.v.push_back(start);  // caller passes a unit vector
  std::vector<cplx> w(n);
  for (int j = 0; j < m; ++j) {
    h.apply_to(b.v[static_cast<std::size_t>(j)], w);
    if (j > 0) {
      const double bj = b.beta[static_cast<std::size_t>(j - 1)];
      const auto& prev = b.v[static_cast<std::size_t>(j - 1)];
      for (std::size_t i = 0; i < n; ++i) w[i] -= bj * prev[i];
    }
    cplx a{0.0, 0.0};
    const auto& cur = b.v[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < n; ++i) a += std::conj(cur[i]) * w[i];
    const double aj = a.real();
    b.alpha.push_back(aj);
    double n2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] -= aj * cur[i];
      n2 += std::norm(w[i]);
    }
    const double bj = std::sqrt(n2);
    b.beta.push_back(bj);
    double scale = 1.0;
    for (double x : b.alpha) scale = std::max(scale, std::abs(x));
    for (double x : b.beta) scale = std::max(scale, x);
    if (bj < 1e-13 * scale) {
      b.happy = true;
      return b;
    }
    if (j + 1 < m) {
      std::vector<cplx> next(n);
      const double inv = 1.0 / bj;
      for (std::size_t i = 0; i < n; ++i) next[i] = w[i] * inv;
      b.v.push_back(std::move(next));
    }
  }
  return b;
}

struct TridiagExp {
  Eigen::MatrixXd u;
  Eigen::VectorXd lambda;

  explicit TridiagExp(const LanczosBasis& b) {
    const int m = static_cast<int>(b.alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      t(j, j) = b.alpha[static_cast<std::size_t>(j)];
      if (j + 1 < m) t(j, j + 1) = t(j + 1, j) = b.beta[static_cast<std::size_t>(j)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    u = es.eigenvectors();
    lambda = es.eigenvalues();
  }

  // exp(-i T dt) e_1
  Eigen::VectorXcd propagate_e1(double dt) const {
    Eigen::VectorXcd phases(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) phases[i] = std::polar(1.0, -lambda[i] * dt);
    return u * (phases.array() * u.row(0).transpose().array().cast<cplx>()).matrix();
  }
};

double profile_sum(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p) s += x;
  return s;
}

}  // namespace

void EvolveConfig::validate() const {
  if (!(tolerance > 0.0) || tolerance > 1e-4)
    throw std::invalid_argument("EvolveConfig: tolerance must lie in (0, 1e-4]");
  if (!(dt_record > 0.0)) throw std::invalid_argument("EvolveConfig: dt_record must be positive");
  if (t_max < 0.0) throw std::invalid_argument("EvolveConfig: t_max must be nonnegative");
  if (max_krylov < 2) throw std::invalid_argument("EvolveConfig: max_krylov >= 2 required");
}

StateVector krylov_propagate(const LinearOperator& h, const StateVector& psi0, double t,
                             double tolerance, int max_krylov) {
  EvolveConfig cfg;
  cfg.t_max = std::abs(t);
  cfg.dt_record = std::abs(t) > 0 ? std::abs(t) : 1.0;
  cfg.tolerance = tolerance;
  cfg.max_krylov = max_krylov;
  cfg.leakage_span = LeakageSpan::none;
  cfg.record_entropy = false;
  cfg.record_density = false;
  cfg.dump_states = true;
  if (t < 0) throw std::invalid_argument("krylov_propagate: t >= 0 required");
  Trajectory tr = evolve(h, psi0, cfg);
  return tr.states.back();
}

Trajectory evolve(const LinearOperator& h, const StateVector& psi0, const EvolveConfig& cfg) {
  cfg.validate();
  if (h.dim() != psi0.dim()) throw std::invalid_argument("evolve: dimension mismatch");
  if (std::abs(psi0.norm() - 1.0) > 1e-8) throw std::invalid_argument("evolve: psi0 not normalized");
  const std::size_t n = psi0.dim();
  const int L = psi0.L;

  const double est_gb = static_cast<double>(n) * 16.0 * (cfg.max_krylov + 5) / (1024.0 * 1024.0 * 1024.0);
  if (est_gb > cfg.max_memory_gb)
    throw ResourceGuardError("evolve: estimated memory " + std::to_string(est_gb) +
                             " GB exceeds the guard");
  const auto t_start = Clock::now();
  auto check_wallclock = [&] {
    const double mins = std::chrono::duration<double>(Clock::now() - t_start).count() / 60.0;
    if (mins > cfg.max_minutes) throw ResourceGuardError("evolve: wall clock guard exceeded");
  };

  std::vector<FockState> span_patterns;
  if (cfg.leakage_span == LeakageSpan::ring)
    span_patterns = tb::blockade_ring_patterns(L, cfg.blockade_alpha);
  else if (cfg.leakage_span == LeakageSpan::open_chain)
    span_patterns = tb::open_chain_patterns(L);

  Trajectory tr;
  tr.L = L;
  StateVector psi = psi0;

  auto record = [&](double time) {
    tr.t.push_back(time);
    tr.norm.push_back(psi.norm());
    tr.fidelity.push_back(std::abs(inner(psi0, psi)) / (tr.norm.back() > 0 ? tr.norm.back() : 1.0));
    if (!span_patterns.empty()) tr.leakage.push_back(tb::leaked_weight(span_patterns, psi));
    if (cfg.record_density) {
      auto dens = site_zero_density(psi);
      if (profile_sum(dens) > 1e-12)
        tr.com.push_back(center_of_mass(dens, L, true));
      else
        tr.com.push_back(std::numeric_limits<double>::quiet_NaN());
      tr.zero_density.push_back(std::move(dens));
    }
    if (cfg.record_entropy) {
      StateVector unit = psi;
      unit *= 1.0 / tr.norm.back();
      tr.entropy.push_back(entanglement_entropy(unit, SiteRegion{1, L / 2}));
    }
    if (cfg.record_energy) {
      StateVector hv = apply(h, psi);
      tr.energy.push_back(inner(psi, hv).real() / (tr.norm.back() * tr.norm.back()));
    }
    if (cfg.dump_states) tr.states.push_back(psi);
  };

  record(0.0);
  const int n_steps = static_cast<int>(std::ceil(cfg.t_max / cfg.dt_record - 1e-9));
  for (int step = 0; step < n_steps; ++step) {
    const double t_target = std::min(cfg.t_max, (step + 1) * cfg.dt_record);
    double remaining = t_target - step * cfg.dt_record;
    while (remaining > 1e-14) {
      // Build the Krylov space from the current state and pick the largest
      // substep meeting the local error budget.
      const double nrm = psi.norm();
      std::vector<cplx> unit(n);
      for (std::size_t i = 0; i < n; ++i) unit[i] = psi.amp[i] / nrm;
      const int m = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(cfg.max_krylov), n));
      LanczosBasis basis = lanczos(h, unit, m);
      TridiagExp texp(basis);
      const double beta_res = basis.beta.back();
      double dt = remaining;
      Eigen::VectorXcd w;
      const double budget_rate = cfg.tolerance / cfg.dt_record;  // error per unit time
      for (;;) {
        w = texp.propagate_e1(dt);
        if (basis.happy) break;
        const double err = beta_res * std::abs(w[w.size() - 1]);
        if (err <= budget_rate * dt * 0.5) break;
        dt *= 0.5;
        if (dt < remaining * 1e-12 || dt < 1e-13)
          throw KrylovError("evolve: Krylov step failed to converge at max dimension " +
                            std::to_string(cfg.max_krylov));
      }
      std::fill(psi.amp.begin(), psi.amp.end(), cplx{0.0, 0.0});
      for (std::size_t j = 0; j < basis.v.size(); ++j) {
        const cplx wj = nrm * w[static_cast<Eigen::Index>(j)];
        const auto& vj = basis.v[j];
        for (std::size_t i = 0; i < n; ++i) psi.amp[i] += wj * vj[i];
      }
      remaining -= dt;
      check_wallclock();
    }
    record(std::min(cfg.t_max, (step + 1) * cfg.dt_record));
  }
  return tr;
}

std::vector<double> site_zero_density(const StateVector& psi) {
  const int L = psi.L;
  std::vector<double> dens(static_cast<std::size_t>(L), 0.0);
  const double n2 = psi.norm_sq();
  if (n2 == 0.0) throw std::invalid_argument("site_zero_density: zero vector");
  const std::uint64_t full = (std::uint64_t{1} << L) - 1;
  for (std::size_t z = 0; z < psi.dim(); ++z) {
    const double w = std::norm(psi.amp[z]);
    if (w == 0.0) continue;
    std::uint64_t zeros = ~z & full;
    while (zeros) {
      const int b = std::countr_zero(zeros);
      dens[static_cast<std::size_t>(L - 1 - b)] += w;
      zeros &= zeros - 1;
    }
  }
  for (auto& d : dens) d /= n2;
  return dens;
}

double center_of_mass(const std::vector<double>& profile, int L, bool periodic) {
  if (static_cast<int>(profile.size()) != L) throw std::invalid_argument("center_of_mass: length mismatch");
  double total = 0.0;
  for (double p : profile) {
    if (p < -1e-12) throw std::invalid_argument("center_of_mass: negative profile entry");
    total += p;
  }
  if (total <= 1e-300) throw std::invalid_argument("center_of_mass: all-zero profile");
  if (!periodic) {
    double s = 0.0;
    for (int i = 0; i < L; ++i) s += (i + 1) * profile[static_cast<std::size_t>(i)];
    return s / total;
  }
  cplx z{0.0, 0.0};
  for (int i = 0; i < L; ++i) z += profile[static_cast<std::size_t>(i)] * std::polar(1.0, 2.0 * pi * i / L);
  double angle = std::arg(z);
  if (angle < 0) angle += 2.0 * pi;
  return 1.0 + angle * L / (2.0 * pi);
}

std::vector<double> unwrap_positions(const std::vector<double>& com, int L) {
  std::vector<double> out = com;
  for (std::size_t i = 1; i < out.size(); ++i) {
    double d = out[i] - out[i - 1];
    while (d > L / 2.0) {
      out[i] -= L;
      d -= L;
    }
    while (d < -L / 2.0) {
      out[i] += L;
      d += L;
    }
  }
  return out;
}

double linear_drift_rate(const std::vector<double>& t, const std::vector<double>& y, double t0,
                         double t1) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 - 1e-12 || t[i] > t1 + 1e-12 || std::isnan(y[i])) continue;
    sx += t[i];
    sy += y[i];
    sxx += t[i] * t[i];
    sxy += t[i] * y[i];
    ++n;
  }
  if (n < 2) throw std::invalid_argument("linear_drift_rate: too few samples in window");
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("linear_drift_rate: degenerate window");
  return (n * sxy - sx * sy) / denom;
}

RevivalReport detect_revivals(const std::vector<double>& t, const std::vector<double>& f) {
  if (t.size() != f.size() || t.size() < 3)
    throw std::invalid_argument("detect_revivals: need at least 3 samples");
  RevivalReport rep;
  double fmin = f[0], fmax = f[0];
  for (double x : f) {
    fmin = std::min(fmin, x);
    fmax = std::max(fmax, x);
  }
  if (fmax - fmin < 1e-6) {
    rep.plateau = true;
    rep.baseline = fmin;
    return rep;
  }
  // first local minimum sets the baseline
  std::size_t imin = f.size() - 1;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    if (f[i] <= f[i - 1] && f[i] <= f[i + 1]) {
      imin = i;
      break;
    }
  }
  rep.baseline = f[imin];
  for (std::size_t i = imin + 1; i + 1 < f.size(); ++i) {
    if (f[i] > f[i - 1] && f[i] >= f[i + 1] && f[i] > rep.baseline) {
      // parabolic refinement around the sample peak
      const double y0 = f[i - 1], y1 = f[i], y2 = f[i + 1];
      const double denom = y0 - 2 * y1 + y2;
      double shift = 0.0;
      if (denom < -1e-300) shift = 0.5 * (y0 - y2) / denom;
      shift = std::clamp(shift, -0.5, 0.5);
      const double dt = t[i + 1] - t[i];
      rep.peaks.push_back({t[i] + shift * dt, y1 - 0.25 * (y0 - y2) * shift});
    }
  }
  return rep;
}

std::vector<double> autocorrelation_peak_lags(const std::vector<double>& t,
                                              const std::vector<double>& y, int max_peaks) {
  if (t.size() != y.size() || t.size() < 8)
    throw std::invalid_argument("autocorrelation_peak_lags: series too short");
  const std::size_t n = y.size();
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> c(n, 0.0);
  for (std::size_t lag = 0; lag < n; ++lag) {
    double s = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) s += (y[i] - mean) * (y[i + lag] - mean);
    c[lag] = s / static_cast<double>(n - lag);
  }
  const double dt = (t.back() - t.front()) / static_cast<double>(n - 1);
  std::vector<double> lags;
  for (std::size_t i = 2; i + 1 < n && static_cast<int>(lags.size()) < max_peaks; ++i) {
    if (c[i] > c[i - 1] && c[i] >= c[i + 1] && c[i] > 0.0) {
      const double y0 = c[i - 1], y1 = c[i], y2 = c[i + 1];
      const double denom = y0 - 2 * y1 + y2;
      double shift = denom < -1e-300 ? std::clamp(0.5 * (y0 - y2) / denom, -0.5, 0.5) : 0.0;
      lags.push_back((static_cast<double>(i) + shift) * dt);
      i += 1;
    }
  }
  return lags;
}

}  // namespace dyn
}  // namespace pxchain
