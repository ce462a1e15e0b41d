#include "pxchain/tb_subspace.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pxchain {
namespace tb {

namespace {
constexpr double pi = std::numbers::pi;

int wrap_site(int i, int L) {
  int m = (i - 1) % L;
  if (m < 0) m += L;
  return m + 1;
}
}  // namespace

TBRing::TBRing(int sites) : L(sites) {
  if (L < 3) throw std::invalid_argument("TBRing: L >= 3 required");
  if (L > 30) throw std::invalid_argument("TBRing: L too large");
}

FockState zero_string_pattern(int L, int m, int nzeros) {
  FockState f = all_ones(L);
  for (int j = 0; j < nzeros; ++j) {
    int site = wrap_site(m + j, L);
    f.bits &= ~site_mask(site, L);
  }
  return f;
}

FockState TBRing::pattern(int r) const {
  if (r < 1 || r > ring_size()) throw std::out_of_range("TBRing::pattern: ring site out of range");
  const int m = excitation_site(r);
  return zero_string_pattern(L, m, is_a_site(r) ? 1 : 2);
}

int TBRing::ring_distance(int r1, int r2) const {
  int d = std::abs(r1 - r2) % ring_size();
  return std::min(d, ring_size() - d);
}

int TBRing::ring_of_index(std::size_t index) const {
  const std::uint64_t full = (std::uint64_t{1} << L) - 1;
  const std::uint64_t zeros = ~index & full;
  const int nz = std::popcount(zeros);
  if (nz == 1) {
    const int site = L - std::countr_zero(zeros);
    return ring_of_a(site);
  }
  if (nz == 2) {
    for (int m = 1; m <= L; ++m)
      if (index == zero_string_pattern(L, m, 2).bits) return ring_of_b(m);
  }
  return 0;
}

std::vector<FockState> blockade_ring_patterns(int L, int alpha) {
  if (alpha < 1 || L < alpha + 3)
    throw std::invalid_argument("blockade_ring_patterns: need alpha >= 1 and L >= alpha + 3");
  std::vector<FockState> out;
  out.reserve(2 * static_cast<std::size_t>(L));
  for (int r = 1; r <= 2 * L; ++r) {
    const int m = (r % 2 == 1) ? (r + 1) / 2 : r / 2;
    out.push_back(zero_string_pattern(L, m, (r % 2 == 1) ? alpha : alpha + 1));
  }
  return out;
}

std::vector<FockState> open_chain_patterns(int L) {
  std::vector<FockState> out;
  out.reserve(2 * static_cast<std::size_t>(L) - 1);
  for (int m = 1; m <= L - 1; ++m) {
    out.push_back(zero_string_pattern(L, m, 1));
    out.push_back(zero_string_pattern(L, m, 2));
  }
  out.push_back(zero_string_pattern(L, L, 1));
  return out;
}

ProjectionWeights tb_projector_weights(const TBRing& ring, const StateVector& v) {
  if (v.L != ring.L) throw std::invalid_argument("tb_projector_weights: chain length mismatch");
  const double n2 = v.norm_sq();
  if (n2 == 0.0) throw std::invalid_argument("tb_projector_weights: zero vector");
  ProjectionWeights w;
  w.coeff.resize(static_cast<std::size_t>(ring.ring_size()));
  double inside = 0.0;
  for (int r = 1; r <= ring.ring_size(); ++r) {
    const cplx c = v.amp[ring.pattern_index(r)];
    w.coeff[static_cast<std::size_t>(r - 1)] = c;
    inside += std::norm(c);
  }
  w.leaked = 1.0 - inside / n2;
  if (w.leaked < 0.0) w.leaked = 0.0;
  return w;
}

double leaked_weight(const std::vector<FockState>& patterns, const StateVector& v) {
  const double n2 = v.norm_sq();
  if (n2 == 0.0) throw std::invalid_argument("leaked_weight: zero vector");
  double inside = 0.0;
  for (const auto& f : patterns) inside += std::norm(v.amp[index_of(f)]);
  double p = 1.0 - inside / n2;
  return p < 0.0 ? 0.0 : p;
}

Eigen::MatrixXd h_tb(const TBRing& ring) {
  const int n = ring.ring_size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    const int rp = (r + 1) % n;
    m(r, rp) = 1.0;
    m(rp, r) = 1.0;
  }
  return m;
}

SparseOperator h_tb_embedded(const TBRing& ring) {
  const int n = ring.ring_size();
  std::vector<std::tuple<std::uint32_t, std::uint32_t, cplx>> coo;
  for (int r = 1; r <= n; ++r) {
    const int rp = r % n + 1;
    const auto i = static_cast<std::uint32_t>(ring.pattern_index(r));
    const auto j = static_cast<std::uint32_t>(ring.pattern_index(rp));
    coo.emplace_back(i, j, cplx{1.0, 0.0});
    coo.emplace_back(j, i, cplx{1.0, 0.0});
  }
  return SparseOperator::from_coo(std::size_t{1} << ring.L, std::move(coo));
}

StateVector momentum_state(const TBRing& ring, int n) {
  if (n < -ring.L || n > ring.L - 1)
    throw std::out_of_range("momentum_state: n outside -L..L-1");
  const double k = pi * n / ring.L;
  StateVector v(ring.L);
  const double norm = 1.0 / std::sqrt(2.0 * ring.L);
  for (int r = 1; r <= ring.ring_size(); ++r)
    v.amp[ring.pattern_index(r)] = std::polar(norm, k * r);
  return v;
}

double envelope_norm_const(const WavepacketParams& p) {
  return std::sqrt((2.0 * p.R + 1.0) / 2.0 + std::cos(pi / (2.0 * p.R + 3.0)));
}

double envelope(const WavepacketParams& p, int r, int ring_size) {
  int d = std::abs(r - p.m0) % ring_size;
  d = std::min(d, ring_size - d);
  if (d > p.R) return 0.0;
  return std::abs(std::cos(pi * d / (2.0 * p.R + 3.0))) / envelope_norm_const(p);
}

namespace {
void check_packet(const WavepacketParams& p, int ring_size) {
  if (p.R < 1) throw std::invalid_argument("wavepacket: R >= 1 required");
  if (2 * p.R + 1 > ring_size) throw std::invalid_argument("wavepacket: envelope wider than the ring");
  if (p.m0 < 1 || p.m0 > ring_size) throw std::invalid_argument("wavepacket: center outside ring");
  if (p.k <= -pi - 1e-12 || p.k > pi + 1e-12)
    throw std::invalid_argument("wavepacket: carrier momentum outside (-pi, pi]");
}
}  // namespace

StateVector wavepacket(const TBRing& ring, const WavepacketParams& p) {
  check_packet(p, ring.ring_size());
  StateVector v(ring.L);
  for (int r = 1; r <= ring.ring_size(); ++r) {
    const double w = envelope(p, r, ring.ring_size());
    if (w != 0.0) v.amp[ring.pattern_index(r)] = std::polar(w, p.k * r);
  }
  return v;
}

StateVector wavepacket_custom(const TBRing& ring, double k,
                              const std::function<double(int)>& envelope_fn) {
  double n2 = 0.0;
  std::vector<double> w(static_cast<std::size_t>(ring.ring_size()));
  for (int r = 1; r <= ring.ring_size(); ++r) {
    w[static_cast<std::size_t>(r - 1)] = envelope_fn(r);
    n2 += w[static_cast<std::size_t>(r - 1)] * w[static_cast<std::size_t>(r - 1)];
  }
  if (n2 == 0.0) throw std::invalid_argument("wavepacket_custom: zero envelope");
  StateVector v(ring.L);
  for (int r = 1; r <= ring.ring_size(); ++r)
    v.amp[ring.pattern_index(r)] = std::polar(w[static_cast<std::size_t>(r - 1)] / std::sqrt(n2), k * r);
  return v;
}

StateVector scarred_state(const TBRing& ring, const ScarParams& p) {
  const double grid = pi / ring.L;
  const double nq = p.q / grid, nk = p.k / grid;
  if (std::abs(nq - std::round(nq)) > 1e-9 || std::abs(nk - std::round(nk)) > 1e-9)
    throw std::invalid_argument("scarred_state: q and k must sit on the pi/L momentum grid");
  const int jq = static_cast<int>(std::llround(nq));
  const int jk = static_cast<int>(std::llround(nk));
  if (((jq % ring.L) + ring.L) % ring.L == 0)
    throw std::invalid_argument("scarred_state: q = 0 mod pi collapses the two momentum components");
  auto wrap_n = [&](int n) {
    int m = ((n + ring.L) % (2 * ring.L) + 2 * ring.L) % (2 * ring.L);
    return m - ring.L;  // into -L..L-1
  };
  StateVector v1 = momentum_state(ring, wrap_n(jk + jq));
  StateVector v2 = momentum_state(ring, wrap_n(jk - jq));
  StateVector out(ring.L);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < out.dim(); ++i) out.amp[i] = s * (v1.amp[i] + v2.amp[i]);
  return out;
}

StateVector two_packet_state(const WavepacketParams& a, const WavepacketParams& b, int L) {
  if (L % 2 != 0) throw std::invalid_argument("two_packet_state: even L required");
  const int half = L / 2;
  if (half < 3) throw std::invalid_argument("two_packet_state: halves too short");
  const int ring_size = 2 * half;
  for (const auto* p : {&a, &b}) {
    check_packet(*p, ring_size);
    if (p->m0 - p->R < 1 || p->m0 + p->R > ring_size)
      throw std::invalid_argument("two_packet_state: packet support wraps around its half");
  }
  TBRing hring(half);
  StateVector va = wavepacket(hring, a);
  StateVector vb = wavepacket(hring, b);
  StateVector out(L);
  // product state: left half pattern x right half pattern
  for (std::size_t za = 0; za < va.dim(); ++za) {
    if (va.amp[za] == cplx{0.0, 0.0}) continue;
    for (std::size_t zb = 0; zb < vb.dim(); ++zb) {
      if (vb.amp[zb] == cplx{0.0, 0.0}) continue;
      out.amp[(za << half) | zb] = va.amp[za] * vb.amp[zb];
    }
  }
  return out;
}

std::pair<StateVector, StateVector> ssh_edge_modes(int L, double t1, double t2) {
  if (t2 == 0.0) throw std::invalid_argument("ssh_edge_modes: t2 = 0");
  if (std::abs(t2) <= std::abs(t1))
    throw std::invalid_argument("ssh_edge_modes: requires |t2| > |t1|");
  if (L < 3) throw std::invalid_argument("ssh_edge_modes: L >= 3 required");
  const double ratio = -t1 / t2;
  StateVector left(L), right(L);
  double n2 = 0.0;
  double w = 1.0;
  for (int m = 1; m <= L - 1; ++m) {
    left.amp[index_of(zero_string_pattern(L, m, 1))] = w;
    right.amp[index_of(zero_string_pattern(L, L - m, 2))] = w;
    n2 += w * w;
    w *= ratio;
  }
  const double s = 1.0 / std::sqrt(n2);
  left *= s;
  right *= s;
  return {left, right};
}

StateVector droplet_state(int L, const std::vector<int>& region_sites, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("droplet_state: sign must be +-1");
  const int len = static_cast<int>(region_sites.size());
  if (len < 2) throw std::invalid_argument("droplet_state: region needs at least 2 sites");
  for (int j = 1; j < len; ++j) {
    const int expect = wrap_site(region_sites[0] + j, L);
    if (region_sites[static_cast<std::size_t>(j)] != expect)
      throw std::invalid_argument("droplet_state: region must be contiguous");
  }
  const int a = region_sites.front();
  const int b_last = region_sites.back();
  const double k = sign * pi / 2.0;
  StateVector v(L);
  double n2 = 0.0;
  // Keep the momentum-state components whose excitation pattern lies
  // entirely inside the region; the global ring coordinate fixes the phase.
  for (int j = 0; j < len; ++j) {
    const int m = wrap_site(a + j, L);
    v.amp[index_of(zero_string_pattern(L, m, 1))] = std::polar(1.0, k * (2 * m - 1));
    n2 += 1.0;
    const bool b_fits = (len == L) || (m != b_last);  // B_m needs site m+1 inside too
    if (b_fits) {
      v.amp[index_of(zero_string_pattern(L, m, 2))] = std::polar(1.0, k * (2 * m));
      n2 += 1.0;
    }
  }
  v *= 1.0 / std::sqrt(n2);
  return v;
}

double energy_variance(const StateVector& v, const LinearOperator& h) {
  if (std::abs(v.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("energy_variance: state not normalized");
  StateVector hv = apply(h, v);
  const double e = inner(v, hv).real();
  const double e2 = hv.norm_sq();
  double var = e2 - e * e;
  if (var < 0.0) {
    if (var < -1e-10) throw std::runtime_error("energy_variance: negative beyond tolerance");
    var = 0.0;
  }
  return var;
}

}  // namespace tb
}  // namespace pxchain
