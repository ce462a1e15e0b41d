#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pxchain/sparse.hpp"
#include "pxchain/types.hpp"

namespace pxchain {
namespace tb {

/// The 2L-site ring of single-defect excitations over the all-ones vacuum:
/// odd ring site r holds |A_m> (one 0 at site m = (r+1)/2), even r holds
/// |B_m> (two adjacent 0s at sites m = r/2, m+1).
struct TBRing {
  int L = 0;

  explicit TBRing(int sites);

  int ring_size() const { return 2 * L; }

  /// Fock pattern of ring site r in 1..2L.
  FockState pattern(int r) const;
  std::size_t pattern_index(int r) const { return index_of(pattern(r)); }

  bool is_a_site(int r) const { return r % 2 == 1; }
  /// Physical label m of the excitation at ring site r.
  int excitation_site(int r) const { return is_a_site(r) ? (r + 1) / 2 : r / 2; }

  /// Ring site of |A_m| resp |B_m>.
  int ring_of_a(int m) const { return 2 * m - 1; }
  int ring_of_b(int m) const { return 2 * m; }

  /// Shortest wrap distance between ring coordinates.
  int ring_distance(int r1, int r2) const;

  /// Inverse lookup: ring coordinate of a basis index, or 0 if outside.
  int ring_of_index(std::size_t index) const;
};

/// Fock pattern with `nzeros` consecutive 0s starting at site m (periodic).
FockState zero_string_pattern(int L, int m, int nzeros);

/// Ring-ordered patterns of the blockade family: strings of alpha zeros
/// (odd ring sites) and alpha+1 zeros (even ring sites). alpha = 1
/// reproduces TBRing's patterns.
std::vector<FockState> blockade_ring_patterns(int L, int alpha);

/// Open-chain hopping span {A_1, B_1, A_2, ..., B_{L-1}, A_L} (2L-1 states).
std::vector<FockState> open_chain_patterns(int L);

/// Coefficients of v on the ring states plus the weight p outside the span:
/// sum_r |coeff_r|^2 + p ||v||^2 = ||v||^2.
struct ProjectionWeights {
  std::vector<cplx> coeff;  // index r-1
  double leaked = 0.0;      // p in [0, 1]
};
ProjectionWeights tb_projector_weights(const TBRing& ring, const StateVector& v);

/// Leaked weight of v relative to an arbitrary orthonormal pattern list.
double leaked_weight(const std::vector<FockState>& patterns, const StateVector& v);

/// The projected hopping Hamiltonian on the ring: uniform nearest-neighbor
/// amplitude 1. Returned both as the 2L x 2L matrix and, via
/// embedded_operator, as the full-space operator Pi H Pi.
Eigen::MatrixXd h_tb(const TBRing& ring);
SparseOperator h_tb_embedded(const TBRing& ring);

/// Momentum eigenstate |k_n>, k_n = pi n / L, n in -L..L-1. Satisfies
/// H_TB |k_n> = 2 cos(k_n) |k_n>.
StateVector momentum_state(const TBRing& ring, int n);

/// Compact cosine envelope wavepacket parameters: center m0 (ring
/// coordinate), radius R, carrier momentum k in (-pi, pi].
struct WavepacketParams {
  int m0 = 1;
  int R = 1;
  double k = 0.0;
};

/// Envelope value w(r): |cos(pi d/(2R+3))| inside radius R, zero outside,
/// normalized so sum_r w^2 = 1.
double envelope(const WavepacketParams& p, int r, int ring_size);
double envelope_norm_const(const WavepacketParams& p);

StateVector wavepacket(const TBRing& ring, const WavepacketParams& p);

/// Wavepacket with a caller-supplied envelope w(r) (will be normalized).
StateVector wavepacket_custom(const TBRing& ring, double k,
                              const std::function<double(int)>& envelope_fn);

/// Extended cosine-modulated state: carrier k, modulation q, both on the
/// momentum grid. Equal superposition (|k+q> + |k-q>)/sqrt(2); fidelity
/// revivals at omega = 4 |sin k sin q|.
struct ScarParams {
  double q = 0.0;
  double k = 0.0;
};
StateVector scarred_state(const TBRing& ring, const ScarParams& p);

/// Product of two wavepackets, one per half chain, each built in the ring
/// coordinates of its own L/2-site half.
StateVector two_packet_state(const WavepacketParams& a, const WavepacketParams& b, int L);

/// Edge modes of the dimerized open chain for |t2| > |t1|:
/// left ~ sum_m (-t1/t2)^(m-1) |A_m>, right ~ the mirrored B-string.
std::pair<StateVector, StateVector> ssh_edge_modes(int L, double t1, double t2);

/// Momentum state at k = +-pi/2 restricted to a contiguous region, vacuum
/// outside.
StateVector droplet_state(int L, const std::vector<int>& region_sites, int sign);

/// <H^2> - <H>^2, clamped at zero. v must be normalized.
double energy_variance(const StateVector& v, const LinearOperator& h);

}  // namespace tb
}  // namespace pxchain
