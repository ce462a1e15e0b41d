#pragma once

#include <utility>
#include <vector>

#include "pxchain/sparse.hpp"
#include "pxchain/types.hpp"

namespace pxchain {
namespace ham {

/// Model parameters for the chain family. alpha=1 reduces the blockade
/// family to the plain PX model.
struct ModelParams {
  ChainGeometry geom;
  double g = 0.0;       // stabilizer strength, >= 0
  double t1 = 1.0;      // dimerized hoppings
  double t2 = 1.0;
  double F = 0.0;       // linear tilt strength
  int alpha = 1;        // blockade range, >= 1
};

// Term-list forms; these are what the matrix-free propagator consumes.
TermOperator hpx_terms(const ChainGeometry& geom);
TermOperator hpxp_terms(const ChainGeometry& geom);
TermOperator hpx_g_terms(const ChainGeometry& geom, double g);
TermOperator ssh_terms(const ChainGeometry& geom, double t1, double t2, double g = 0.0);
TermOperator bloch_tilt_terms(const ChainGeometry& geom, double F);
TermOperator blockade_terms(const ChainGeometry& geom, int alpha, double g = 0.0);
std::pair<TermOperator, TermOperator> split_parent_terms(const ChainGeometry& geom);
/// Grouped local term h_{1,i} = P_{i-1} P_i X_{i+1} + X_{i-1} P_i P_{i+1}.
TermOperator parent_h1_local_terms(const ChainGeometry& geom, int i);

// CSR builders.

/// H_PX = sum_i (P_i X_{i+1} + X_i P_{i+1}); open boundary keeps bonds
/// i = 1..L-1 only.
SparseOperator build_hpx(const ChainGeometry& geom);

/// H_PXP = sum_j P_{j-1} X_j P_{j+1}; open boundary keeps j = 2..L-1.
SparseOperator build_hpxp(const ChainGeometry& geom);

/// H_PX + g H_PXP.
SparseOperator build_hpx_g(const ChainGeometry& geom, double g);

/// Dimerized open chain
///   sum_{i=1}^{L-2} (t1 P_i X_{i+1} + t2 X_i P_{i+1}) + t1 P_{L-1} X_L
/// plus g sum_{i=2}^{L-1} P_{i-1} X_i P_{i+1}.
SparseOperator build_ssh(const ChainGeometry& geom, double t1, double t2, double g = 0.0);

/// Diagonal tilt F sum_m (m P_m - (m + 1/2) P_m P_{m+1}), periodic, with the
/// (m=L, m+1=1) pair term included at coefficient L + 1/2.
SparseOperator build_bloch_tilt(const ChainGeometry& geom, double F);

/// Blockade family: spin flips next to strings of alpha projectors, plus the
/// generalized stabilizer at strength g. Requires L > 2 alpha + 2.
SparseOperator build_blockade(const ChainGeometry& geom, int alpha, double g = 0.0);

/// Split H_PX = H_hop + H_1, where H_hop leaves the embedded hopping
/// subspace exactly invariant. Periodic only.
std::pair<SparseOperator, SparseOperator> split_parent(const ChainGeometry& geom);

}  // namespace ham
}  // namespace pxchain
