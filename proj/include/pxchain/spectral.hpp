#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pxchain/entropy.hpp"
#include "pxchain/sparse.hpp"
#include "pxchain/symmetry.hpp"
#include "pxchain/types.hpp"

namespace pxchain {
namespace spectral {

/// Requested symmetry quantum numbers. momentum k labels the translation
/// eigenvalue e^{i 2 pi k / L}; inversion is +-1; p is the integer
/// eigenvalue of the staggered two-site operator (undeformed model, even L,
/// periodic only). Momentum resolution on top of p is possible only in the
/// p = 0 sector, where translation acts within the sector.
struct SectorSpec {
  std::optional<int> momentum;
  std::optional<int> inversion;
  std::optional<int> p_value;
};

/// Symmetry-adapted basis: each column is a sparse combination of product
/// labels, either computational (z) labels or X-product labels.
struct SymmetrizedBasis {
  int L = 0;
  bool x_labels = false;
  std::vector<std::vector<std::pair<std::uint64_t, cplx>>> columns;

  std::size_t dim() const { return columns.size(); }
};

struct SectorBlock {
  Eigen::MatrixXcd h;
  SymmetrizedBasis basis;
  SectorSpec label;
};

/// Project a Hamiltonian onto one symmetry sector. The requested symmetries
/// are first verified to commute with H by random-vector probes; an
/// incompatible request (e.g. p with a deformed model, or momentum with a
/// p != 0 sector) throws std::invalid_argument. Dense sector matrices are
/// guarded at max_block_dim.
SectorBlock sector_project(const TermOperator& h, const SectorSpec& spec,
                           std::size_t max_block_dim = 6000);

/// Map a sector eigenvector back to the full computational basis.
StateVector embed_in_full_space(const SymmetrizedBasis& basis, const Eigen::VectorXcd& coeffs);

/// Predicted dimension of a momentum sector from the permutation traces
/// (independent of the orbit construction).
std::size_t momentum_sector_dimension(int L, int k);

/// All staggered-P eigenvalues (derived from the bond structure) with their
/// degeneracies, ascending.
std::vector<std::pair<int, std::size_t>> staggered_p_spectrum(int L);

/// Integer staggered-P value of one X-product label.
int staggered_p_of_label(std::uint64_t x, int L);

/// CSR matrix of a term operator in the X-product basis.
SparseOperator xbasis_csr(const TermOperator& h);

/// In-place orthonormal Walsh-Hadamard transform; maps X-product amplitudes
/// to computational amplitudes and back (it is an involution).
void walsh_hadamard(std::vector<cplx>& amp);

/// Consecutive level-spacing ratios r_j = min(s_{j-1}, s_j)/max(...).
/// Degeneracies with gaps below 1e-10 are merged first. Requires at least
/// 10 distinct levels. Reference values: Poisson 2 ln 2 - 1 ~ 0.3863,
/// orthogonal random-matrix ensemble ~ 0.5307.
struct RStats {
  double mean = 0.0;
  std::vector<double> r;
};
RStats r_statistics(std::vector<double> eigenvalues);

/// Unfold a spectrum with a fitted polynomial staircase (5% of levels
/// discarded at each edge) and histogram the unfolded spacings.
struct UnfoldResult {
  std::vector<double> spacings;  // mean ~ 1
  double mean_spacing = 0.0;
  std::vector<double> bin_centers;
  std::vector<double> density;
};
UnfoldResult unfold_and_histogram(std::vector<double> eigenvalues, int poly_degree = 10,
                                  int bins = 40);

/// sup-distance of the empirical spacing CDF from the Wigner surmise
/// 1 - exp(-pi s^2 / 4).
double ks_distance_to_wigner(std::vector<double> spacings);

/// (E_i, S_i) for every eigenstate of a dense-diagonalizable operator.
std::vector<std::pair<double, double>> eigen_entropy_scatter(const SparseOperator& h, int L,
                                                             const SiteRegion& cut,
                                                             std::size_t max_dim = 4096);
std::vector<std::pair<double, double>> eigen_entropy_scatter(const SectorBlock& block,
                                                             const SiteRegion& cut);

/// (E_i, |<E_i|state>|^2) against the full spectrum.
std::vector<std::pair<double, double>> overlap_spectrum(const StateVector& state,
                                                        const SparseOperator& h,
                                                        std::size_t max_dim = 4096);

struct ZeroModeCensus {
  int kernel_dim = 0;
  Eigen::MatrixXcd kernel;               // orthonormal columns, z basis
  std::vector<double> candidate_defects; // ||(1 - Pi_ker) psi|| per candidate
};

/// Numerical kernel of H with candidate containment checks. Candidates are
/// the vacuum, the two k = +-pi/2 momentum states, and for L a multiple of
/// four the X-basis period-4 product states.
ZeroModeCensus zero_mode_census(const SparseOperator& h, int L, double tol = 1e-10,
                                std::size_t max_dim = 4096);

/// Sector-size weighted mean of per-sector r statistics.
double weighted_mean_r(const std::vector<std::pair<double, std::size_t>>& sector_means);

}  // namespace spectral
}  // namespace pxchain
