#pragma once

#include <optional>

#include "pxchain/sparse.hpp"
#include "pxchain/types.hpp"

namespace pxchain {

/// Permutation of computational basis states, e.g. a site relabeling.
struct BasisPermutation {
  int L = 0;
  std::vector<std::uint32_t> map;  // |z> -> |map[z]>

  std::size_t dim() const { return map.size(); }
  SparseOperator to_sparse() const;
  StateVector apply(const StateVector& v) const;
  BasisPermutation compose(const BasisPermutation& other) const;  // this after other
};

/// One-site translation i -> i+1 on a periodic chain.
BasisPermutation translation_perm(const ChainGeometry& geom);
/// Spatial inversion i -> L+1-i.
BasisPermutation inversion_perm(const ChainGeometry& geom);

struct SymmetryOps {
  std::optional<BasisPermutation> translation;  // periodic only
  BasisPermutation inversion;
  SparseOperator chiral;                        // prod_i Z_i, diagonal
  std::optional<SparseOperator> staggered_p;    // sum_i (-1)^i X_i X_{i+1}; periodic, even L
};

/// Symmetry operators of the chain family: translation T (T^L = 1),
/// inversion I (I^2 = 1), chiral C = prod Z_i (C^2 = 1, anticommutes with
/// every single-flip Hamiltonian), and the staggered two-site operator P,
/// which is a symmetry only of the undeformed model on even periodic rings.
SymmetryOps symmetry_ops(const ChainGeometry& geom);

/// P = sum_i (-1)^i X_i X_{i+1} as a term list (periodic, even L).
TermOperator staggered_p_terms(const ChainGeometry& geom);

}  // namespace pxchain
