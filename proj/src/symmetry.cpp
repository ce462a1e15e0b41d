#include "pxchain/symmetry.hpp"

#include <bit>

namespace pxchain {

SparseOperator BasisPermutation::to_sparse() const {
  std::vector<std::tuple<std::uint32_t, std::uint32_t, cplx>> coo;
  coo.reserve(dim());
  for (std::uint32_t z = 0; z < dim(); ++z) coo.emplace_back(map[z], z, cplx{1.0, 0.0});
  return SparseOperator::from_coo(dim(), std::move(coo));
}

StateVector BasisPermutation::apply(const StateVector& v) const {
  if (v.dim() != dim()) throw std::invalid_argument("BasisPermutation::apply: dimension mismatch");
  StateVector out(v.L);
  for (std::size_t z = 0; z < dim(); ++z) out.amp[map[z]] = v.amp[z];
  return out;
}

BasisPermutation BasisPermutation::compose(const BasisPermutation& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("BasisPermutation::compose: dimension mismatch");
  BasisPermutation out{L, std::vector<std::uint32_t>(dim())};
  for (std::size_t z = 0; z < dim(); ++z) out.map[z] = map[other.map[z]];
  return out;
}

// Site i -> i+1 cyclically. In bit language the site-1 bit (MSB) wraps to
// the site-L bit position... site i occupies bit (L-i), so translating all
// sites right by one rotates the bit pattern right by one.
BasisPermutation translation_perm(const ChainGeometry& geom) {
  if (!geom.periodic()) throw std::invalid_argument("translation: periodic boundary required");
  const int L = geom.L;
  BasisPermutation p{L, std::vector<std::uint32_t>(geom.dim())};
  const std::uint64_t full = geom.dim() - 1;
  for (std::uint64_t z = 0; z <= full; ++z) {
    std::uint64_t rotated = ((z >> 1) | (z << (L - 1))) & full;
    p.map[z] = static_cast<std::uint32_t>(rotated);
  }
  return p;
}

BasisPermutation inversion_perm(const ChainGeometry& geom) {
  const int L = geom.L;
  BasisPermutation p{L, std::vector<std::uint32_t>(geom.dim())};
  for (std::uint64_t z = 0; z < geom.dim(); ++z) {
    std::uint64_t rev = 0;
    for (int b = 0; b < L; ++b)
      if (z & (std::uint64_t{1} << b)) rev |= std::uint64_t{1} << (L - 1 - b);
    p.map[z] = static_cast<std::uint32_t>(rev);
  }
  return p;
}

TermOperator staggered_p_terms(const ChainGeometry& geom) {
  if (!geom.periodic()) throw std::invalid_argument("staggered_p: periodic boundary required");
  if (geom.L % 2 != 0) throw std::invalid_argument("staggered_p: even L required");
  std::vector<ProjFlipTerm> terms;
  for (int i = 1; i <= geom.L; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    terms.push_back({sign, 0, 0, site_mask(i, geom.L) | site_mask(geom.wrap(i + 1), geom.L)});
  }
  return TermOperator(geom.L, std::move(terms));
}

SymmetryOps symmetry_ops(const ChainGeometry& geom) {
  SymmetryOps ops{std::nullopt, inversion_perm(geom), SparseOperator(), std::nullopt};
  if (geom.periodic()) ops.translation = translation_perm(geom);

  // chiral C = prod_i Z_i: diagonal sign (-1)^(number of 1 bits)
  {
    const std::size_t n = geom.dim();
    std::vector<std::uint64_t> rp(n + 1);
    std::vector<std::uint32_t> cols(n);
    std::vector<cplx> vals(n);
    for (std::size_t z = 0; z < n; ++z) {
      rp[z] = z;
      cols[z] = static_cast<std::uint32_t>(z);
      vals[z] = (std::popcount(z) % 2 == 0) ? 1.0 : -1.0;
    }
    rp[n] = n;
    ops.chiral = SparseOperator(n, std::move(rp), std::move(cols), std::move(vals));
  }

  if (geom.periodic() && geom.L % 2 == 0) ops.staggered_p = staggered_p_terms(geom).to_sparse();
  return ops;
}

}  // namespace pxchain
