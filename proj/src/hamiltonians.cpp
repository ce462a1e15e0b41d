#include "pxchain/hamiltonians.hpp"

#include <stdexcept>
#include <string>

namespace pxchain {
namespace ham {

namespace {

std::uint64_t mask_of(const ChainGeometry& geom, int site) { return site_mask(geom.wrap(site), geom.L); }

// String of `count` projector sites starting at `first` (wrapping if periodic).
std::uint64_t zero_string(const ChainGeometry& geom, int first, int count) {
  std::uint64_t m = 0;
  for (int j = 0; j < count; ++j) m |= mask_of(geom, first + j);
  return m;
}

}  // namespace

TermOperator hpx_terms(const ChainGeometry& geom) {
  const int L = geom.L;
  const int bonds = geom.periodic() ? L : L - 1;
  std::vector<ProjFlipTerm> terms;
  terms.reserve(2 * static_cast<std::size_t>(bonds));
  for (int i = 1; i <= bonds; ++i) {
    terms.push_back({1.0, mask_of(geom, i), 0, mask_of(geom, i + 1)});  // P_i X_{i+1}
    terms.push_back({1.0, mask_of(geom, i + 1), 0, mask_of(geom, i)});  // X_i P_{i+1}
  }
  return TermOperator(L, std::move(terms));
}

TermOperator hpxp_terms(const ChainGeometry& geom) {
  const int L = geom.L;
  std::vector<ProjFlipTerm> terms;
  const int j_first = geom.periodic() ? 1 : 2;
  const int j_last = geom.periodic() ? L : L - 1;
  for (int j = j_first; j <= j_last; ++j)
    terms.push_back({1.0, mask_of(geom, j - 1) | mask_of(geom, j + 1), 0, mask_of(geom, j)});
  return TermOperator(L, std::move(terms));
}

TermOperator hpx_g_terms(const ChainGeometry& geom, double g) {
  if (g < 0.0) throw std::invalid_argument("hpx_g: g must be >= 0");
  const TermOperator hop = hpx_terms(geom);
  std::vector<ProjFlipTerm> terms = hop.terms();
  if (g != 0.0) {
    const TermOperator stab = hpxp_terms(geom);
    for (ProjFlipTerm t : stab.terms()) {
      t.coeff *= g;
      terms.push_back(t);
    }
  }
  return TermOperator(geom.L, std::move(terms));
}

TermOperator ssh_terms(const ChainGeometry& geom, double t1, double t2, double g) {
  if (geom.periodic()) throw std::invalid_argument("ssh: open boundary required");
  const int L = geom.L;
  if (L < 3) throw std::invalid_argument("ssh: L >= 3 required");
  std::vector<ProjFlipTerm> terms;
  for (int i = 1; i <= L - 2; ++i) {
    terms.push_back({t1, mask_of(geom, i), 0, mask_of(geom, i + 1)});
    terms.push_back({t2, mask_of(geom, i + 1), 0, mask_of(geom, i)});
  }
  // dangling t1 bond on the last pair; no t2 partner there
  terms.push_back({t1, mask_of(geom, L - 1), 0, mask_of(geom, L)});
  if (g != 0.0)
    for (int j = 2; j <= L - 1; ++j)
      terms.push_back({g, mask_of(geom, j - 1) | mask_of(geom, j + 1), 0, mask_of(geom, j)});
  return TermOperator(L, std::move(terms));
}

TermOperator bloch_tilt_terms(const ChainGeometry& geom, double F) {
  if (!geom.periodic()) throw std::invalid_argument("bloch_tilt: periodic boundary required");
  const int L = geom.L;
  std::vector<ProjFlipTerm> terms;
  for (int m = 1; m <= L; ++m) {
    terms.push_back({F * m, mask_of(geom, m), 0, 0});
    terms.push_back({-F * (m + 0.5), mask_of(geom, m) | mask_of(geom, m + 1), 0, 0});
  }
  return TermOperator(L, std::move(terms));
}

TermOperator blockade_terms(const ChainGeometry& geom, int alpha, double g) {
  if (alpha < 1) throw std::invalid_argument("blockade: alpha >= 1 required");
  if (!geom.periodic()) throw std::invalid_argument("blockade: periodic boundary required");
  const int L = geom.L;
  if (L <= 2 * alpha + 2)
    throw std::invalid_argument("blockade: chain too short, need L > 2*alpha + 2, got L=" +
                                std::to_string(L));
  std::vector<ProjFlipTerm> terms;
  for (int i = 1; i <= L; ++i) {
    terms.push_back({1.0, zero_string(geom, i - alpha + 1, alpha), 0, mask_of(geom, i + 1)});
    terms.push_back({1.0, zero_string(geom, i + 1, alpha), 0, mask_of(geom, i)});
  }
  if (g != 0.0)
    for (int i = 1; i <= L; ++i)
      terms.push_back(
          {g, zero_string(geom, i - alpha, alpha) | zero_string(geom, i + 1, alpha), 0, mask_of(geom, i)});
  return TermOperator(L, std::move(terms));
}

std::pair<TermOperator, TermOperator> split_parent_terms(const ChainGeometry& geom) {
  if (!geom.periodic()) throw std::invalid_argument("split_parent: periodic boundary required");
  const int L = geom.L;
  std::vector<ProjFlipTerm> hop, h1;
  for (int i = 1; i <= L; ++i) {
    // n_{i-1} P_i X_{i+1} + X_i P_{i+1} n_{i+2}
    hop.push_back({1.0, mask_of(geom, i), mask_of(geom, i - 1), mask_of(geom, i + 1)});
    hop.push_back({1.0, mask_of(geom, i + 1), mask_of(geom, i + 2), mask_of(geom, i)});
    // P_{i-1} P_i X_{i+1} + X_{i-1} P_i P_{i+1}
    h1.push_back({1.0, mask_of(geom, i - 1) | mask_of(geom, i), 0, mask_of(geom, i + 1)});
    h1.push_back({1.0, mask_of(geom, i) | mask_of(geom, i + 1), 0, mask_of(geom, i - 1)});
  }
  return {TermOperator(L, std::move(hop)), TermOperator(L, std::move(h1))};
}

TermOperator parent_h1_local_terms(const ChainGeometry& geom, int i) {
  if (!geom.periodic()) throw std::invalid_argument("parent_h1: periodic boundary required");
  std::vector<ProjFlipTerm> terms;
  terms.push_back({1.0, mask_of(geom, i - 1) | mask_of(geom, i), 0, mask_of(geom, i + 1)});
  terms.push_back({1.0, mask_of(geom, i) | mask_of(geom, i + 1), 0, mask_of(geom, i - 1)});
  return TermOperator(geom.L, std::move(terms));
}

SparseOperator build_hpx(const ChainGeometry& geom) { return hpx_terms(geom).to_sparse(); }

SparseOperator build_hpxp(const ChainGeometry& geom) { return hpxp_terms(geom).to_sparse(); }

SparseOperator build_hpx_g(const ChainGeometry& geom, double g) { return hpx_g_terms(geom, g).to_sparse(); }

SparseOperator build_ssh(const ChainGeometry& geom, double t1, double t2, double g) {
  return ssh_terms(geom, t1, t2, g).to_sparse();
}

SparseOperator build_bloch_tilt(const ChainGeometry& geom, double F) {
  return bloch_tilt_terms(geom, F).to_sparse();
}

SparseOperator build_blockade(const ChainGeometry& geom, int alpha, double g) {
  return blockade_terms(geom, alpha, g).to_sparse();
}

std::pair<SparseOperator, SparseOperator> split_parent(const ChainGeometry& geom) {
  auto [hop, h1] = split_parent_terms(geom);
  return {hop.to_sparse(), h1.to_sparse()};
}

}  // namespace ham
}  // namespace pxchain
