#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pxchain {

using cplx = std::complex<double>;

enum class Boundary { periodic, open };

/// Spin-1/2 chain geometry. Site numbering is 1..L, site 1 is the leftmost
/// site and maps to the most significant bit of a basis index.
struct ChainGeometry {
  int L = 0;
  Boundary boundary = Boundary::periodic;

  ChainGeometry(int sites, Boundary bc = Boundary::periodic) : L(sites), boundary(bc) {
    const int min_sites = (bc == Boundary::periodic) ? 3 : 2;
    if (L < min_sites || L > 30)
      throw std::invalid_argument("ChainGeometry: L=" + std::to_string(sites) +
                                  " outside supported range");
  }

  bool periodic() const { return boundary == Boundary::periodic; }
  std::size_t dim() const { return std::size_t{1} << L; }

  /// Wrap a site label into 1..L (periodic only).
  int wrap(int i) const {
    int m = (i - 1) % L;
    if (m < 0) m += L;
    return m + 1;
  }
};

/// Computational basis label. Bit value 0 <-> local |0>, 1 <-> local |1>.
/// The basis index is sum_i b_i 2^(L-i), i.e. the bit of site i sits at
/// position L-i of the integer.
struct FockState {
  std::uint64_t bits = 0;
  int L = 0;

  FockState() = default;
  FockState(std::uint64_t b, int sites) : bits(b), L(sites) {}

  int bit(int site) const { return static_cast<int>((bits >> (L - site)) & 1u); }

  FockState flipped(int site) const { return FockState(bits ^ (std::uint64_t{1} << (L - site)), L); }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(L), '0');
    for (int i = 1; i <= L; ++i) s[static_cast<std::size_t>(i - 1)] = bit(i) ? '1' : '0';
    return s;
  }
};

inline std::size_t index_of(const FockState& s) { return s.bits; }

inline FockState state_of(std::size_t index, int L) {
  if (L < 1 || L > 30) throw std::invalid_argument("state_of: bad L");
  if (index >= (std::size_t{1} << L)) throw std::out_of_range("state_of: index out of range");
  return FockState(index, L);
}

/// Returns the bit mask with site bits set (site numbering 1..L).
inline std::uint64_t site_mask(int site, int L) { return std::uint64_t{1} << (L - site); }

inline FockState all_ones(int L) { return FockState((std::uint64_t{1} << L) - 1, L); }

/// Dense state over the full 2^L computational basis.
struct StateVector {
  int L = 0;
  std::vector<cplx> amp;

  StateVector() = default;
  explicit StateVector(int sites) : L(sites), amp(std::size_t{1} << sites, cplx{0.0, 0.0}) {}

  std::size_t dim() const { return amp.size(); }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  StateVector& operator*=(cplx c) {
    for (auto& a : amp) a *= c;
    return *this;
  }
};

/// <a|b>, conjugate-linear in the first argument.
inline cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
  return s;
}

inline StateVector basis_state(const FockState& f) {
  StateVector v(f.L);
  v.amp[index_of(f)] = 1.0;
  return v;
}

/// |11...1>, the vacuum of the excitation picture.
inline StateVector vacuum_state(int L) { return basis_state(all_ones(L)); }

}  // namespace pxchain
