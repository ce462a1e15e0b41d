#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pxchain/types.hpp"

namespace pxchain {
namespace fixtures {

/// Per-site Bloch angles of a product state
///   cos(theta_i/2)|0> + e^{i phi_i} sin(theta_i/2)|1>.
struct ProductStateSpec {
  std::vector<double> cos_theta;  // in [-1, 1]
  std::vector<double> phi;        // in [0, 2 pi)
};

StateVector build_product_state(const ProductStateSpec& spec);

/// Uniform Bloch-sphere product state: cos(theta_i) uniform on [-1, 1],
/// phi_i uniform on [0, 2 pi). The generator is pinned to the 64-bit
/// Mersenne Twister with an explicit 53-bit uniform mapping so fixed seeds
/// reproduce across platforms.
std::pair<ProductStateSpec, StateVector> sample_product_state(int L, std::uint64_t seed);

/// The four X-basis product states |++--++--...> and translations, exact
/// zero modes of the undeformed model when L is a multiple of 4.
std::vector<StateVector> period4_zero_modes(int L);

/// Reference 24-site product state angles shipped with the library.
ProductStateSpec reference_product_state_l24();

/// Plain-text fixture format: header lines starting with '#', then rows of
/// "cos_theta phi" with 8 decimals.
ProductStateSpec load_product_state_file(const std::string& path);
void save_product_state_file(const std::string& path, const ProductStateSpec& spec);

}  // namespace fixtures
}  // namespace pxchain
