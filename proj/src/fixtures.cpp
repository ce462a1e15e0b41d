#include "pxchain/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pxchain {
namespace fixtures {

namespace {
constexpr double pi = std::numbers::pi;

// 53-bit uniform in [0, 1); avoids distribution objects whose streams are
// implementation defined.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
}  // namespace

StateVector build_product_state(const ProductStateSpec& spec) {
  const int L = static_cast<int>(spec.cos_theta.size());
  if (spec.phi.size() != spec.cos_theta.size())
    throw std::invalid_argument("build_product_state: angle arrays differ in length");
  if (L < 1 || L > 30) throw std::invalid_argument("build_product_state: bad length");
  std::vector<cplx> up(static_cast<std::size_t>(L)), down(static_cast<std::size_t>(L));
  for (int i = 0; i < L; ++i) {
    const double c = spec.cos_theta[static_cast<std::size_t>(i)];
    if (std::abs(c) > 1.0 + 1e-12) throw std::invalid_argument("build_product_state: |cos theta| > 1");
    const double theta = std::acos(std::clamp(c, -1.0, 1.0));
    up[static_cast<std::size_t>(i)] = std::cos(theta / 2.0);
    down[static_cast<std::size_t>(i)] =
        std::polar(std::sin(theta / 2.0), spec.phi[static_cast<std::size_t>(i)]);
  }
  StateVector v(L);
  for (std::size_t z = 0; z < v.dim(); ++z) {
    cplx a{1.0, 0.0};
    for (int i = 1; i <= L; ++i)
      a *= ((z >> (L - i)) & 1u) ? down[static_cast<std::size_t>(i - 1)] : up[static_cast<std::size_t>(i - 1)];
    v.amp[z] = a;
  }
  return v;
}

std::pair<ProductStateSpec, StateVector> sample_product_state(int L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ProductStateSpec spec;
  spec.cos_theta.resize(static_cast<std::size_t>(L));
  spec.phi.resize(static_cast<std::size_t>(L));
  for (int i = 0; i < L; ++i) {
    spec.cos_theta[static_cast<std::size_t>(i)] = 2.0 * uniform01(rng) - 1.0;
    spec.phi[static_cast<std::size_t>(i)] = 2.0 * pi * uniform01(rng);
  }
  return {spec, build_product_state(spec)};
}

std::vector<StateVector> period4_zero_modes(int L) {
  if (L % 4 != 0) throw std::invalid_argument("period4_zero_modes: L must be a multiple of 4");
  std::vector<StateVector> out;
  for (int shift = 0; shift < 4; ++shift) {
    ProductStateSpec spec;
    spec.cos_theta.assign(static_cast<std::size_t>(L), 0.0);  // equator: |+> or |->
    spec.phi.resize(static_cast<std::size_t>(L));
    for (int i = 0; i < L; ++i) {
      const bool plus = (((i + shift) / 2) % 2) == 0;  // ++--++--...
      spec.phi[static_cast<std::size_t>(i)] = plus ? 0.0 : pi;
    }
    out.push_back(build_product_state(spec));
  }
  return out;
}

ProductStateSpec reference_product_state_l24() {
  ProductStateSpec s;
  s.cos_theta = {-0.49835108, -0.62135923, -0.30022152, 0.34089149,  0.79261875,  -0.99434594,
                 -0.78629745, -0.16620792, -0.06370682, -0.48245782, 0.34102095,  0.84562175,
                 -0.87128861, 0.29848074,  -0.18380306, 0.58594015,  0.55768018,  -0.73129653,
                 -0.95954255, -0.72982427, -0.16198590, -0.65950746, 0.82904917,  0.20056958};
  s.phi = {5.94862418, 1.12652116, 1.44853337, 0.72306508, 5.39179288, 3.40213223,
           1.62077881, 2.85015415, 5.82775931, 1.18054901, 5.94778073, 5.53077387,
           5.88543533, 5.47614688, 1.37846761, 4.15717199, 1.26508605, 4.79799794,
           5.94138431, 3.77060413, 2.03509263, 4.90328975, 4.57963396, 4.47019650};
  return s;
}

ProductStateSpec load_product_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_product_state_file: cannot open " + path);
  ProductStateSpec spec;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    double c, p;
    if (!(ss >> c >> p)) throw std::runtime_error("load_product_state_file: malformed row");
    spec.cos_theta.push_back(c);
    spec.phi.push_back(p);
  }
  return spec;
}

void save_product_state_file(const std::string& path, const ProductStateSpec& spec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_product_state_file: cannot open " + path);
  out << "# reference product state angles; site 1 first\n";
  out << "# columns: cos_theta phi\n";
  char buf[64];
  for (std::size_t i = 0; i < spec.cos_theta.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.8f %.8f\n", spec.cos_theta[i], spec.phi[i]);
    out << buf;
  }
}

}  // namespace fixtures
}  // namespace pxchain
