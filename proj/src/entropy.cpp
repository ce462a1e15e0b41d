#include "pxchain/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace pxchain {

namespace {

// Gather region / complement bit masks in site order.
std::vector<int> region_sites(const SiteRegion& r, int L) {
  if (r.len < 1 || r.len >= L) throw std::invalid_argument("entropy: region must be a proper nonempty subset");
  std::vector<int> sites;
  for (int j = 0; j < r.len; ++j) {
    int s = (r.first - 1 + j) % L + 1;
    sites.push_back(s);
  }
  return sites;
}

}  // namespace

std::vector<double> schmidt_spectrum(const StateVector& v, const SiteRegion& region) {
  const int L = v.L;
  const auto a_sites = region_sites(region, L);
  std::vector<bool> in_a(static_cast<std::size_t>(L) + 1, false);
  for (int s : a_sites) {
    if (in_a[static_cast<std::size_t>(s)]) throw std::invalid_argument("entropy: region wraps onto itself");
    in_a[static_cast<std::size_t>(s)] = true;
  }
  std::vector<int> b_sites;
  for (int s = 1; s <= L; ++s)
    if (!in_a[static_cast<std::size_t>(s)]) b_sites.push_back(s);

  // Row/column index of each basis state under the cut. Zero rows and
  // columns are pruned before the SVD; exact zeros cannot change the
  // singular values and the pruning keeps sparse subspace states cheap.
  const std::size_t n = v.dim();
  std::unordered_map<std::uint64_t, int> row_id, col_id;
  std::vector<std::tuple<int, int, cplx>> entries;
  for (std::size_t z = 0; z < n; ++z) {
    if (v.amp[z] == cplx{0.0, 0.0}) continue;
    std::uint64_t ra = 0, cb = 0;
    for (int s : a_sites) ra = (ra << 1) | ((z >> (L - s)) & 1u);
    for (int s : b_sites) cb = (cb << 1) | ((z >> (L - s)) & 1u);
    auto [ri, rnew] = row_id.try_emplace(ra, static_cast<int>(row_id.size()));
    auto [ci, cnew] = col_id.try_emplace(cb, static_cast<int>(col_id.size()));
    entries.emplace_back(ri->second, ci->second, v.amp[z]);
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(row_id.size()),
                                              static_cast<Eigen::Index>(col_id.size()));
  for (const auto& [r, c, a] : entries) m(r, c) = a;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd;
  Eigen::BDCSVD<Eigen::MatrixXcd> bdc;
  std::vector<double> lambda;
  if (m.rows() == 0 || m.cols() == 0) return lambda;
  Eigen::VectorXd sv;
  if (std::min(m.rows(), m.cols()) <= 32) {
    svd.compute(m);
    sv = svd.singularValues();
  } else {
    bdc.compute(m);
    sv = bdc.singularValues();
  }
  lambda.reserve(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i) lambda.push_back(sv[i] * sv[i]);
  std::sort(lambda.rbegin(), lambda.rend());
  return lambda;
}

double entanglement_entropy(const StateVector& v, const SiteRegion& region) {
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("entanglement_entropy: state not normalized");
  double s = 0.0;
  for (double l : schmidt_spectrum(v, region)) {
    if (l < 1e-14) continue;  // numerical zeros would produce NaN under the log
    s -= l * std::log(l);
  }
  return s < 0.0 ? 0.0 : s;
}

}  // namespace pxchain
