#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pxchain/hamiltonians.hpp"
#include "pxchain/spectral.hpp"
#include "pxchain/symmetry.hpp"
#include "pxchain/tb_subspace.hpp"

using namespace pxchain;
namespace {
constexpr double pi = std::numbers::pi;

std::vector<double> sorted_eigs(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

TEST_CASE("walsh-hadamard transform is the orthonormal involution") {
  std::mt19937_64 rng(3);
  std::vector<cplx> v(64);
  for (auto& a : v)
    a = cplx{static_cast<double>(rng() >> 11) * 0x1.0p-53, static_cast<double>(rng() >> 11) * 0x1.0p-53};
  auto w = v;
  spectral::walsh_hadamard(w);
  double n1 = 0, n2 = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    n1 += std::norm(v[i]);
    n2 += std::norm(w[i]);
  }
  CHECK(n1 == doctest::Approx(n2).epsilon(1e-12));
  spectral::walsh_hadamard(w);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(w[i] - v[i]) < 1e-12);
}

TEST_CASE("x-basis matrix equals the Hadamard conjugation of the computational one") {
  for (int L : {4, 5}) {
    ChainGeometry geom(L);
    auto terms = ham::hpx_g_terms(geom, 1.3);
    auto hx = spectral::xbasis_csr(terms).to_dense();

    // dense conjugation oracle: W H W with W = (H_2)^{otimes L}
    oracle::Mat w2(2, 2);
    w2 << 1, 1, 1, -1;
    w2 /= std::sqrt(2.0);
    oracle::Mat w = oracle::Mat::Identity(1, 1);
    for (int i = 0; i < L; ++i) w = oracle::kron(w, w2);
    oracle::Mat want = w * oracle::dense_hpx_g(L, true, 1.3) * w;
    CHECK((hx - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("staggered-P labels match the operator on embedded X product states") {
  const int L = 6;
  auto p_op = staggered_p_terms(ChainGeometry(L));
  for (std::uint64_t x : {0ull, 5ull, 21ull, 63ull, 10ull}) {
    std::vector<cplx> amp(std::size_t{1} << L, cplx{0.0, 0.0});
    amp[x] = 1.0;
    spectral::walsh_hadamard(amp);  // z amplitudes of the X product state
    StateVector v(L);
    v.amp = amp;
    StateVector pv = apply(p_op, v);
    const int p = spectral::staggered_p_of_label(x, L);
    double diff = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i)
      diff = std::max(diff, std::abs(pv.amp[i] - static_cast<double>(p) * v.amp[i]));
    CHECK(diff < 1e-12);
  }
}

TEST_CASE("staggered-P spectrum is integer, symmetric, and complete") {
  const int L = 8;
  auto spec = spectral::staggered_p_spectrum(L);
  std::size_t total = 0;
  for (const auto& [p, count] : spec) total += count;
  CHECK(total == (std::size_t{1} << L));
  // extreme sectors p = +-L carry the period-4 product states
  CHECK(spec.front().first == -L);
  CHECK(spec.back().first == L);
  CHECK(spec.front().second == 2);
  CHECK(spec.back().second == 2);
  for (const auto& [p, count] : spec) {
    bool found = false;  // symmetric partner
    for (const auto& [q, c2] : spec)
      if (q == -p && c2 == count) found = true;
    CHECK(found);
  }
}

TEST_CASE("momentum sector dimensions: trace formula and completeness") {
  for (int L : {6, 8}) {
    std::size_t total = 0;
    auto terms = ham::hpx_terms(ChainGeometry(L));
    for (int k = 0; k < L; ++k) {
      auto block = spectral::sector_project(terms, {.momentum = k});
      CHECK(block.basis.dim() == spectral::momentum_sector_dimension(L, k));
      total += block.basis.dim();
    }
    CHECK(total == (std::size_t{1} << L));
  }
}

TEST_CASE("sector spectra reassemble the full spectrum") {
  const int L = 8;
  ChainGeometry geom(L);
  auto terms = ham::hpx_g_terms(geom, 1.7);
  auto full = sorted_eigs(ham::build_hpx_g(geom, 1.7).to_dense());

  SUBCASE("momentum family") {
    std::vector<double> merged;
    for (int k = 0; k < L; ++k) {
      auto block = spectral::sector_project(terms, {.momentum = k});
      auto eigs = sorted_eigs(block.h);
      merged.insert(merged.end(), eigs.begin(), eigs.end());
    }
    std::sort(merged.begin(), merged.end());
    REQUIRE(merged.size() == full.size());
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(std::abs(merged[i] - full[i]) < 1e-9);
  }

  SUBCASE("momentum and inversion at the symmetric points") {
    std::vector<double> merged;
    for (int k : {0, L / 2})
      for (int inv : {1, -1}) {
        auto block = spectral::sector_project(terms, {.momentum = k, .inversion = inv});
        auto eigs = sorted_eigs(block.h);
        merged.insert(merged.end(), eigs.begin(), eigs.end());
      }
    for (int k = 1; k < L; ++k) {
      if (k == L / 2) continue;
      auto block = spectral::sector_project(terms, {.momentum = k});
      auto eigs = sorted_eigs(block.h);
      merged.insert(merged.end(), eigs.begin(), eigs.end());
    }
    std::sort(merged.begin(), merged.end());
    REQUIRE(merged.size() == full.size());
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(std::abs(merged[i] - full[i]) < 1e-9);
  }

  SUBCASE("inversion family") {
    std::vector<double> merged;
    for (int inv : {1, -1}) {
      auto block = spectral::sector_project(terms, {.inversion = inv});
      auto eigs = sorted_eigs(block.h);
      merged.insert(merged.end(), eigs.begin(), eigs.end());
    }
    std::sort(merged.begin(), merged.end());
    REQUIRE(merged.size() == full.size());
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(std::abs(merged[i] - full[i]) < 1e-9);
  }
}

TEST_CASE("staggered-P sector family reassembles the undeformed spectrum") {
  const int L = 8;
  ChainGeometry geom(L);
  auto terms = ham::hpx_terms(geom);
  auto full = sorted_eigs(ham::build_hpx(geom).to_dense());
  std::vector<double> merged;
  for (const auto& [p, count] : spectral::staggered_p_spectrum(L)) {
    auto block = spectral::sector_project(terms, {.p_value = p});
    CHECK(block.basis.dim() == count);
    auto eigs = sorted_eigs(block.h);
    merged.insert(merged.end(), eigs.begin(), eigs.end());
  }
  std::sort(merged.begin(), merged.end());
  REQUIRE(merged.size() == full.size());
  for (std::size_t i = 0; i < full.size(); ++i) CHECK(std::abs(merged[i] - full[i]) < 1e-9);
}

TEST_CASE("sector eigenvectors embed back as true eigenvectors") {
  const int L = 6;
  auto terms = ham::hpx_terms(ChainGeometry(L));
  auto h = ham::build_hpx(ChainGeometry(L));
  for (spectral::SectorSpec spec :
       {spectral::SectorSpec{.momentum = 2}, spectral::SectorSpec{.momentum = 0, .inversion = -1},
        spectral::SectorSpec{.momentum = 0, .inversion = 1, .p_value = 0}}) {
    auto block = spectral::sector_project(terms, spec);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block.h);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      StateVector v = spectral::embed_in_full_space(block.basis, es.eigenvectors().col(i));
      CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-10));
      StateVector hv = apply(h, v);
      double diff = 0.0;
      for (std::size_t z = 0; z < v.dim(); ++z)
        diff = std::max(diff, std::abs(hv.amp[z] - es.eigenvalues()[i] * v.amp[z]));
      CHECK(diff < 1e-10);
    }
  }
}

TEST_CASE("incompatible sector requests are rejected") {
  auto terms_g = ham::hpx_g_terms(ChainGeometry(8), 1.0);
  CHECK_THROWS_AS((void)spectral::sector_project(terms_g, {.p_value = 0}), std::invalid_argument);

  auto terms = ham::hpx_terms(ChainGeometry(8));
  CHECK_THROWS_AS((void)spectral::sector_project(terms, {.momentum = 1, .inversion = 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)spectral::sector_project(terms, {.momentum = 0, .p_value = 4}),
                  std::invalid_argument);
  auto odd = ham::hpx_terms(ChainGeometry(7));
  CHECK_THROWS_AS((void)spectral::sector_project(odd, {.p_value = 0}), std::invalid_argument);
  auto open_chain = ham::hpx_terms(ChainGeometry(8, Boundary::open));
  CHECK_THROWS_AS((void)spectral::sector_project(open_chain, {.momentum = 1}), std::invalid_argument);
}

TEST_CASE("chiral pairing: the full spectrum is symmetric about zero") {
  for (double g : {0.0, 3.0}) {
    auto eigs = sorted_eigs(ham::build_hpx_g(ChainGeometry(8), g).to_dense());
    for (std::size_t i = 0; i < eigs.size(); ++i)
      CHECK(std::abs(eigs[i] + eigs[eigs.size() - 1 - i]) < 1e-9);
  }
}

TEST_CASE("spacing ratios: exact ladders and the Poisson reference") {
  std::vector<double> ladder;
  for (int i = 0; i < 50; ++i) ladder.push_back(0.37 * i);
  auto st = spectral::r_statistics(ladder);
  CHECK(st.mean == doctest::Approx(1.0).epsilon(1e-12));

  // i.i.d. exponential spacings -> <r> = 2 ln 2 - 1
  std::mt19937_64 rng(12345);
  std::vector<double> poisson{0.0};
  for (int i = 0; i < 100000; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    poisson.push_back(poisson.back() - std::log1p(-u));
  }
  auto ps = spectral::r_statistics(poisson);
  CHECK(std::abs(ps.mean - (2.0 * std::log(2.0) - 1.0)) < 0.005);

  CHECK_THROWS_AS((void)spectral::r_statistics({1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("degenerate levels are merged before the ratio statistics") {
  std::vector<double> ladder;
  for (int i = 0; i < 40; ++i) {
    ladder.push_back(1.0 * i);
    ladder.push_back(1.0 * i + 1e-13);  // exact-degeneracy noise
  }
  auto st = spectral::r_statistics(ladder);
  CHECK(st.mean == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("unfolding: ladder spacings and the orthogonal-ensemble surmise") {
  std::vector<double> ladder;
  for (int i = 0; i < 400; ++i) ladder.push_back(2.5 * i);
  auto uf = spectral::unfold_and_histogram(ladder, 3);
  CHECK(uf.mean_spacing == doctest::Approx(1.0).epsilon(0.02));
  for (double s : uf.spacings) CHECK(s == doctest::Approx(1.0).epsilon(0.05));

  // one orthogonal-ensemble sample: KS distance below 0.05
  std::mt19937_64 rng(777);
  auto gauss = [&] {
    const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
  };
  const int n = 500;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double x = gauss() * (i == j ? std::sqrt(2.0) : 1.0);
      m(i, j) = x;
      m(j, i) = x;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> eigs(es.eigenvalues().data(), es.eigenvalues().data() + n);
  auto uf2 = spectral::unfold_and_histogram(eigs, 10);
  CHECK(std::abs(uf2.mean_spacing - 1.0) < 0.02);
  CHECK(spectral::ks_distance_to_wigner(uf2.spacings) < 0.05);
}

TEST_CASE("most symmetric sector of the undeformed model is level-repulsive") {
  const int L = 12;
  auto terms = ham::hpx_terms(ChainGeometry(L));
  auto block = spectral::sector_project(terms, {.momentum = 0, .inversion = 1, .p_value = 0});
  auto eigs = sorted_eigs(block.h);
  auto st = spectral::r_statistics(eigs);
  CHECK(st.mean > 0.40);  // repulsion well above the Poisson value already at L = 12
  CHECK(st.mean < 0.60);
}

TEST_CASE("eigen-entropy scatter: self-consistency and low-entropy outliers near zero energy") {
  const int L = 10;
  auto h = ham::build_hpx(ChainGeometry(L));
  auto scatter = spectral::eigen_entropy_scatter(h, L, {1, L / 2});
  REQUIRE(scatter.size() == h.dim());

  std::vector<double> near_zero;
  for (const auto& [e, s] : scatter)
    if (std::abs(e) < 0.5) near_zero.push_back(s);
  REQUIRE(near_zero.size() > 10);
  std::sort(near_zero.begin(), near_zero.end());
  const double median = near_zero[near_zero.size() / 2];
  CHECK(near_zero.front() < 0.5);  // anomalously weakly entangled states exist
  CHECK(median > 1.0);             // while typical states are volume-law entangled

  // sector scatter agrees with direct entropies of the embedded eigenvectors
  auto terms = ham::hpx_terms(ChainGeometry(8));
  auto block = spectral::sector_project(terms, {.momentum = 0, .inversion = 1});
  auto sector_scatter = spectral::eigen_entropy_scatter(block, {1, 4});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block.h);
  for (std::size_t i = 0; i < sector_scatter.size(); ++i) {
    StateVector v = spectral::embed_in_full_space(block.basis, es.eigenvectors().col(static_cast<Eigen::Index>(i)));
    StateVector unit = v;
    unit *= 1.0 / v.norm();
    CHECK(sector_scatter[i].second ==
          doctest::Approx(entanglement_entropy(unit, {1, 4})).epsilon(1e-8));
  }
}

TEST_CASE("overlap spectrum: exact eigenstate, stabilized momentum state, narrow window") {
  const int L = 10;
  ChainGeometry geom(L);
  auto h0 = ham::build_hpx(geom);

  // a nondegenerate interior eigenstate overlaps only itself
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h0.to_dense());
  Eigen::Index pick = -1;
  for (Eigen::Index i = 1; i + 1 < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] - es.eigenvalues()[i - 1] > 1e-6 &&
        es.eigenvalues()[i + 1] - es.eigenvalues()[i] > 1e-6) {
      pick = i;
      break;
    }
  REQUIRE(pick >= 0);
  StateVector v(L);
  for (std::size_t z = 0; z < v.dim(); ++z) v.amp[z] = es.eigenvectors()(static_cast<Eigen::Index>(z), pick);
  auto ov = spectral::overlap_spectrum(v, h0);
  double total = 0.0, best = 0.0;
  for (const auto& [e, w] : ov) {
    total += w;
    best = std::max(best, w);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(best > 1.0 - 1e-9);

  tb::TBRing ring(L);
  StateVector detuned = tb::momentum_state(ring, L / 2 + 1);

  // strong stabilizer pins the state onto a single eigenstate
  auto ov10 = spectral::overlap_spectrum(detuned, ham::build_hpx_g(geom, 10.0));
  double best10 = 0.0;
  for (const auto& [e, w] : ov10) best10 = std::max(best10, w);
  CHECK(best10 > 0.9);

  // without it the support concentrates in a narrow window around E = 0
  auto ov0 = spectral::overlap_spectrum(detuned, h0);
  double inside = 0.0;
  for (const auto& [e, w] : ov0)
    if (std::abs(e) < 1.0) inside += w;
  CHECK(inside > 0.6);
}

TEST_CASE("zero mode census") {
  const int L = 8;
  auto h = ham::build_hpx(ChainGeometry(L));
  auto census = spectral::zero_mode_census(h, L, 1e-10);
  CHECK(census.kernel_dim >= 7);  // 3 analytic states + 4 product modes at minimum
  REQUIRE(census.candidate_defects.size() == 7);
  for (double d : census.candidate_defects) CHECK(d < 1e-8);

  const int L6 = 6;
  auto census6 = spectral::zero_mode_census(ham::build_hpx(ChainGeometry(L6)), L6, 1e-10);
  REQUIRE(census6.candidate_defects.size() == 3);
  for (double d : census6.candidate_defects) CHECK(d < 1e-8);
}

TEST_CASE("weighted sector aggregation") {
  CHECK(spectral::weighted_mean_r({{0.5, 100}, {0.3, 300}}) == doctest::Approx(0.35));
  CHECK_THROWS_AS((void)spectral::weighted_mean_r({}), std::invalid_argument);
}
