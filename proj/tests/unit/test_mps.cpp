#include <gtest/gtest.h>

#include <cmath>

#include "entkit/bipartite.hpp"
#include "entkit/mps.hpp"
#include "entkit/states.hpp"
#include "gen.hpp"

using namespace entkit;

namespace {

// Amplitude of |s_1 ... s_N> as the explicit matrix product
// A[0][s_1] A[1][s_2] ... A[N-1][s_N].
Vec contract_oracle(const std::vector<std::vector<Mat>>& t) {
  const int n = static_cast<int>(t.size());
  std::int64_t total = 1;
  for (const auto& site : t) total *= static_cast<std::int64_t>(site.size());
  Vec out(total);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t rem = idx;
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
      const auto d = static_cast<std::int64_t>(t[static_cast<std::size_t>(k)].size());
      digits[static_cast<std::size_t>(k)] = static_cast<int>(rem % d);
      rem /= d;
    }
    Mat prod = Mat::Identity(1, 1);
    for (int k = 0; k < n; ++k) prod = prod * t[static_cast<std::size_t>(k)][static_cast<std::size_t>(digits[static_cast<std::size_t>(k)])];
    out(idx) = prod(0, 0);
  }
  return out;
}

std::vector<std::vector<Mat>> random_tensors(int n, int d, int bond, gen::Rng& g) {
  std::vector<std::vector<Mat>> t(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const int l = k == 0 ? 1 : bond;
    const int r = k == n - 1 ? 1 : bond;
    for (int s = 0; s < d; ++s) t[static_cast<std::size_t>(k)].push_back(gen::gaussian_matrix(l, r, g));
  }
  return t;
}

double overlap_deficiency(const Vec& a, const Vec& b) { return 1.0 - std::abs(a.dot(b)) / (a.norm() * b.norm()); }

// Two-site projector on total spin 2 for spin-1 pairs, from X = s.s with
// eigenvalues -2, -1, 1 on spin 0, 1, 2.
Mat spin2_projector() {
  const Mat x = kron(spin1_x(), spin1_x()) + kron(spin1_y(), spin1_y()) + kron(spin1_z(), spin1_z());
  const Mat id = Mat::Identity(9, 9);
  return (x + 2.0 * id) * (x + id) / 6.0;
}

Mat dense_aklt(int n) {
  const Mat x = kron(spin1_x(), spin1_x()) + kron(spin1_y(), spin1_y()) + kron(spin1_z(), spin1_z());
  const Mat bond = x + x * x / 3.0;
  const auto d = static_cast<Eigen::Index>(std::pow(3, n));
  Mat h = Mat::Zero(d, d);
  for (int i = 0; i + 1 < n; ++i) {
    const Mat left = Mat::Identity(static_cast<Eigen::Index>(std::pow(3, i)), static_cast<Eigen::Index>(std::pow(3, i)));
    const auto rd = static_cast<Eigen::Index>(std::pow(3, n - i - 2));
    h += kron(kron(left, bond), Mat(Mat::Identity(rd, rd)));
  }
  return h;
}

}  // namespace

TEST(MpsState, Validation) {
  std::vector<std::vector<Mat>> bad{{Mat::Ones(1, 2), Mat::Ones(1, 2)}, {Mat::Ones(3, 1), Mat::Ones(3, 1)}};
  EXPECT_THROW(MPSState{bad}, Error);
  std::vector<std::vector<Mat>> open{{Mat::Ones(2, 2), Mat::Ones(2, 2)}, {Mat::Ones(2, 1), Mat::Ones(2, 1)}};
  EXPECT_THROW(MPSState{open}, Error);
  EXPECT_THROW(MPSState{{}}, Error);
}

TEST(ToMps, ProductStateHasUnitBonds) {
  gen::Rng g(1);
  const MPSState m = to_mps(gen::product_pure(Dims::uniform(6, 3), g), 1 << 20);
  for (int b : m.bonds()) EXPECT_EQ(b, 1);
}

TEST(ToMps, GhzHasBondTwo) {
  for (int n = 2; n <= 10; ++n) {
    const MPSState m = to_mps(ghz(n), 1 << 20);
    for (int b : m.bonds()) EXPECT_EQ(b, 2);
    EXPECT_LT(overlap_deficiency(mps_to_dense(m).vector(), ghz(n).vector()), 1e-10);
  }
}

TEST(ToMps, GenericStateIsExactAtFullBond) {
  const QState psi = random_pure(Dims::uniform(6, 2), 7);
  const MPSState m = to_mps(psi, 8);
  EXPECT_EQ(m.max_bond(), 8);
  EXPECT_LT((mps_to_dense(m).vector() - psi.vector()).norm(), 1e-9);
}

TEST(ToMps, Errors) {
  EXPECT_THROW(to_mps(psi_minus().as_mixed(), 4), Error);
  EXPECT_THROW(to_mps(QState::pure(basis_vector(6, 0), Dims{2, 3}), 4), Error);
  EXPECT_THROW(to_mps(psi_minus(), 0), Error);
}

TEST(ToMps, LeftCanonical) {
  gen::Rng g(2);
  const MPSState m = to_mps(QState::pure(gen::unit_vector(243, g), Dims::uniform(5, 3)), 1 << 20);
  for (int k = 0; k + 1 < m.sites(); ++k) {
    const auto& a = m.site(k);
    Mat sum = Mat::Zero(a[0].cols(), a[0].cols());
    for (const auto& as : a) sum += as.adjoint() * as;
    EXPECT_LT((sum - Mat::Identity(sum.rows(), sum.cols())).norm(), 1e-10);
  }
}

TEST(ToMps, RoundTripRandomStates) {
  for (int t = 0; t < 50; ++t) {
    const QState psi = random_pure(Dims::uniform(8, 2), 100 + static_cast<std::uint64_t>(t));
    const QState back = mps_to_dense(to_mps(psi, 1 << 20));
    ASSERT_LE(overlap_deficiency(back.vector(), psi.vector()), 1e-9);
  }
}

TEST(ToMps, BondsMatchSchmidtRanks) {
  gen::Rng g(3);
  for (int t = 0; t < 30; ++t) {
    // Random low-bond MPS so the ranks differ from the generic maximum.
    const int n = g.integer(3, 7);
    const auto tensors = random_tensors(n, 2, g.integer(1, 3), g);
    const Vec v = contract_oracle(tensors);
    const QState psi = QState::pure(v / v.norm(), Dims::uniform(n, 2));
    const MPSState m = to_mps(psi, 1 << 20, 1e-10);
    for (int cut = 1; cut < n; ++cut) {
      std::vector<int> left;
      for (int k = 0; k < cut; ++k) left.push_back(k);
      EXPECT_EQ(m.bond(cut), schmidt(psi, Bipartition(left, n)).rank) << "cut " << cut;
    }
  }
}

TEST(ToMps, TruncationErrorIsMonotone) {
  for (int t = 0; t < 10; ++t) {
    const QState psi = random_pure(Dims::uniform(8, 2), 500 + static_cast<std::uint64_t>(t));
    double prev = 2.0;
    for (int chi = 1; chi <= 16; ++chi) {
      const double err = overlap_deficiency(mps_to_dense(to_mps(psi, chi)).vector(), psi.vector());
      EXPECT_LE(err, prev + 1e-12) << chi;
      EXPECT_LE(to_mps(psi, chi).max_bond(), chi);
      prev = err;
    }
    EXPECT_LT(prev, 1e-9);
  }
}

TEST(MpsToDense, MatchesContractionOracle) {
  gen::Rng g(4);
  for (int t = 0; t < 20; ++t) {
    const int n = g.integer(2, 6);
    const int d = g.integer(2, 3);
    const auto tensors = random_tensors(n, d, 3, g);
    const MPSState m(tensors);
    const Vec want = contract_oracle(tensors);
    EXPECT_LT(overlap_deficiency(mps_to_dense(m).vector(), want), 1e-9);
    EXPECT_NEAR(m.norm_squared(), want.squaredNorm(), 1e-9 * want.squaredNorm());
    EXPECT_EQ(mps_to_dense(m).dims(), Dims::uniform(n, d));
  }
}

TEST(MpsToDense, RoundTrips) {
  const QState g8 = mps_to_dense(to_mps(ghz(8), 1 << 20));
  EXPECT_LT(overlap_deficiency(g8.vector(), ghz(8).vector()), 1e-10);
  const QState v6 = mps_to_dense(vbs_state(6));
  const QState back = mps_to_dense(to_mps(v6, 1 << 20));
  EXPECT_LT(overlap_deficiency(back.vector(), v6.vector()), 1e-10);
  EXPECT_LE(to_mps(v6, 1 << 20).max_bond(), 2);
}

TEST(MpsToDense, Budget) {
  std::vector<std::vector<Mat>> t(21, std::vector<Mat>(2, Mat::Ones(1, 1)));
  EXPECT_THROW(mps_to_dense(MPSState(t)), Error);
}

TEST(Spin1, Algebra) {
  const cplx i{0.0, 1.0};
  const Mat x = spin1_x(), y = spin1_y(), z = spin1_z();
  EXPECT_LT((x * y - y * x - i * z).norm(), 1e-14);
  EXPECT_LT((y * z - z * y - i * x).norm(), 1e-14);
  EXPECT_LT((x * x + y * y + z * z - 2.0 * Mat::Identity(3, 3)).norm(), 1e-14);
  EXPECT_NEAR(z(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(z(2, 2).real(), -1.0, 1e-15);
  // Condon-Shortley: S+ has positive entries sqrt(2).
  const Mat sp = x + i * y;
  EXPECT_NEAR(sp(0, 1).real(), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(sp(1, 2).real(), std::sqrt(2.0), 1e-14);
}

TEST(Aklt, MatchesDenseConstruction) {
  for (int n = 2; n <= 5; ++n) {
    const Mat h = aklt_hamiltonian(n).to_dense().matrix();
    EXPECT_LT((h - dense_aklt(n)).norm(), 1e-12);
  }
  EXPECT_THROW(aklt_hamiltonian(1), Error);
  EXPECT_THROW(aklt_hamiltonian(11), Error);
}

TEST(Aklt, TwoSiteSpectrum) {
  const RVec ev = eigvals_hermitian(aklt_hamiltonian(2).to_dense().matrix());
  EXPECT_NEAR(ev(0), -2.0 / 3.0, 1e-12);
  // Bond term 2 P2 - 2/3: five eigenvalues 4/3, four at -2/3.
  EXPECT_NEAR(ev(8), 4.0 / 3.0, 1e-12);
}

TEST(Aklt, CommutesWithTotalSz) {
  for (int n = 2; n <= 6; ++n) {
    const SpMat h = aklt_hamiltonian(n).matrix();
    const RVec sz = spin1_total_sz(n);
    const SpMat szm = Mat(sz.cast<cplx>().asDiagonal()).sparseView();
    EXPECT_LT(Mat(h * szm - szm * h).norm(), 1e-12);
  }
}

TEST(GroundState, SimpleExamples) {
  const auto z = ground_state_exact(Observable(pauli_z(), Dims{2}));
  EXPECT_NEAR(z.energy, -1.0, 1e-14);
  EXPECT_NEAR(std::abs(z.vector(1)), 1.0, 1e-14);
  EXPECT_EQ(z.degeneracy, 1);
  const auto id = ground_state_exact(Observable(Mat::Identity(4, 4), Dims{2, 2}));
  EXPECT_NEAR(id.energy, 1.0, 1e-14);
  EXPECT_EQ(id.degeneracy, 4);
  EXPECT_NEAR(id.vector.norm(), 1.0, 1e-14);
}

TEST(GroundState, AkltFourSitesDense) {
  const auto gs = ground_state_exact(aklt_hamiltonian(4).to_dense());
  EXPECT_NEAR(gs.energy, -2.0, 1e-10);
  EXPECT_EQ(gs.degeneracy, 4);
  // The four edge configurations of the VBS span the ground space.
  Mat edges(81, 4);
  int c = 0;
  for (int l = 0; l < 2; ++l) {
    for (int r = 0; r < 2; ++r) edges.col(c++) = mps_to_dense(vbs_state(4, basis_vector(2, l), basis_vector(2, r))).vector();
  }
  const Mat overlap = gs.space.adjoint() * edges;
  // Every edge state lies in the ground space and together they span it.
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(overlap.col(k).norm(), 1.0, 1e-8);
  const RVec sv = svd(edges).s;
  EXPECT_GT(sv(3), 1e-3);
}

TEST(GroundState, SectorsAgreeWithDense) {
  for (int n = 2; n <= 5; ++n) {
    const auto h = aklt_hamiltonian(n);
    const auto a = ground_state_exact(h.to_dense());
    const auto b = ground_state_sectors(h, spin1_total_sz(n));
    EXPECT_NEAR(a.energy, b.energy, 1e-10);
    EXPECT_EQ(a.degeneracy, b.degeneracy);
    const Mat proj = b.space.adjoint() * a.space;
    EXPECT_NEAR(proj.norm(), std::sqrt(static_cast<double>(a.degeneracy)), 1e-8);
  }
}

TEST(GroundState, SectorsRejectNonConservedCharge) {
  const SpMat x = embed_local(pauli_x(), Dims{2, 2}, 0);
  const SparseObservable h(x, Dims{2, 2});
  RVec charge(4);
  charge << 1, 0, 0, -1;
  EXPECT_THROW(ground_state_sectors(h, charge), Error);
}

TEST(Vbs, BondsAndNorm) {
  for (int n = 2; n <= 10; ++n) {
    const MPSState v = vbs_state(n);
    for (int b : v.bonds()) EXPECT_EQ(b, 2);
    EXPECT_NEAR(v.norm_squared(), 1.0, 1e-12);
  }
  EXPECT_THROW(vbs_state(1), Error);
}

TEST(Vbs, AnnihilatedBySpinTwoProjectors) {
  const Mat p2 = spin2_projector();
  for (int n = 2; n <= 6; ++n) {
    const Vec v = mps_to_dense(vbs_state(n)).vector();
    for (int i = 0; i + 1 < n; ++i) {
      const auto l = static_cast<Eigen::Index>(std::pow(3, i));
      const auto r = static_cast<Eigen::Index>(std::pow(3, n - i - 2));
      const Mat op = kron(kron(Mat(Mat::Identity(l, l)), p2), Mat(Mat::Identity(r, r)));
      EXPECT_LT((op * v).norm(), 1e-12) << n << " bond " << i;
    }
  }
}

TEST(Vbs, EnergyIsGroundEnergy) {
  for (int n = 3; n <= 8; ++n) {
    const auto h = aklt_hamiltonian(n);
    const Vec v = mps_to_dense(vbs_state(n)).vector();
    const double e = v.dot(h.matrix() * v).real();
    EXPECT_NEAR(e, -2.0 / 3.0 * (n - 1), 1e-8);
    const auto gs = ground_state_sectors(h, spin1_total_sz(n));
    EXPECT_NEAR(gs.energy, e, 1e-8);
    EXPECT_EQ(gs.degeneracy, 4);
    EXPECT_LT((h.matrix() * v - gs.energy * v).norm(), 1e-8);
  }
}

TEST(EntanglementSpectrum, Examples) {
  const RVec v = entanglement_spectrum(vbs_state(8), 4);
  int above = 0;
  for (double x : v) {
    if (x > 1e-12) ++above;
  }
  EXPECT_EQ(above, 2);
  EXPECT_NEAR(v(0), 0.5, 0.01);
  EXPECT_NEAR(v(1), 0.5, 0.01);

  for (int cut = 1; cut < 6; ++cut) {
    const RVec g = entanglement_spectrum(ghz(6), cut);
    EXPECT_NEAR(g(0), 0.5, 1e-12);
    EXPECT_NEAR(g(1), 0.5, 1e-12);
    EXPECT_NEAR(g.tail(g.size() - 2).cwiseAbs().sum(), 0.0, 1e-12);
  }
  gen::Rng rng(5);
  const RVec p = entanglement_spectrum(gen::product_pure(Dims::uniform(4, 2), rng), 2);
  EXPECT_NEAR(p(0), 1.0, 1e-12);
  EXPECT_THROW(entanglement_spectrum(ghz(4), 0), Error);
  EXPECT_THROW(entanglement_spectrum(ghz(4), 4), Error);
  EXPECT_THROW(entanglement_spectrum(vbs_state(4), 4), Error);
  EXPECT_THROW(entanglement_spectrum(ghz(4).as_mixed(), 2), Error);
}

TEST(EntanglementSpectrum, VbsRankTwoAtEveryCut) {
  for (int n = 2; n <= 10; ++n) {
    const MPSState v = vbs_state(n);
    for (int cut = 1; cut < n; ++cut) {
      const RVec s = entanglement_spectrum(v, cut);
      EXPECT_EQ((s.array() > 1e-12).count(), 2) << n << "," << cut;
      EXPECT_NEAR(s.sum(), 1.0, 1e-10);
    }
  }
}

TEST(EntanglementSpectrum, MatchesSchmidtCoefficients) {
  gen::Rng g(6);
  for (int t = 0; t < 30; ++t) {
    const int n = g.integer(2, 6);
    const QState psi = QState::pure(gen::unit_vector(1 << n, g), Dims::uniform(n, 2));
    const int cut = g.integer(1, n - 1);
    std::vector<int> left;
    for (int k = 0; k < cut; ++k) left.push_back(k);
    const RVec sch = schmidt(psi, Bipartition(left, n)).coefficients;
    const RVec dense = entanglement_spectrum(psi, cut);
    const RVec viaMps = entanglement_spectrum(to_mps(psi, 1 << 20), cut);
    for (Eigen::Index i = 0; i < sch.size(); ++i) {
      EXPECT_NEAR(dense(i), sch(i), 1e-10);
      EXPECT_NEAR(viaMps(i), sch(i), 1e-10);
    }
    for (Eigen::Index i = 1; i < dense.size(); ++i) EXPECT_GE(dense(i - 1), dense(i));
  }
}

TEST(EntanglementSpectrum, MpsMatchesDenseForRandomTensors) {
  gen::Rng g(7);
  for (int t = 0; t < 20; ++t) {
    const int n = g.integer(3, 6);
    const MPSState m(random_tensors(n, 2, 3, g));
    const QState psi = mps_to_dense(m);
    for (int cut = 1; cut < n; ++cut) {
      const RVec a = entanglement_spectrum(m, cut);
      const RVec b = entanglement_spectrum(psi, cut);
      const auto k = std::min(a.size(), b.size());
      EXPECT_LT((a.head(k) - b.head(k)).norm(), 1e-9);
    }
  }
}

TEST(Scaling, VbsIsFlat) {
  const auto rows = entropy_scaling_report(ScalingKind::vbs, 8);
  ASSERT_EQ(rows.size(), 7u);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.reference, std::log(2.0), 1e-15);
    EXPECT_LE(r.entropy, std::log(2.0) + 0.01);
    if (r.cut >= 2 && r.cut <= 6) EXPECT_NEAR(r.entropy, std::log(2.0), 0.05) << r.cut;
  }
  // A single boundary site carries spectrum close to (2/3, 1/3); the
  // correction decays geometrically with the length.
  const double edge = -(2.0 / 3.0) * std::log(2.0 / 3.0) - (1.0 / 3.0) * std::log(1.0 / 3.0);
  EXPECT_NEAR(rows.front().entropy, edge, 1e-3);
  EXPECT_NEAR(rows.back().entropy, edge, 1e-3);
}

TEST(Scaling, RandomFollowsPage) {
  const int n = 10;
  const auto rows = entropy_scaling_report(ScalingKind::random, n, 20, 3);
  ASSERT_EQ(rows.size(), 9u);
  const double line = (n * std::log(2.0) - 1.0) / 2.0;
  EXPECT_NEAR(rows[4].entropy, line, 0.15 * line);
  for (std::size_t i = 1; i <= 4; ++i) EXPECT_GT(rows[i].entropy, rows[i - 1].entropy);
  for (const auto& r : rows) EXPECT_NEAR(r.entropy, r.reference, 0.15 * r.reference);
}

TEST(Scaling, PageEntropy) {
  EXPECT_NEAR(page_entropy(2, 2), std::log(2.0) - 0.5, 1e-15);
  EXPECT_NEAR(page_entropy(32, 32), std::log(32.0) - 0.5, 1e-12);
  EXPECT_NEAR(page_entropy(4, 256), std::log(4.0) - 4.0 / 512.0, 1e-12);
}
