#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "entkit/bipartite.hpp"
#include "entkit/multipartite.hpp"
#include "entkit/states.hpp"
#include "gen.hpp"

using namespace entkit;

namespace {

// Independent tau: with slices A_i[j][k] = psi[i j k], det(A_0 + t A_1) is
// a quadratic a t^2 + b t + c whose discriminant is the hyperdeterminant.
double tangle_oracle(const Vec& v) {
  auto det2 = [&](cplx p, cplx q, cplx r, cplx s) { return p * s - q * r; };
  const cplx c = det2(v(0), v(1), v(2), v(3));
  const cplx a = det2(v(4), v(5), v(6), v(7));
  const cplx b = v(0) * v(7) + v(4) * v(3) - v(1) * v(6) - v(5) * v(2);
  return 4.0 * std::abs(b * b - 4.0 * a * c);
}

Vec apply_local(const Vec& psi, const Mat& a, const Mat& b, const Mat& c) {
  return gen::kron_all({a, b, c}) * psi;
}

QState lu_perturb(const QState& psi, gen::Rng& g) {
  const Vec v = apply_local(psi.vector(), gen::unitary(2, g), gen::unitary(2, g), gen::unitary(2, g));
  return QState::pure(v / v.norm(), psi.dims());
}

struct Representative {
  const char* name;
  QState state;
  ThreeQubitLabel label;
  std::array<int, 3> ranks;
  bool tangle_positive;
};

std::vector<Representative> canonical_representatives() {
  const Dims d = Dims::uniform(3, 2);
  const Vec zero = basis_vector(2, 0);
  const Vec bell = bell_phi_plus(2).vector();
  auto permuted = [&](std::vector<int> perm) {
    // Bell pair on the other two qubits, |0> on the remaining one.
    return QState::pure(permute_subsystems(kron(zero, bell), d, perm), d);
  };
  return {
      {"sep", basis_state(d, {0, 0, 0}), ThreeQubitLabel::sep, {1, 1, 1}, false},
      {"1|23", permuted({0, 1, 2}), ThreeQubitLabel::b1_23, {1, 2, 2}, false},
      {"2|13", permuted({1, 0, 2}), ThreeQubitLabel::b2_13, {2, 1, 2}, false},
      {"3|12", permuted({1, 2, 0}), ThreeQubitLabel::b3_12, {2, 2, 1}, false},
      {"W", w_state(3), ThreeQubitLabel::w, {2, 2, 2}, false},
      {"GHZ", ghz(3), ThreeQubitLabel::ghz, {2, 2, 2}, true},
  };
}

}  // namespace

TEST(PartitionSpec, ParseAndValidate) {
  const auto p = PartitionSpec::parse("1,2|3|4,5", 5);
  EXPECT_EQ(p.blocks().size(), 3u);
  EXPECT_EQ(p.max_block(), 2);
  EXPECT_EQ(PartitionSpec::parse("1|23", 3).max_block(), 2);
  EXPECT_THROW(PartitionSpec::parse("1|2", 3), Error);
  EXPECT_THROW(PartitionSpec({{0, 1}, {1, 2}}, 3), Error);
  EXPECT_THROW(PartitionSpec({{0}, {}, {1}}, 2), Error);
}

TEST(LocalRanks, Examples) {
  gen::Rng g(1);
  for (const auto& [rank, entropy] : local_ranks_entropies(gen::product_pure(Dims{2, 3, 2}, g))) {
    EXPECT_EQ(rank, 1);
    EXPECT_NEAR(entropy, 0.0, 1e-10);
  }
  const Vec a = gen::unit_vector(2, g);
  const auto bi = local_ranks_entropies(QState::pure(kron(a, bell_phi_plus(2).vector()), Dims{2, 2, 2}));
  EXPECT_EQ(bi[0].rank, 1);
  EXPECT_NEAR(bi[0].entropy, 0.0, 1e-10);
  for (int k : {1, 2}) {
    EXPECT_EQ(bi[static_cast<std::size_t>(k)].rank, 2);
    EXPECT_NEAR(bi[static_cast<std::size_t>(k)].entropy, std::log(2.0), 1e-12);
  }
  for (const auto& [rank, entropy] : local_ranks_entropies(ghz(3))) {
    EXPECT_EQ(rank, 2);
    EXPECT_NEAR(entropy, std::log(2.0), 1e-12);
  }
  EXPECT_THROW(local_ranks_entropies(ghz(3).as_mixed()), Error);
}

TEST(ThreeTangle, Examples) {
  EXPECT_NEAR(three_tangle(ghz(3)), 1.0, 1e-12);
  EXPECT_NEAR(three_tangle(w_state(3)), 0.0, 1e-14);
  gen::Rng g(2);
  for (int t = 0; t < 50; ++t) EXPECT_NEAR(three_tangle(gen::product_pure(Dims::uniform(3, 2), g)), 0.0, 1e-12);
  for (const auto& row : canonical_representatives()) {
    if (!row.tangle_positive) EXPECT_NEAR(three_tangle(row.state), 0.0, 1e-12) << row.name;
  }
  EXPECT_THROW(three_tangle(ghz(4)), Error);
  EXPECT_THROW(three_tangle(QState::pure(basis_vector(12, 0), Dims{2, 2, 3})), Error);
}

TEST(ThreeTangle, MatchesDiscriminantOracle) {
  gen::Rng g(3);
  for (int t = 0; t < 500; ++t) {
    const QState s = QState::pure(gen::unit_vector(8, g), Dims::uniform(3, 2));
    ASSERT_NEAR(three_tangle(s), tangle_oracle(s.vector()), 1e-12);
  }
}

TEST(ThreeTangle, BoundedByOne) {
  gen::Rng g(4);
  for (int t = 0; t < 500; ++t) {
    const double tau = three_tangle(QState::pure(gen::unit_vector(8, g), Dims::uniform(3, 2)));
    EXPECT_GE(tau, 0.0);
    EXPECT_LE(tau, 1.0 + 1e-12);
  }
}

TEST(ThreeTangle, LocalUnitaryInvariance) {
  gen::Rng g(5);
  const QState s = QState::pure(gen::unit_vector(8, g), Dims::uniform(3, 2));
  const double tau = three_tangle(s);
  for (int t = 0; t < 200; ++t) ASSERT_NEAR(three_tangle(lu_perturb(s, g)), tau, 1e-9);
}

TEST(ThreeTangle, SlOccScaling) {
  // Hdet(A⊗B⊗C psi) = (det A det B det C)^2 Hdet(psi).
  gen::Rng g(6);
  for (int t = 0; t < 200; ++t) {
    const bool from_w = g.coin();
    const QState s = from_w ? w_state(3) : QState::pure(gen::unit_vector(8, g), Dims::uniform(3, 2));
    const Mat a = gen::invertible(2, g);
    const Mat b = gen::invertible(2, g);
    const Mat c = gen::invertible(2, g);
    const Vec v = apply_local(s.vector(), a, b, c);
    const double nrm = v.norm();
    const double tau = three_tangle(QState::pure(v / nrm, s.dims()));
    const double scale = std::norm(a.determinant() * b.determinant() * c.determinant()) / std::pow(nrm, 4);
    ASSERT_NEAR(tau, three_tangle(s) * scale, 1e-9);
    if (from_w) {
      ASSERT_LT(tau, 1e-9);
    } else {
      ASSERT_GT(tau, 0.0);
    }
  }
}

TEST(Classify, CanonicalRepresentatives) {
  for (const auto& row : canonical_representatives()) {
    const auto c = classify_3qubit(row.state);
    EXPECT_EQ(c.label, row.label) << row.name;
    EXPECT_EQ(c.local_ranks, row.ranks) << row.name;
    EXPECT_EQ(c.tangle > kTangleTol, row.tangle_positive) << row.name;
  }
  EXPECT_EQ(classify_3qubit(ghz(3)).tensor_rank, 2);
  EXPECT_EQ(classify_3qubit(w_state(3)).tensor_rank, 3);
  EXPECT_EQ(classify_3qubit(basis_state(Dims::uniform(3, 2), {1, 0, 1})).tensor_rank, 1);
}

TEST(Classify, StableUnderLocalUnitaries) {
  gen::Rng g(7);
  for (const auto& row : canonical_representatives()) {
    for (int t = 0; t < 100; ++t) {
      const auto c = classify_3qubit(lu_perturb(row.state, g));
      ASSERT_EQ(c.label, row.label) << row.name << " trial " << t;
      ASSERT_EQ(c.local_ranks, row.ranks);
    }
  }
}

TEST(Classify, GenericStateIsGhz) {
  gen::Rng g(8);
  for (int t = 0; t < 100; ++t) {
    const auto c = classify_3qubit(QState::pure(gen::unit_vector(8, g), Dims::uniform(3, 2)));
    EXPECT_EQ(c.label, ThreeQubitLabel::ghz);
  }
}

TEST(Classify, LabelNames) {
  EXPECT_EQ(to_string(ThreeQubitLabel::sep), "SEP");
  EXPECT_EQ(to_string(ThreeQubitLabel::b1_23), "B_1|23");
  EXPECT_EQ(to_string(ThreeQubitLabel::w), "W");
  EXPECT_EQ(to_string(ThreeQubitLabel::ghz), "GHZ");
}

TEST(Classify, WrongShape) {
  EXPECT_THROW(classify_3qubit(ghz(4)), Error);
  EXPECT_THROW(classify_3qubit(ghz(3).as_mixed()), Error);
}

TEST(PartialSeparability, Examples) {
  const auto singles = PartitionSpec({{0}, {1}, {2}}, 3);
  EXPECT_FALSE(is_partially_separable(ghz(3), singles));
  gen::Rng g(9);
  EXPECT_TRUE(is_partially_separable(gen::product_pure(Dims::uniform(3, 2), g), singles));
  EXPECT_TRUE(is_partially_separable(gen::product_pure(Dims::uniform(3, 2), g), PartitionSpec({{0}, {1, 2}}, 3)));
  const QState bi = QState::pure(kron(basis_vector(2, 0), bell_phi_plus(2).vector()), Dims::uniform(3, 2));
  EXPECT_TRUE(is_partially_separable(bi, PartitionSpec({{0}, {1, 2}}, 3)));
  EXPECT_FALSE(is_partially_separable(bi, PartitionSpec({{0, 1}, {2}}, 3)));
  EXPECT_THROW(is_partially_separable(bi, PartitionSpec({{0}, {1, 2, 3}}, 4)), Error);
}

TEST(PartialSeparability, BlockProductsFactorize) {
  gen::Rng g(10);
  for (int t = 0; t < 50; ++t) {
    // Random state on blocks {0,2} and {1,3}: build in block order then
    // reorder to natural order.
    const Vec a = gen::unit_vector(4, g);
    const Vec b = gen::unit_vector(4, g);
    const Dims d = Dims::uniform(4, 2);
    const std::vector<int> perm{0, 2, 1, 3};
    const QState s = QState::pure(permute_subsystems(kron(a, b), d, perm), d);
    EXPECT_TRUE(is_partially_separable(s, PartitionSpec({{0, 2}, {1, 3}}, 4)));
    EXPECT_FALSE(is_partially_separable(s, PartitionSpec({{0, 1}, {2, 3}}, 4)));
  }
}

TEST(Ame, Examples) {
  const auto r = is_ame(ame43());
  EXPECT_TRUE(r.verdict);
  EXPECT_LE(r.worst_deviation, 1e-12);
  EXPECT_FALSE(is_ame(ghz(4)).verdict);
  EXPECT_NEAR(is_ame(ghz(4)).worst_deviation, 0.25, 1e-12);
  for (int d = 2; d <= 5; ++d) EXPECT_TRUE(is_ame(bell_phi_plus(d)).verdict);
  EXPECT_TRUE(is_ame(ghz(3)).verdict);
  EXPECT_THROW(is_ame(QState::pure(basis_vector(6, 0), Dims{2, 3})), Error);
}

TEST(Ame, ImpliesMaximalCutEntropy) {
  gen::Rng g(11);
  std::vector<QState> candidates{ame43(), ghz(3), bell_phi_plus(3)};
  for (int t = 0; t < 20; ++t) {
    // Local unitaries preserve the AME property.
    const Mat u0 = gen::unitary(3, g);
    const Mat u1 = gen::unitary(3, g);
    const Mat u2 = gen::unitary(3, g);
    const Mat u3 = gen::unitary(3, g);
    candidates.push_back(QState::pure(gen::kron_all({u0, u1, u2, u3}) * ame43().vector(), Dims::uniform(4, 3)));
  }
  for (const auto& s : candidates) {
    ASSERT_TRUE(is_ame(s).verdict);
    const int n = s.dims().size();
    const int half = n / 2;
    const double want = half * std::log(s.dims()[0]);
    for (int mask = 1; mask < (1 << n); ++mask) {
      if (std::popcount(static_cast<unsigned>(mask)) != half) continue;
      std::vector<int> left;
      for (int k = 0; k < n; ++k) {
        if (mask & (1 << k)) left.push_back(k);
      }
      EXPECT_NEAR(entanglement_entropy(s, Bipartition(left, n)), want, 1e-9);
    }
  }
}

TEST(DepthFromQfi, Examples) {
  for (int n = 1; n <= 20; ++n) {
    EXPECT_EQ(depth_from_qfi(static_cast<double>(n) * n, n), n);
    EXPECT_EQ(depth_from_qfi(n, n), 1);
    EXPECT_EQ(depth_from_qfi(0.0, n), 1);
  }
  EXPECT_EQ(depth_from_qfi(10.5, 5), 3);
  EXPECT_EQ(depth_from_qfi(10.0, 5), 2);
  EXPECT_THROW(depth_from_qfi(-1.0, 5), Error);
  EXPECT_THROW(depth_from_qfi(1.0, 0), Error);
}

TEST(DepthFromQfi, ConsistentWithBound) {
  gen::Rng g(12);
  for (int t = 0; t < 1000; ++t) {
    const int n = g.integer(1, 50);
    const double f = g.uniform(0.0, static_cast<double>(n) * n);
    const int k = depth_from_qfi(f, n);
    ASSERT_GE(k, 1);
    ASSERT_LE(k, n);
    ASSERT_LE(f, static_cast<double>(n) * k + 1e-9);
    if (k > 1) ASSERT_GT(f, static_cast<double>(n) * (k - 1));
  }
}
