#include <gtest/gtest.h>

#include <random>

#include "brmult/errors.hpp"
#include "brmult/koszul.hpp"
#include "support.hpp"

namespace brm {
namespace {

using namespace brm::testing;

Endo<Fp> E(std::initializer_list<std::initializer_list<const char*>> rows, int d = 2) {
  std::vector<std::vector<Poly<Fp>>> out;
  for (auto r : rows) out.push_back(Ps(r, d));
  return Endo<Fp>(Fp(), d, out);
}

std::vector<Endo<Fp>> example_pair() { return {E({{"x"}}), E({{"y", "x"}, {"x", "y"}})}; }

TEST(Endo, DeterminantIsCached) {
  EXPECT_EQ(E({{"y", "x"}, {"x", "y"}}).det(), P("y^2 - x^2"));
  EXPECT_EQ(E({{"x", "1", "0"}, {"0", "y", "1"}, {"1", "0", "x*y"}}).det(), P("x^2*y^2 + 1"));
}

TEST(H0Length, WorkedExample) {
  const auto phis = example_pair();
  EXPECT_EQ(h0_length(phis).length, 2);
  EXPECT_EQ(det_koszul_colength(phis), 2);
  const auto rep = verify_comparison(phis);
  EXPECT_TRUE(rep.equal);
  EXPECT_EQ(rep.h0, 2);
}

TEST(H0Length, UnitDeterminantGivesZero) {
  EXPECT_EQ(h0_length(std::vector{E({{"1 + x"}}), E({{"y"}})}).length, 0);
  EXPECT_EQ(h0_length(std::vector{E({{"x", "1"}, {"1", "y"}}), E({{"x"}})}).length, 0);
}

TEST(H0Length, MonomialPair) {
  EXPECT_EQ(h0_length(std::vector{E({{"x^2"}}), E({{"y"}})}).length, 2);
}

TEST(H0Length, RejectsNonPrimaryDeterminants) {
  EXPECT_THROW(h0_length(std::vector{E({{"x"}}), E({{"x*y"}})}, 8), NotFiniteColength);
}

TEST(DetKoszul, Examples) {
  EXPECT_EQ(det_koszul_colength(std::vector{E({{"x"}}), E({{"y^2 - x^2"}})}), 2);
  EXPECT_EQ(det_koszul_colength(std::vector{E({{"x"}}), E({{"y"}})}), 1);
  EXPECT_EQ(det_koszul_colength(std::vector{E({{"x^2"}}), E({{"y^3"}})}), 6);
  EXPECT_THROW(det_koszul_colength(std::vector{E({{"x"}})}), std::invalid_argument);
}

TEST(Comparison, IdentityEndomorphisms) {
  const auto rep = verify_comparison(std::vector{E({{"1", "0"}, {"0", "1"}}), E({{"1"}})});
  EXPECT_TRUE(rep.equal);
  EXPECT_EQ(rep.h0, 0);
  EXPECT_EQ(rep.det_colength, 0);
}

TEST(EndoFromJointReduction, Examples) {
  const auto b = Submodule<Fp>(Fp(), 2, 1, {V({"x"})});
  EXPECT_EQ(endo_from_joint_reduction(b).rows(), E({{"x"}}).rows());
  const auto b2 = Submodule<Fp>(Fp(), 2, 2, {V({"y", "x"}), V({"x", "y"})});
  EXPECT_EQ(endo_from_joint_reduction(b2).det(), P("y^2 - x^2"));
  const auto b3 = Submodule<Fp>(Fp(), 2, 1, {V({"x"}), V({"y"})});
  EXPECT_THROW(endo_from_joint_reduction(b3), CandidateNotJointReduction);
}

// Multiply phi by unimodular matrices on both sides.
TEST(H0Length, UnimodularInvariance) {
  const auto base = example_pair();
  const auto u = E({{"1", "x"}, {"0", "1"}});
  const auto v = E({{"1 + y", "0"}, {"x", "1"}});
  auto mul = [](const Endo<Fp>& a, const Endo<Fp>& b) {
    const int r = a.rank();
    std::vector<std::vector<Poly<Fp>>> rows(r, std::vector<Poly<Fp>>(r, Poly<Fp>(Fp(), 2)));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) rows[i][j] += a.rows()[i][k] * b.rows()[k][j];
    return Endo<Fp>(Fp(), 2, rows);
  };
  const auto changed = std::vector{base[0], mul(mul(u, base[1]), v)};
  EXPECT_EQ(h0_length(changed).length, h0_length(base).length);
}

TEST(H0Length, BlockTriangularAdditivity) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    RandomEndoOptions opt;
    opt.max_rank = 2;
    auto psi = random_endo_family(rng, Fp(), 2, 2, opt);
    auto theta = random_endo_family(rng, Fp(), 2, 2, opt);
    const auto& phi2 = psi[1];
    const auto& a = psi[0];
    const auto& b = theta[0];
    const int ra = a.rank();
    const int rb = b.rank();
    std::vector<std::vector<Poly<Fp>>> rows(ra + rb, std::vector<Poly<Fp>>(ra + rb, Poly<Fp>(Fp(), 2)));
    for (int i = 0; i < ra; ++i)
      for (int j = 0; j < ra; ++j) rows[i][j] = a.rows()[i][j];
    for (int i = 0; i < rb; ++i)
      for (int j = 0; j < rb; ++j) rows[ra + i][ra + j] = b.rows()[i][j];
    for (int i = 0; i < ra; ++i)
      for (int j = 0; j < rb; ++j) rows[i][ra + j] = P(draw(rng, 0, 1) ? "x + y^2" : "1 - x*y");
    const Endo<Fp> block(Fp(), 2, rows);
    const std::vector<Endo<Fp>> whole{block, phi2};
    const std::vector<Endo<Fp>> left{a, phi2};
    const std::vector<Endo<Fp>> right{b, phi2};
    if (!determinant_ideal(right).mprimary_exponent()) continue;
    EXPECT_EQ(h0_length(whole).length, h0_length(left).length + h0_length(right).length) << trial;
    ++checked;
  }
  EXPECT_GE(checked, 10);
}

TEST(Comparison, RandomFamilies) {
  std::mt19937_64 rng(2024);
  int nontrivial = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto phis = random_endo_family(rng, Fp(), 2, 2);
    const auto rep = verify_comparison(phis);
    nontrivial += rep.h0 > 1 ? 1 : 0;
    EXPECT_TRUE(rep.equal) << "trial " << trial << ": " << rep.h0 << " vs " << rep.det_colength;
  }
  EXPECT_GE(nontrivial, 10);
}

TEST(Comparison, RationalAgreesWithPrime) {
  std::mt19937_64 rng_p(5);
  std::mt19937_64 rng_q(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto fp = random_endo_family(rng_p, Fp(), 2, 2);
    const auto q = random_endo_family(rng_q, Q(), 2, 2);
    EXPECT_EQ(h0_length(fp).length, h0_length(q).length);
  }
}

TEST(RandomEndoFamily, DeterministicAndPrimary) {
  std::mt19937_64 a(9);
  std::mt19937_64 b(9);
  const auto x = random_endo_family(a, Fp(), 2, 2);
  const auto y = random_endo_family(b, Fp(), 2, 2);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i].rows(), y[i].rows());
  EXPECT_TRUE(determinant_ideal(x).mprimary_exponent().has_value());
}

}  // namespace
}  // namespace brm
