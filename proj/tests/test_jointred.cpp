#include <gtest/gtest.h>

#include <random>

#include "brmult/icmod.hpp"
#include "brmult/jointred.hpp"
#include "support.hpp"

namespace brm {
namespace {

using namespace brm::testing;

Submodule<Fp> m_ideal() { return Submodule<Fp>::from_ideal(MIdeal<Fp>::maximal(Fp(), 2)); }
Submodule<Fp> m_power(int s) { return Submodule<Fp>::from_ideal(MIdeal<Fp>::maximal_power(Fp(), 2, s)); }
Submodule<Fp> ideal(std::initializer_list<const char*> gens) {
  return Submodule<Fp>::from_ideal(MIdeal<Fp>(Fp(), 2, Ps(gens)));
}
Submodule<Fp> m_plus_m() { return direct_sum(m_ideal(), m_ideal()); }

// Direct sum of monomial ideals, not necessarily integrally closed.
Submodule<Fp> random_monomial_module(std::mt19937_64& rng) {
  const int rank = draw(rng, 1, 2);
  std::optional<Submodule<Fp>> acc;
  for (int i = 0; i < rank; ++i) {
    const int a = draw(rng, 1, 3);
    const int b = draw(rng, 1, 3);
    std::vector<Monomial> monos{Monomial{a, 0}, Monomial{0, b}};
    if (draw(rng, 0, 1)) monos.push_back(Monomial{draw(rng, 1, a), draw(rng, 1, b)});
    const auto part = Submodule<Fp>::from_ideal(MIdeal<Fp>::monomial(Fp(), 2, monos));
    acc = acc ? direct_sum(*acc, part) : part;
  }
  return *acc;
}

TEST(RandomCandidate, FreeModuleGivesBasis) {
  const auto f = Submodule<Fp>::free(Fp(), 2, 3);
  const auto b = random_candidate(std::vector{f}, 3);
  EXPECT_EQ(b.module(0, 2).colength(), 0);
}

TEST(RandomCandidate, DeterministicForSeed) {
  const std::vector ms{m_plus_m(), m_ideal()};
  const auto a = random_candidate(ms, 42);
  const auto b = random_candidate(ms, 42);
  EXPECT_EQ(a.columns, b.columns);
  const auto c = random_candidate(ms, 43);
  EXPECT_NE(a.columns, c.columns);
}

TEST(RandomCandidate, ColumnsLieInModule) {
  const std::vector ms{m_plus_m(), m_power(2)};
  const auto b = random_candidate(ms, 8);
  for (std::size_t k = 0; k < ms.size(); ++k) {
    ASSERT_EQ(b.columns[k].size(), static_cast<std::size_t>(ms[k].rank()));
    for (const auto& col : b.columns[k]) EXPECT_TRUE(ms[k].contains(col));
  }
}

TEST(RandomCandidate, MaximalIdealPairHasColengthOne) {
  const std::vector ms{m_ideal(), m_ideal()};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto b = random_candidate(ms, seed);
    MIdeal<Fp> ab(Fp(), 2, {b.columns[0][0][0], b.columns[1][0][0]});
    EXPECT_EQ(ab.colength(), 1);
  }
}

TEST(VerifyEquational, FreeFactorHoldsAtZero) {
  const std::vector ms{Submodule<Fp>::free(Fp(), 2, 1), m_ideal()};
  const auto b = candidate_from_columns<Fp>({{V({"1"})}, {V({"x"})}});
  EXPECT_TRUE(verify_equational(ms, b, 0).holds);
}

TEST(VerifyEquational, MaximalIdealWithVariables) {
  const std::vector ms{m_ideal(), m_ideal()};
  const auto b = candidate_from_columns<Fp>({{V({"x"})}, {V({"y"})}});
  const auto r = verify_equational(ms, b, 0);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.lhs_colength, 3);
}

TEST(VerifyEquational, SameVariableTwiceFails) {
  const std::vector ms{m_ideal(), m_ideal()};
  const auto b = candidate_from_columns<Fp>({{V({"x"})}, {V({"x"})}});
  const auto sweep = joint_reduction_number(ms, b, 3);
  EXPECT_FALSE(sweep.number.has_value());
  EXPECT_EQ(sweep.n_max, 3);
}

TEST(VerifyEquational, IntegrallyClosedPairAtZero) {
  const std::vector ms{m_plus_m(), m_ideal()};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    EXPECT_TRUE(verify_equational(ms, random_candidate(ms, seed), 0).holds);
  }
}

TEST(JointReductionNumber, FullModulesGiveZero) {
  const std::vector ms{m_ideal(), ideal({"x^2", "y"})};
  const auto b = candidate_from_columns<Fp>({{V({"x"})}, {V({"y"})}});
  EXPECT_EQ(joint_reduction_number(ms, b).number, std::optional<int>(0));
  const std::vector frees{Submodule<Fp>::free(Fp(), 2, 1), Submodule<Fp>::free(Fp(), 2, 1)};
  const auto one = candidate_from_columns<Fp>({{V({"1"})}, {V({"1"})}});
  EXPECT_EQ(joint_reduction_number(frees, one).number, std::optional<int>(0));
}

TEST(JointReductionNumber, NonClosedPairIsRecorded) {
  const auto i = ideal({"x^2", "y^2"});
  const std::vector ms{i, i};
  const auto b = candidate_from_columns<Fp>({{V({"x^2"})}, {V({"y^2"})}});
  const auto sweep = joint_reduction_number(ms, b);
  ASSERT_TRUE(sweep.number.has_value());
  // (x^2, y^2)^2 = x^2 (x^2, y^2) + y^2 (x^2, y^2) already.
  EXPECT_EQ(*sweep.number, 0);
}

TEST(JointReductionNumber, SweepIsMonotone) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    const std::vector ms{random_monomial_module(rng), random_monomial_module(rng)};
    const auto b = random_candidate(ms, static_cast<std::uint64_t>(trial));
    bool seen = false;
    for (int n = 0; n <= 3; ++n) {
      const bool holds = verify_equational(ms, b, n).holds;
      if (seen) EXPECT_TRUE(holds) << "trial " << trial << " n " << n;
      seen = seen || holds;
    }
  }
}

TEST(VerifyDeterminantal, WorkedExampleAgrees) {
  const auto m2 = Submodule<Fp>(Fp(), 2, 2, {V({"y", "x"}), V({"x", "y"}), V({"y", "0"})});
  const std::vector ms{m_ideal(), m2};
  const auto b = candidate_from_columns<Fp>({{V({"x"})}, {V({"y", "x"}), V({"x", "y"})}});
  const auto eq = joint_reduction_number(ms, b);
  const auto det = verify_determinantal(ms, b);
  EXPECT_EQ(eq.number.has_value(), det.holds);
}

TEST(VerifyDeterminantal, UnitDeterminantIsStandardReduction) {
  const std::vector ms{Submodule<Fp>::free(Fp(), 2, 1), m_ideal()};
  const auto b = candidate_from_columns<Fp>({{V({"1"})}, {V({"x"})}});
  const auto det = verify_determinantal(ms, b);
  EXPECT_TRUE(det.holds);
  EXPECT_EQ(det.n, std::optional<int>(0));
}

TEST(VerifyDeterminantal, EquivalentToEquationalOnSamples) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    const std::vector ms{random_monomial_module(rng), random_monomial_module(rng)};
    const auto b = random_candidate(ms, static_cast<std::uint64_t>(trial));
    const auto eq = joint_reduction_number(ms, b, 4);
    const auto det = verify_determinantal(ms, b, 4);
    EXPECT_EQ(eq.number.has_value(), det.holds) << "trial " << trial;
  }
}

TEST(VerifyDeterminantal, DegenerateCandidateFailsBoth) {
  const std::vector ms{m_plus_m(), m_ideal()};
  const auto b = candidate_from_columns<Fp>({{V({"x", "0"}), V({"y", "0"})}, {V({"y"})}});
  EXPECT_FALSE(joint_reduction_number(ms, b, 3).number.has_value());
  EXPECT_FALSE(verify_determinantal(ms, b, 3).holds);
}

TEST(Genericity, NearlyAllSeedsGiveJointReductions) {
  const std::vector ms{m_plus_m(), m_power(2)};
  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    good += joint_reduction_number(ms, random_candidate(ms, seed), 2).number.has_value() ? 1 : 0;
  }
  EXPECT_GE(good, 99);
}

TEST(Freeness, GenericDrawsAreFreeAndExtendable) {
  const std::vector ms{m_plus_m(), m_ideal()};
  const auto rep = freeness_and_minimality_check(ms, random_candidate(ms, 4));
  EXPECT_EQ(rep.det_nonzero, (std::vector<bool>{true, true}));
  EXPECT_EQ(rep.extends_mingen, (std::vector<bool>{true, true}));
}

TEST(Freeness, ColumnInMaximalTimesModule) {
  const std::vector ms{m_ideal(), m_ideal()};
  const auto b = candidate_from_columns<Fp>({{V({"x*y"})}, {V({"y"})}});
  const auto rep = freeness_and_minimality_check(ms, b);
  EXPECT_FALSE(rep.extends_mingen[0]);
  EXPECT_TRUE(rep.extends_mingen[1]);
}

TEST(Freeness, RepeatedColumnHasZeroDeterminant) {
  const std::vector ms{m_plus_m(), m_ideal()};
  const auto b = candidate_from_columns<Fp>({{V({"x", "y"}), V({"x", "y"})}, {V({"y"})}});
  const auto rep = freeness_and_minimality_check(ms, b);
  EXPECT_FALSE(rep.det_nonzero[0]);
  EXPECT_TRUE(rep.det_nonzero[1]);
  EXPECT_FALSE(joint_reduction_number(ms, b, 3).number.has_value());
}

TEST(JointReduction, WrongColumnCountRejected) {
  const std::vector ms{m_plus_m(), m_ideal()};
  const auto b = candidate_from_columns<Fp>({{V({"x", "y"})}, {V({"y"})}});
  EXPECT_THROW(verify_equational(ms, b, 0), CandidateNotJointReduction);
}

}  // namespace
}  // namespace brm
