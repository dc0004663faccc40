#include <gtest/gtest.h>

#include <random>

#include "brmult/errors.hpp"
#include "brmult/icmod.hpp"
#include "support.hpp"

namespace brm {
namespace {

using namespace brm::testing;

MIdeal<Fp> mono(std::vector<Exponent2> exps) {
  std::vector<Monomial> monos;
  for (const auto& e : exps) monos.push_back(Monomial{e[0], e[1]});
  return MIdeal<Fp>::monomial(Fp(), 2, monos);
}
Submodule<Fp> m_power(int s) { return Submodule<Fp>::from_ideal(MIdeal<Fp>::maximal_power(Fp(), 2, s)); }
Submodule<Fp> m_ideal() { return m_power(1); }
Submodule<Fp> m_plus_m() { return direct_sum(m_ideal(), m_ideal()); }
Submodule<Fp> free1() { return Submodule<Fp>::free(Fp(), 2, 1); }

// Integral closure by the power criterion: x^a y^b is integral over I iff
// (x^a y^b)^k lies in I^k for some k; k = 6 suffices for the small ideals here.
bool integral_by_powers(const std::vector<Exponent2>& gens, Exponent2 e) {
  auto in_power = [&](int k, Exponent2 target) {
    // Is target divisible by a product of k generators?
    std::vector<Exponent2> level{{0, 0}};
    for (int i = 0; i < k; ++i) {
      std::vector<Exponent2> next;
      for (const auto& a : level)
        for (const auto& g : gens) next.push_back({a[0] + g[0], a[1] + g[1]});
      level = minimal_monomial_exponents(next);
    }
    for (const auto& a : level)
      if (a[0] <= target[0] && a[1] <= target[1]) return true;
    return false;
  };
  for (int k = 1; k <= 6; ++k)
    if (in_power(k, {k * e[0], k * e[1]})) return true;
  return false;
}

TEST(MonomialClosure, PowersOfMaximalIdeal) {
  for (int s = 1; s <= 5; ++s) EXPECT_TRUE(is_integrally_closed_monomial(MIdeal<Fp>::maximal_power(Fp(), 2, s)));
}

TEST(MonomialClosure, Examples) {
  const auto i = mono({{2, 0}, {0, 2}});
  EXPECT_FALSE(is_integrally_closed_monomial(i));
  EXPECT_TRUE(monomial_closure(i).equals(MIdeal<Fp>::maximal_power(Fp(), 2, 2)));
  EXPECT_EQ(monomial_closure_exponents({{2, 0}, {0, 2}}), (std::vector<Exponent2>{{0, 2}, {1, 1}, {2, 0}}));
  EXPECT_TRUE(is_integrally_closed_monomial(mono({{3, 0}, {1, 1}, {0, 2}})));
  EXPECT_EQ(monomial_closure_exponents({{4, 0}, {0, 2}}), (std::vector<Exponent2>{{0, 2}, {2, 1}, {4, 0}}));
}

TEST(MonomialClosure, RequiresFiniteColength) {
  EXPECT_THROW(monomial_closure_exponents({{1, 1}, {3, 0}}), NotFiniteColength);
}

TEST(MonomialClosure, AgreesWithPowerCriterion) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Exponent2> gens{{draw(rng, 1, 5), 0}, {0, draw(rng, 1, 5)}};
    for (int i = draw(rng, 0, 2); i > 0; --i) gens.push_back({draw(rng, 1, 4), draw(rng, 1, 4)});
    const auto closure = monomial_closure_exponents(gens);
    for (int a = 0; a <= 5; ++a) {
      for (int b = 0; b <= 5; ++b) {
        const bool in_closure = std::any_of(closure.begin(), closure.end(),
                                            [&](const Exponent2& c) { return c[0] <= a && c[1] <= b; });
        EXPECT_EQ(in_closure, integral_by_powers(gens, {a, b})) << trial << " at " << a << "," << b;
      }
    }
  }
}

TEST(MonomialClosure, Idempotent) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = random_complete_ideal(rng, 4);
    EXPECT_EQ(monomial_closure_exponents(c), c);
  }
}

TEST(ICSummand, Formatting) {
  EXPECT_EQ(ICSummand::free_summand().to_string(), "free");
  EXPECT_EQ(ICSummand::maximal_power(1).to_string(), "m");
  EXPECT_EQ(ICSummand::maximal_power(3).to_string(), "m^3");
  EXPECT_EQ(ICSummand::monomial({{3, 0}, {1, 1}, {0, 2}}).to_string(), "mono(y^2, x*y, x^3)");
  EXPECT_EQ(ICSummand::monomial({{3, 0}, {1, 1}, {0, 2}}).order(), 2);
}

TEST(ICModuleSpec, RealizeRejectsNonClosed) {
  ICModuleSpec spec{{ICSummand::monomial({{2, 0}, {0, 2}})}};
  EXPECT_THROW(spec.realize(Fp()), std::invalid_argument);
  ICModuleSpec ok{{ICSummand::maximal_power(2), ICSummand::free_summand()}};
  const auto m = ok.realize(Fp());
  EXPECT_EQ(m.rank(), 2);
  EXPECT_EQ(m.colength(), 3);
  EXPECT_EQ(ok.order(), 2);
}

TEST(Contracted, Examples) {
  EXPECT_TRUE(contracted_numerical_test(m_plus_m()));
  EXPECT_FALSE(contracted_numerical_test(Submodule<Fp>::from_ideal(mono({{2, 0}, {0, 2}}))));
  EXPECT_TRUE(contracted_numerical_test(Submodule<Fp>::free(Fp(), 2, 3)));
}

TEST(Contracted, RandomSpecsAreContracted) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const auto spec = random_ic_spec(rng, 3, 4);
    EXPECT_TRUE(contracted_numerical_test(spec.realize(Fp()))) << spec.to_string();
    EXPECT_GE(spec.order(), 1);
    EXPECT_LE(spec.order(), 4);
  }
}

TEST(MixedMult, MaximalIdeal) {
  const auto m = MIdeal<Fp>::maximal(Fp(), 2);
  const auto rep = mixed_mult_ideals(m, m, {}, 5, 1);
  EXPECT_EQ(rep.route_a, 1);
  EXPECT_EQ(rep.route_b, 1);
  EXPECT_TRUE(rep.equal);
}

TEST(MixedMult, PowersOfMaximalIdeal) {
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      const auto rep = mixed_mult_ideals(MIdeal<Fp>::maximal_power(Fp(), 2, a), MIdeal<Fp>::maximal_power(Fp(), 2, b),
                                         {}, 3, 2);
      // Oracle: colength of (x^a, y^b) by staircase count.
      EXPECT_EQ(rep.route_a, staircase_count({{a, 0}, {0, b}}, 2, 8));
      EXPECT_TRUE(rep.equal) << a << "," << b;
    }
  }
}

TEST(MixedMult, RoutesAgreeAndSymmetric) {
  const auto i = MIdeal<Fp>(Fp(), 2, Ps({"x", "y^2"}));
  const auto j = MIdeal<Fp>(Fp(), 2, Ps({"x^2", "y"}));
  const auto ij = mixed_mult_ideals(i, j, {}, 5, 3);
  const auto ji = mixed_mult_ideals(j, i, {}, 5, 3);
  EXPECT_TRUE(ij.equal);
  EXPECT_EQ(ij.route_a, ji.route_a);
  EXPECT_EQ(ij.route_a, 1);
}

TEST(MixedMult, RandomCompleteIdeals) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    const auto i = mono(random_complete_ideal(rng, 3));
    const auto j = mono(random_complete_ideal(rng, 3));
    const auto rep = mixed_mult_ideals(i, j, {}, 4, static_cast<std::uint64_t>(trial));
    EXPECT_TRUE(rep.stabilized);
    EXPECT_EQ(rep.route_a, rep.route_b) << trial;
  }
}

TEST(SingleBR, KnownValues) {
  EXPECT_EQ(single_br(m_ideal()).value, 1);
  EXPECT_EQ(single_br(m_power(2)).value, 4);
  const auto mm = single_br(m_plus_m());
  EXPECT_TRUE(mm.stabilized);
  EXPECT_EQ(mm.value, 3);
  EXPECT_EQ(single_br(free1()).value, 0);
}

TEST(VerifyJrn0, Examples) {
  EXPECT_TRUE(verify_jrn0(m_ideal(), m_ideal(), 1).equal);
  const auto rep = verify_jrn0(m_plus_m(), m_ideal(), 2);
  EXPECT_TRUE(rep.equal);
  EXPECT_EQ(rep.lhs, 0);
}

TEST(VerifyJrn0, NonClosedIsOnlyRecorded) {
  const auto i = Submodule<Fp>::from_ideal(mono({{2, 0}, {0, 2}}));
  const auto rep = verify_jrn0(i, m_ideal(), 3);
  EXPECT_GE(rep.lhs, 0);
}

TEST(VerifyJrn0, RandomSpecs) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = random_ic_spec(rng, 2, 3).realize(Fp());
    const auto b = random_ic_spec(rng, 2, 3).realize(Fp());
    EXPECT_TRUE(verify_jrn0(a, b, static_cast<std::uint64_t>(trial)).equal) << trial;
  }
}

TEST(VerifyProdLength, Examples) {
  const auto two = verify_prodlength(std::vector{m_ideal(), m_ideal()});
  EXPECT_EQ(two.lhs, 3);
  EXPECT_TRUE(two.equal);
  EXPECT_TRUE(verify_prodlength(std::vector{m_plus_m(), m_ideal()}).equal);
  const auto three = verify_prodlength(std::vector{m_ideal(), m_ideal(), m_ideal()});
  EXPECT_EQ(three.lhs, 6);
  EXPECT_EQ(three.rhs, 6);
  EXPECT_THROW(verify_prodlength(std::vector{m_ideal()}), std::invalid_argument);
}

TEST(VerifyLocalIdentity, Examples) {
  const auto a = verify_local_identity(m_ideal(), m_ideal());
  EXPECT_EQ(a.lhs, 3);
  EXPECT_TRUE(a.equal);
  EXPECT_TRUE(verify_local_identity(m_plus_m(), m_ideal()).equal);
  EXPECT_TRUE(verify_local_identity(direct_sum(m_power(2), m_ideal()), m_ideal()).equal);
  const auto i = Submodule<Fp>::from_ideal(mono({{3, 0}, {1, 1}, {0, 2}}));
  EXPECT_THROW(verify_local_identity(i, m_ideal()), NotLocal);
}

TEST(VerifyJointReductionLength, Examples) {
  const std::vector mm{m_ideal(), m_ideal()};
  const auto b = candidate_from_columns<Fp>({{V({"x"})}, {V({"y"})}});
  const auto rep = verify_step1(m_ideal(), m_ideal(), b);
  EXPECT_EQ(rep.lhs, 2);
  EXPECT_TRUE(rep.equal);
  const std::vector pair{m_plus_m(), m_ideal()};
  EXPECT_TRUE(verify_step1(m_plus_m(), m_ideal(), random_candidate(pair, 5)).equal);
  const auto f = free1();
  const auto bf = candidate_from_columns<Fp>({{V({"1"})}, {V({"1"})}});
  const auto deg = verify_step1(f, f, bf);
  EXPECT_EQ(deg.lhs, 0);
  EXPECT_TRUE(deg.equal);
}

TEST(VerifyBRPolya, MaximalIdealPair) {
  const auto rep = verify_brpolya(std::vector{m_ideal(), m_ideal()}, {3, 3});
  EXPECT_TRUE(rep.equal());
  ASSERT_EQ(rep.table.size(), 16u);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) EXPECT_EQ(rep.table[static_cast<std::size_t>(a * 4 + b)], binom(a + b + 1, 2));
}

TEST(VerifyBRPolya, MixedRanks) {
  const auto rep = verify_brpolya(std::vector{m_plus_m(), m_ideal()}, {3, 3});
  EXPECT_TRUE(rep.ingredients_stabilized);
  EXPECT_EQ(rep.max_deviation, 0);
  EXPECT_EQ(rep.br, (std::vector<std::int64_t>{3, 1}));
  EXPECT_EQ(rep.mixed, (std::vector<std::int64_t>{2}));
}

TEST(MinorsMultiplicativity, Examples) {
  EXPECT_TRUE(minors_multiplicativity_check(m_ideal(), m_ideal()).equal);
  const auto rep = minors_multiplicativity_check(m_plus_m(), m_ideal());
  EXPECT_TRUE(rep.equal);
  EXPECT_EQ(rep.lhs, binom(5, 2));
  EXPECT_TRUE(minors_multiplicativity_check(free1(), m_plus_m()).equal);
}

TEST(JrnExperiment, DeterministicRecords) {
  const std::vector ms{m_ideal(), m_ideal(), m_ideal()};
  const auto a = jrn_experiment(ms, 3, 10, 2);
  const auto b = jrn_experiment(ms, 3, 10, 2);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].seed, 10 + i);
    EXPECT_EQ(a[i].joint_reduction_number, b[i].joint_reduction_number);
  }
}

}  // namespace
}  // namespace brm
