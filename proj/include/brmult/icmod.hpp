#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "brmult/jointred.hpp"

namespace brm {

// Everything here is for d = 2: R = k[x, y] at the origin.

using Exponent2 = std::array<int, 2>;

/// Newton-polygon closure of a monomial ideal (given by its exponents): all
/// lattice points of conv(exponents) + R_{>=0}^2, minimalized. Throws
/// NotFiniteColength unless pure powers of both variables are present.
std::vector<Exponent2> monomial_closure_exponents(const std::vector<Exponent2>& gens);
std::vector<Exponent2> minimal_monomial_exponents(std::vector<Exponent2> gens);

template <Field K>
MIdeal<K> monomial_closure(const MIdeal<K>& ideal);
template <Field K>
bool is_integrally_closed_monomial(const MIdeal<K>& ideal);

/// Direct sum of free summands and complete monomial ideals.
struct ICSummand {
  bool free = false;
  std::vector<Exponent2> exps;  // minimal monomial generators when !free

  static ICSummand free_summand() { return {true, {}}; }
  static ICSummand maximal_power(int s);
  static ICSummand monomial(std::vector<Exponent2> exps);

  int order() const;
  /// "free", "m^s" or "mono(x^a*y^b, ...)".
  std::string to_string() const;
  bool operator==(const ICSummand&) const = default;
};

struct ICModuleSpec {
  std::vector<ICSummand> summands;

  int rank() const { return static_cast<int>(summands.size()); }
  int order() const;
  std::string to_string() const;
  bool operator==(const ICModuleSpec&) const = default;

  /// Throws std::invalid_argument if some ideal summand is not complete.
  template <Field K>
  Submodule<K> realize(const K& field) const;
};

/// mu(M) = ord(M) + rank(M).
template <Field K>
bool contracted_numerical_test(const Submodule<K>& m, int s_max = kDefaultSMax);

struct MixedMultReport {
  std::int64_t route_a = 0;   // differences of the Bhattacharya table
  std::int64_t route_b = 0;   // min over trials of colength (a, b)
  bool stabilized = false;
  bool equal = false;
  std::vector<int> window;
  int trials = 0;
};

template <Field K>
MixedMultReport mixed_mult_ideals(const MIdeal<K>& i, const MIdeal<K>& j, std::vector<int> window, int trials,
                                  std::uint64_t seed, const BROptions& opt = {});

/// mixed_br, enlarging the window one step at a time (up to grow extra steps)
/// until the differenced table is constant.
template <Field K>
MixedBR stabilized_mixed_br(const std::vector<Submodule<K>>& ms, std::vector<int> upper, int grow = 3,
                            const BROptions& opt = {});

/// br(M) for a single module: Delta^{d + r - 1} of the Buchsbaum-Rim function
/// at the top of a window that is grown until stable.
template <Field K>
MixedBR single_br(const Submodule<K>& m, int grow = 3, const BROptions& opt = {});

/// Common report shape for the verifiers below.
struct VerifyReport {
  std::string theorem;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool equal = false;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::int64_t>> certificates;
};

/// Draws a joint reduction (seeded), confirms it by an equational sweep up to
/// n_max, and reports whether its joint reduction number is 0. lhs is the
/// number found, rhs is 0. Throws CandidateNotJointReduction if the sweep
/// finds nothing.
template <Field K>
VerifyReport verify_jrn0(const Submodule<K>& m1, const Submodule<K>& m2, std::uint64_t seed,
                         int n_max = kDefaultNMax, const BROptions& opt = {});

template <Field K>
VerifyReport verify_prodlength(const std::vector<Submodule<K>>& ms, const BROptions& opt = {});

/// Throws NotLocal unless I(M_k) = m^ord(M_k) for both modules.
template <Field K>
VerifyReport verify_local_identity(const Submodule<K>& m1, const Submodule<K>& m2, const BROptions& opt = {});

template <Field K>
VerifyReport verify_step1(const Submodule<K>& m1, const Submodule<K>& m2, const JointReduction<K>& b,
                          int n_max = kDefaultNMax, const BROptions& opt = {});

struct BRPolyaReport {
  std::int64_t max_deviation = 0;
  std::vector<int> upper;
  std::vector<std::int64_t> table;    // br_function values, row-major
  std::vector<std::int64_t> formula;  // closed form at the same points
  std::vector<std::int64_t> br;       // br(M_i)
  std::vector<std::int64_t> colengths;
  std::vector<std::int64_t> mixed;    // e(I_i|I_j), i < j in lexicographic order
  bool ingredients_stabilized = true;
  bool equal() const { return max_deviation == 0; }
};

template <Field K>
BRPolyaReport verify_brpolya(const std::vector<Submodule<K>>& ms, std::vector<int> upper, const BROptions& opt = {});

/// I(M_1 M_2) = I(M_1)^{r_2} I(M_2)^{r_1}; lhs/rhs are the colengths.
template <Field K>
VerifyReport minors_multiplicativity_check(const Submodule<K>& m1, const Submodule<K>& m2,
                                           const BROptions& opt = {});

struct ExperimentRecord {
  std::uint64_t seed = 0;
  std::optional<int> joint_reduction_number;
  int n_max = 0;
};

/// q > 2 joint reduction number experiment: draws trials candidates and
/// records the sweep outcome of each. Asserts nothing.
template <Field K>
std::vector<ExperimentRecord> jrn_experiment(const std::vector<Submodule<K>>& ms, int trials, std::uint64_t seed,
                                             int n_max = kDefaultNMax, const BROptions& opt = {});

/// Random generators for suites (deterministic in the generator state).
std::vector<Exponent2> random_complete_ideal(std::mt19937_64& rng, int max_order, int max_power = 4);
ICModuleSpec random_ic_spec(std::mt19937_64& rng, int max_rank, int max_order, bool proper = true);

}  // namespace brm
