#include "brmult/icmod.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "brmult/errors.hpp"

namespace brm {

namespace {

std::int64_t cross(const Exponent2& o, const Exponent2& a, const Exponent2& b) {
  return static_cast<std::int64_t>(a[0] - o[0]) * (b[1] - o[1]) - static_cast<std::int64_t>(a[1] - o[1]) * (b[0] - o[0]);
}

std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <Field K>
std::vector<Exponent2> exponents_of(const MIdeal<K>& ideal) {
  if (ideal.nvars() != 2) throw std::invalid_argument("monomial closure is implemented for two variables");
  std::vector<Exponent2> out;
  for (const auto& g : ideal.gens()) {
    if (!g.is_monomial()) throw std::invalid_argument("ideal is not monomial");
    const auto& m = g.terms().front().mono;
    out.push_back({m[0], m[1]});
  }
  return out;
}

template <Field K>
MIdeal<K> ideal_from_exponents(const K& field, const std::vector<Exponent2>& exps) {
  std::vector<Monomial> monos;
  for (const auto& e : exps) monos.push_back(Monomial{e[0], e[1]});
  return MIdeal<K>::monomial(field, 2, monos);
}

void add_certificate(VerifyReport& rep, const std::string& key, std::int64_t value) {
  rep.certificates.emplace_back(key, value);
}

}  // namespace

std::vector<Exponent2> minimal_monomial_exponents(std::vector<Exponent2> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Exponent2> out;
  for (const auto& g : gens) {
    const bool divisible = std::any_of(out.begin(), out.end(), [&](const Exponent2& h) {
      return h[0] <= g[0] && h[1] <= g[1];
    });
    if (!divisible) out.push_back(g);
  }
  return out;
}

std::vector<Exponent2> monomial_closure_exponents(const std::vector<Exponent2>& gens) {
  const auto pts = minimal_monomial_exponents(gens);
  // Sorted by x-exponent, so y-exponents strictly decrease.
  if (pts.empty() || pts.front()[0] != 0 || pts.back()[1] != 0) {
    throw NotFiniteColength("monomial ideal needs pure powers of both variables", 0);
  }
  std::vector<Exponent2> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  const int a = pts.back()[0];
  const int b = pts.front()[1];
  std::vector<Exponent2> inside;
  for (int u = 0; u <= a; ++u) {
    for (int v = 0; v <= b; ++v) {
      bool ok = true;
      for (std::size_t i = 0; ok && i + 1 < hull.size(); ++i) ok = cross(hull[i], hull[i + 1], {u, v}) >= 0;
      if (ok) inside.push_back({u, v});
    }
  }
  return minimal_monomial_exponents(std::move(inside));
}

template <Field K>
MIdeal<K> monomial_closure(const MIdeal<K>& ideal) {
  return ideal_from_exponents(ideal.field(), monomial_closure_exponents(exponents_of(ideal)));
}

template <Field K>
bool is_integrally_closed_monomial(const MIdeal<K>& ideal) {
  const auto exps = exponents_of(ideal);
  return minimal_monomial_exponents(exps) == monomial_closure_exponents(exps);
}

ICSummand ICSummand::maximal_power(int s) {
  ICSummand out;
  for (int i = s; i >= 0; --i) out.exps.push_back({s - i, i});
  out.exps = minimal_monomial_exponents(out.exps);
  return out;
}

ICSummand ICSummand::monomial(std::vector<Exponent2> exps) {
  ICSummand out;
  out.exps = minimal_monomial_exponents(std::move(exps));
  return out;
}

int ICSummand::order() const {
  if (free) return 0;
  int o = std::numeric_limits<int>::max();
  for (const auto& e : exps) o = std::min(o, e[0] + e[1]);
  return o;
}

std::string ICSummand::to_string() const {
  if (free) return "free";
  const int s = order();
  if (exps == maximal_power(s).exps) return s == 1 ? "m" : "m^" + std::to_string(s);
  std::string out = "mono(";
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (i > 0) out += ", ";
    std::string term;
    const char* names[2] = {"x", "y"};
    for (int v = 0; v < 2; ++v) {
      const int e = exps[i][static_cast<std::size_t>(v)];
      if (e == 0) continue;
      if (!term.empty()) term += "*";
      term += names[v];
      if (e > 1) term += "^" + std::to_string(e);
    }
    out += term.empty() ? "1" : term;
  }
  return out + ")";
}

int ICModuleSpec::order() const {
  int o = 0;
  for (const auto& s : summands) o += s.order();
  return o;
}

std::string ICModuleSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    if (i > 0) out += ", ";
    out += summands[i].to_string();
  }
  return out;
}

template <Field K>
Submodule<K> ICModuleSpec::realize(const K& field) const {
  if (summands.empty()) throw std::invalid_argument("module spec without summands");
  std::optional<Submodule<K>> acc;
  for (const auto& s : summands) {
    Submodule<K> part = Submodule<K>::free(field, 2, 1);
    if (!s.free) {
      if (minimal_monomial_exponents(s.exps) != monomial_closure_exponents(s.exps)) {
        throw std::invalid_argument("summand " + s.to_string() + " is not integrally closed");
      }
      part = Submodule<K>::from_ideal(ideal_from_exponents(field, s.exps));
    }
    acc = acc ? direct_sum(*acc, part) : part;
  }
  return *acc;
}

template <Field K>
bool contracted_numerical_test(const Submodule<K>& m, int s_max) {
  return static_cast<int>(m.min_generators(s_max)) == m.order() + m.rank();
}

template <Field K>
MixedBR stabilized_mixed_br(const std::vector<Submodule<K>>& ms, std::vector<int> upper, int grow,
                            const BROptions& opt) {
  for (int step = 0;; ++step) {
    auto res = mixed_br(ms, upper, opt);
    if (res.stabilized || step >= grow) return res;
    for (auto& u : upper) ++u;
  }
}

template <Field K>
MixedBR single_br(const Submodule<K>& m, int grow, const BROptions& opt) {
  const int order = m.nvars() + m.rank() - 1;
  int upper = order + 2;
  for (int step = 0;; ++step) {
    MixedBR res;
    res.upper = {upper};
    res.differenced = finite_difference(br_table(std::vector<Submodule<K>>{m}, {upper - order - 1}, {upper}, opt),
                                        {order});
    res.value = res.differenced.at({upper});
    const auto& v = res.differenced.values;
    res.stabilized = std::all_of(v.begin(), v.end(), [&](std::int64_t x) { return x == v.front(); });
    if (res.stabilized || step >= grow) return res;
    ++upper;
  }
}

template <Field K>
MixedMultReport mixed_mult_ideals(const MIdeal<K>& i, const MIdeal<K>& j, std::vector<int> window, int trials,
                                  std::uint64_t seed, const BROptions& opt) {
  if (i.nvars() != 2 || j.nvars() != 2) throw std::invalid_argument("mixed multiplicities are for two variables");
  MixedMultReport rep;
  const std::vector<Submodule<K>> ms{Submodule<K>::from_ideal(i), Submodule<K>::from_ideal(j)};
  if (window.empty()) window = default_mixed_window(ms);
  auto a = stabilized_mixed_br(ms, window, 3, opt);
  rep.route_a = a.value;
  rep.stabilized = a.stabilized;
  rep.window = a.upper;
  std::mt19937_64 rng(seed);
  const auto& k = i.field();
  std::optional<std::int64_t> best;
  for (int t = 0; t < trials; ++t) {
    Poly<K> f(k, 2);
    Poly<K> g(k, 2);
    for (const auto& p : i.gens()) f += p.scale(k.random(rng));
    for (const auto& p : j.gens()) g += p.scale(k.random(rng));
    try {
      const auto len = MIdeal<K>(k, 2, {f, g}).colength(opt.s_max);
      best = best ? std::min(*best, len) : len;
      ++rep.trials;
    } catch (const NotFiniteColength&) {
    }
  }
  if (!best) throw NotFiniteColength("no trial produced an m-primary pair", opt.s_max);
  rep.route_b = *best;
  rep.equal = rep.stabilized && rep.route_a == rep.route_b;
  return rep;
}

namespace {

template <Field K>
std::int64_t mixed_of_fitting(const Submodule<K>& a, const Submodule<K>& b, const BROptions& opt, bool& stable) {
  const std::vector<Submodule<K>> ideals{Submodule<K>::from_ideal(a.fitting_ideal()),
                                         Submodule<K>::from_ideal(b.fitting_ideal())};
  auto res = stabilized_mixed_br(ideals, default_mixed_window(ideals), 3, opt);
  stable = stable && res.stabilized;
  return res.value;
}

}  // namespace

template <Field K>
VerifyReport verify_jrn0(const Submodule<K>& m1, const Submodule<K>& m2, std::uint64_t seed, int n_max,
                         const BROptions& opt) {
  const std::vector<Submodule<K>> ms{m1, m2};
  const auto b = random_candidate(ms, seed);
  const auto sweep = joint_reduction_number(ms, b, n_max, opt);
  if (!sweep.number) {
    throw CandidateNotJointReduction("seed " + std::to_string(seed) + " gave no joint reduction up to n = " +
                                     std::to_string(n_max) + "; draw again");
  }
  VerifyReport rep;
  rep.theorem = "joint-reduction-number-zero";
  rep.seed = seed;
  rep.lhs = *sweep.number;
  rep.rhs = 0;
  rep.equal = rep.lhs == 0;
  add_certificate(rep, "lhs_exponent", sweep.steps.front().lhs_exponent);
  add_certificate(rep, "lhs_colength", sweep.steps.front().lhs_colength);
  add_certificate(rep, "n_max", n_max);
  return rep;
}

template <Field K>
VerifyReport verify_prodlength(const std::vector<Submodule<K>>& ms, const BROptions& opt) {
  if (ms.size() < 2) throw std::invalid_argument("product length identity needs q >= 2");
  const std::size_t q = ms.size();
  VerifyReport rep;
  rep.theorem = "product-colength";
  rep.lhs = br_function(ms, std::vector<int>(q, 1), opt);
  bool stable = true;
  for (std::size_t i = 0; i < q; ++i) {
    std::int64_t s = 1;
    for (std::size_t k = 0; k < q; ++k) s *= k == i ? 1 : ms[k].rank();
    rep.rhs += s * ms[i].colength(opt.s_max);
    for (std::size_t j = i + 1; j < q; ++j) {
      std::int64_t t = 1;
      for (std::size_t k = 0; k < q; ++k) t *= (k == i || k == j) ? 1 : ms[k].rank();
      const auto e = mixed_of_fitting(ms[i], ms[j], opt, stable);
      add_certificate(rep, "e(" + std::to_string(i + 1) + "|" + std::to_string(j + 1) + ")", e);
      rep.rhs += t * e;
    }
  }
  add_certificate(rep, "stabilized", stable ? 1 : 0);
  rep.equal = stable && rep.lhs == rep.rhs;
  return rep;
}

template <Field K>
VerifyReport verify_local_identity(const Submodule<K>& m1, const Submodule<K>& m2, const BROptions& opt) {
  std::int64_t n[2];
  const Submodule<K>* ms[2] = {&m1, &m2};
  for (int i = 0; i < 2; ++i) {
    const auto& fit = ms[i]->fitting_ideal();
    const int o = fit.ord();
    if (o == kInfiniteOrder || !fit.equals(MIdeal<K>::maximal_power(fit.field(), fit.nvars(), o), opt.s_max)) {
      throw NotLocal("Fitting ideal of module " + std::to_string(i + 1) + " is not a power of m");
    }
    n[i] = o;
  }
  VerifyReport rep;
  rep.theorem = "local-length-identity";
  rep.lhs = br_function(std::vector<Submodule<K>>{m1, m2}, {1, 1}, opt);
  rep.rhs = m2.rank() * m1.colength(opt.s_max) + m1.rank() * m2.colength(opt.s_max) + n[0] * n[1];
  add_certificate(rep, "n1", n[0]);
  add_certificate(rep, "n2", n[1]);
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

template <Field K>
VerifyReport verify_step1(const Submodule<K>& m1, const Submodule<K>& m2, const JointReduction<K>& b, int n_max,
                          const BROptions& opt) {
  const std::vector<Submodule<K>> ms{m1, m2};
  const auto sweep = joint_reduction_number(ms, b, n_max, opt);
  if (!sweep.number) throw CandidateNotJointReduction("candidate is not a joint reduction up to the sweep bound");
  VerifyReport rep;
  rep.theorem = "step1-length";
  rep.seed = b.seed;
  rep.lhs = m1.rank() * m2.colength(opt.s_max) + m2.rank() * m1.colength(opt.s_max);
  const auto b1 = b.module(0, 2);
  const auto b2 = b.module(1, 2);
  auto inner = submodule_sum(tensor_product(std::vector<Submodule<K>>{b1, m2}, opt.cap),
                             tensor_product(std::vector<Submodule<K>>{m1, b2}, opt.cap));
  const std::vector<Endo<K>> endos{b.endo(0, 2), b.endo(1, 2)};
  const auto outer = h0_length(endos, opt.s_max);
  // inner contains det(B_1) I(M_2) F + det(B_2) I(M_1) F; let the search run.
  const auto inner_len = inner.colength(opt.s_max);
  rep.rhs = inner_len - outer.length;
  add_certificate(rep, "inner_colength", inner_len);
  add_certificate(rep, "outer_colength", outer.length);
  add_certificate(rep, "joint_reduction_number", *sweep.number);
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

template <Field K>
BRPolyaReport verify_brpolya(const std::vector<Submodule<K>>& ms, std::vector<int> upper, const BROptions& opt) {
  const std::size_t q = ms.size();
  if (q < 2) throw std::invalid_argument("joint Buchsbaum-Rim formula needs q >= 2");
  if (upper.empty()) upper.assign(q, 3);
  BRPolyaReport rep;
  rep.upper = upper;
  std::vector<std::int64_t> r;
  for (const auto& m : ms) {
    r.push_back(m.rank());
    auto b = single_br(m, 3, opt);
    rep.ingredients_stabilized = rep.ingredients_stabilized && b.stabilized;
    rep.br.push_back(b.value);
    rep.colengths.push_back(m.colength(opt.s_max));
  }
  std::vector<std::vector<std::int64_t>> e(q, std::vector<std::int64_t>(q, 0));
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = i + 1; j < q; ++j) {
      e[i][j] = mixed_of_fitting(ms[i], ms[j], opt, rep.ingredients_stabilized);
      rep.mixed.push_back(e[i][j]);
    }
  }
  const auto table = br_table(ms, std::vector<int>(q, 0), upper, opt);
  rep.table = table.values;
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    const auto n = table.point(idx);
    std::vector<std::int64_t> rk(q);  // rank of S_{n_k}(F_k)
    for (std::size_t k = 0; k < q; ++k) rk[k] = binom(n[k] + r[k] - 1, r[k] - 1);
    std::int64_t value = 0;
    for (std::size_t i = 0; i < q; ++i) {
      std::int64_t s = 1;
      for (std::size_t k = 0; k < q; ++k) s *= k == i ? 1 : rk[k];
      value += s * (rep.br[i] * binom(n[i] + r[i], r[i] + 1) -
                    (rep.br[i] - rep.colengths[i]) * binom(n[i] + r[i] - 1, r[i]));
      for (std::size_t j = i + 1; j < q; ++j) {
        std::int64_t v = binom(n[i] + r[i] - 1, r[i]) * binom(n[j] + r[j] - 1, r[j]);
        for (std::size_t k = 0; k < q; ++k) v *= (k == i || k == j) ? 1 : rk[k];
        value += v * e[i][j];
      }
    }
    rep.formula.push_back(value);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(value - table.values[idx]));
  }
  return rep;
}

template <Field K>
VerifyReport minors_multiplicativity_check(const Submodule<K>& m1, const Submodule<K>& m2, const BROptions& opt) {
  auto prod = graded_product(std::vector<Submodule<K>>{m1, m2}, {1, 1}, opt.cap);
  prod = prod.minimalized(std::max(opt.s_max, prod.known_exponent().value_or(0)));
  const auto& lhs = prod.fitting_ideal();
  const auto rhs = ideal_product(ideal_power(m1.fitting_ideal(), m2.rank()), ideal_power(m2.fitting_ideal(), m1.rank()));
  VerifyReport rep;
  rep.theorem = "minors-multiplicativity";
  const int bound = std::max(opt.s_max, rhs.known_exponent().value_or(0) + 1);
  rep.lhs = lhs.colength(bound);
  rep.rhs = rhs.colength(bound);
  rep.equal = rep.lhs == rep.rhs && lhs.equals(rhs, bound);
  add_certificate(rep, "lhs_generators", static_cast<std::int64_t>(lhs.num_generators()));
  add_certificate(rep, "ord", lhs.ord());
  return rep;
}

template <Field K>
std::vector<ExperimentRecord> jrn_experiment(const std::vector<Submodule<K>>& ms, int trials, std::uint64_t seed,
                                             int n_max, const BROptions& opt) {
  std::vector<ExperimentRecord> out;
  for (int t = 0; t < trials; ++t) {
    ExperimentRecord rec;
    rec.seed = seed + static_cast<std::uint64_t>(t);
    rec.n_max = n_max;
    const auto b = random_candidate(ms, rec.seed);
    rec.joint_reduction_number = joint_reduction_number(ms, b, n_max, opt).number;
    out.push_back(rec);
  }
  return out;
}

std::vector<Exponent2> random_complete_ideal(std::mt19937_64& rng, int max_order, int max_power) {
  auto draw = [&](int lo, int hi) { return lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1))); };
  const int o = draw(1, max_order);
  const int top = std::max(o, max_power);
  std::vector<Exponent2> gens{{draw(o, top), 0}, {0, draw(o, top)}};
  const int u = draw(0, o);
  gens.push_back({u, o - u});
  const int extra = draw(0, 2);
  for (int i = 0; i < extra; ++i) {
    const int a = draw(0, top);
    const int b = draw(std::max(0, o - a), top);
    gens.push_back({a, b});
  }
  return monomial_closure_exponents(gens);
}

ICModuleSpec random_ic_spec(std::mt19937_64& rng, int max_rank, int max_order, bool proper) {
  ICModuleSpec spec;
  const int rank = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_rank)));
  int budget = max_order;
  for (int i = 0; i < rank; ++i) {
    const bool make_free = budget == 0 || uniform_below(rng, 4) == 0;
    if (make_free) {
      spec.summands.push_back(ICSummand::free_summand());
    } else {
      auto exps = random_complete_ideal(rng, budget);
      auto s = ICSummand::monomial(exps);
      budget -= s.order();
      spec.summands.push_back(s);
    }
  }
  if (proper && spec.order() == 0) spec.summands.front() = ICSummand::monomial(random_complete_ideal(rng, max_order));
  return spec;
}

#define BRM_INSTANTIATE_ICMOD(K)                                                                                    \
  template MIdeal<K> monomial_closure<K>(const MIdeal<K>&);                                                         \
  template bool is_integrally_closed_monomial<K>(const MIdeal<K>&);                                                 \
  template Submodule<K> ICModuleSpec::realize<K>(const K&) const;                                                   \
  template bool contracted_numerical_test<K>(const Submodule<K>&, int);                                             \
  template MixedMultReport mixed_mult_ideals<K>(const MIdeal<K>&, const MIdeal<K>&, std::vector<int>, int,          \
                                                std::uint64_t, const BROptions&);                                   \
  template MixedBR stabilized_mixed_br<K>(const std::vector<Submodule<K>>&, std::vector<int>, int, const BROptions&); \
  template MixedBR single_br<K>(const Submodule<K>&, int, const BROptions&);                                        \
  template VerifyReport verify_jrn0<K>(const Submodule<K>&, const Submodule<K>&, std::uint64_t, int, const BROptions&); \
  template VerifyReport verify_prodlength<K>(const std::vector<Submodule<K>>&, const BROptions&);                  \
  template VerifyReport verify_local_identity<K>(const Submodule<K>&, const Submodule<K>&, const BROptions&);        \
  template VerifyReport verify_step1<K>(const Submodule<K>&, const Submodule<K>&, const JointReduction<K>&, int,    \
                                        const BROptions&);                                                          \
  template BRPolyaReport verify_brpolya<K>(const std::vector<Submodule<K>>&, std::vector<int>, const BROptions&);   \
  template VerifyReport minors_multiplicativity_check<K>(const Submodule<K>&, const Submodule<K>&, const BROptions&); \
  template std::vector<ExperimentRecord> jrn_experiment<K>(const std::vector<Submodule<K>>&, int, std::uint64_t,    \
                                                           int, const BROptions&);

BRM_INSTANTIATE_ICMOD(PrimeField)
BRM_INSTANTIATE_ICMOD(RationalField)

}  // namespace brm
