#include "brmult/jointred.hpp"

#include <random>

#include "brmult/errors.hpp"
#include "brmult/minimal.hpp"
#include "brmult/minors.hpp"

namespace brm {

template <Field K>
Submodule<K> JointReduction<K>::module(std::size_t k, int nvars) const {
  const auto& cols = columns.at(k);
  if (cols.empty()) throw std::invalid_argument("joint reduction factor without columns");
  return Submodule<K>(cols.front().front().field(), nvars, static_cast<int>(cols.front().size()), cols);
}

template <Field K>
Endo<K> JointReduction<K>::endo(std::size_t k, int nvars) const {
  const auto& cols = columns.at(k);
  if (cols.empty()) throw std::invalid_argument("joint reduction factor without columns");
  return Endo<K>::from_columns(cols.front().front().field(), nvars, cols);
}

template <Field K>
JointReduction<K> random_candidate(const std::vector<Submodule<K>>& ms, std::uint64_t seed) {
  JointReduction<K> out;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  for (const auto& m : ms) {
    const auto& k = m.field();
    const auto rows = m.num_generators();
    const auto r = static_cast<std::size_t>(m.rank());
    DenseMatrix<K> a(k, rows, r);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < r; ++j) a(i, j) = k.random(rng);
    }
    std::vector<PolyVec<K>> cols;
    for (std::size_t j = 0; j < r; ++j) {
      PolyVec<K> v(r, Poly<K>(k, m.nvars()));
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t c = 0; c < r; ++c) v[c] += m.gens()[i][c].scale(a(i, j));
      }
      cols.push_back(std::move(v));
    }
    out.coefficients.push_back(std::move(a));
    out.columns.push_back(std::move(cols));
  }
  return out;
}

template <Field K>
JointReduction<K> candidate_from_columns(std::vector<std::vector<PolyVec<K>>> columns) {
  JointReduction<K> out;
  out.columns = std::move(columns);
  return out;
}

namespace {

template <Field K>
void check_shapes(const std::vector<Submodule<K>>& ms, const JointReduction<K>& b) {
  if (ms.empty() || b.size() != ms.size()) throw std::invalid_argument("one B_k per module required");
  for (std::size_t k = 0; k < ms.size(); ++k) {
    if (static_cast<int>(b.columns[k].size()) != ms[k].rank()) {
      throw CandidateNotJointReduction("B_" + std::to_string(k + 1) + " must have " +
                                       std::to_string(ms[k].rank()) + " columns");
    }
  }
}

template <Field K>
Submodule<K> columns_module(const Submodule<K>& m, const std::vector<PolyVec<K>>& cols) {
  return Submodule<K>(m.field(), m.nvars(), m.rank(), cols);
}

}  // namespace

template <Field K>
EquationalResult verify_equational(const std::vector<Submodule<K>>& ms, const JointReduction<K>& b, int n,
                                   const BROptions& opt) {
  check_shapes(ms, b);
  if (n < 0) throw std::invalid_argument("negative n");
  const std::size_t q = ms.size();
  EquationalResult res;
  res.n = n;
  auto lhs = graded_product(ms, std::vector<int>(q, n + 1), opt.cap);
  const int bound = std::max(opt.s_max, lhs.known_exponent().value_or(0));
  auto cert = lhs.certificate(bound);
  if (!cert) throw NotFiniteColength("left side of the joint reduction equation", bound);
  res.lhs_exponent = cert->exponent;
  res.lhs_colength = cert->colength;

  std::vector<Submodule<K>> full;
  for (const auto& m : ms) full.push_back(sym_power(m, n + 1, opt.cap));
  std::vector<PolyVec<K>> rhs;
  for (std::size_t k = 0; k < q; ++k) {
    auto bk = columns_module(ms[k], b.columns[k]);
    auto factors = full;
    factors[k] = sym_multiply(bk, 1, sym_power(ms[k], n, opt.cap), n, ms[k].rank(), opt.cap);
    auto layer = tensor_product(factors, opt.cap);
    rhs.insert(rhs.end(), layer.gens().begin(), layer.gens().end());
  }
  const int t = res.lhs_exponent + 1;
  auto oracle = make_oracle(lhs.field(), lhs.nvars(), lhs.rank(), t, dedupe_columns(std::move(rhs)));
  res.rhs_truncated = oracle->quotient_length(t);
  res.holds = res.rhs_truncated == res.lhs_colength;
  return res;
}

template <Field K>
SweepResult joint_reduction_number(const std::vector<Submodule<K>>& ms, const JointReduction<K>& b, int n_max,
                                   const BROptions& opt) {
  SweepResult out;
  out.n_max = n_max;
  for (int n = 0; n <= n_max; ++n) {
    out.steps.push_back(verify_equational(ms, b, n, opt));
    if (out.steps.back().holds) {
      out.number = n;
      break;
    }
  }
  return out;
}

template <Field K>
DeterminantalResult verify_determinantal(const std::vector<Submodule<K>>& ms, const JointReduction<K>& b, int n_max,
                                         int s_max) {
  check_shapes(ms, b);
  const auto& field = ms.front().field();
  const int nvars = ms.front().nvars();
  DeterminantalResult out;
  out.n_max = n_max;
  std::vector<MIdeal<K>> fit;
  std::vector<Poly<K>> dets;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    fit.push_back(ms[k].fitting_ideal().minimalized(s_max));
    dets.push_back(determinant(field, nvars, b.columns[k]));
    out.det_orders.push_back(dets.back().ord());
  }
  auto product_except = [&](std::size_t skip) {
    auto acc = MIdeal<K>::unit(field, nvars);
    for (std::size_t j = 0; j < fit.size(); ++j) {
      if (j != skip) acc = ideal_product(acc, fit[j]);
    }
    return acc;
  };
  std::vector<Poly<K>> jgens;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto others = product_except(k);
    for (const auto& g : others.gens()) jgens.push_back(dets[k] * g);
  }
  const MIdeal<K> j(field, nvars, jgens);
  const auto p = product_except(fit.size()).minimalized(s_max);
  auto pn = MIdeal<K>::unit(field, nvars);
  for (int n = 0; n <= n_max; ++n) {
    auto lhs = ideal_product(pn, p).minimalized(s_max);
    const int bound = std::max(s_max, lhs.known_exponent().value_or(0));
    auto cert = lhs.certificate(bound);
    if (!cert) throw NotFiniteColength("product of Fitting ideals is not m-primary", bound);
    const int t = cert->exponent + 1;
    auto rhs = ideal_product(j, pn);
    auto oracle = make_oracle(field, nvars, 1, t, rhs.columns());
    if (oracle->quotient_length(t) == cert->colength) {
      out.holds = true;
      out.n = n;
      return out;
    }
    pn = lhs;
  }
  return out;
}

template <Field K>
FreenessReport freeness_and_minimality_check(const std::vector<Submodule<K>>& ms, const JointReduction<K>& b,
                                             int s_max) {
  check_shapes(ms, b);
  FreenessReport rep;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto& m = ms[k];
    rep.det_nonzero.push_back(!determinant(m.field(), m.nvars(), b.columns[k]).is_zero());
    std::vector<PolyVec<K>> gens = b.columns[k];
    gens.insert(gens.end(), m.gens().begin(), m.gens().end());
    const auto keep = select_minimal_generators(m.field(), m.nvars(), m.rank(), gens, s_max, m.known_exponent());
    bool extends = keep.size() >= b.columns[k].size();
    for (std::size_t i = 0; extends && i < b.columns[k].size(); ++i) extends = keep[i] == i;
    rep.extends_mingen.push_back(extends);
  }
  return rep;
}

#define BRM_INSTANTIATE_JOINTRED(K)                                                                               \
  template struct JointReduction<K>;                                                                              \
  template JointReduction<K> random_candidate<K>(const std::vector<Submodule<K>>&, std::uint64_t);               \
  template JointReduction<K> candidate_from_columns<K>(std::vector<std::vector<PolyVec<K>>>);                    \
  template EquationalResult verify_equational<K>(const std::vector<Submodule<K>>&, const JointReduction<K>&, int, \
                                                 const BROptions&);                                               \
  template SweepResult joint_reduction_number<K>(const std::vector<Submodule<K>>&, const JointReduction<K>&, int, \
                                                 const BROptions&);                                               \
  template DeterminantalResult verify_determinantal<K>(const std::vector<Submodule<K>>&, const JointReduction<K>&, \
                                                       int, int);                                                 \
  template FreenessReport freeness_and_minimality_check<K>(const std::vector<Submodule<K>>&,                      \
                                                           const JointReduction<K>&, int);

BRM_INSTANTIATE_JOINTRED(PrimeField)
BRM_INSTANTIATE_JOINTRED(RationalField)

}  // namespace brm
