#include "brmult/koszul.hpp"

#include <algorithm>

#include "brmult/errors.hpp"
#include "brmult/minors.hpp"
#include "brmult/symprod.hpp"

namespace brm {

template <Field K>
Endo<K>::Endo(K field, int nvars, std::vector<std::vector<Poly<K>>> rows)
    : field_(std::move(field)), nvars_(nvars), rows_(std::move(rows)), det_(field_, nvars_) {
  for (const auto& row : rows_) {
    if (row.size() != rows_.size()) throw std::invalid_argument("endomorphism matrix must be square");
    for (const auto& p : row) {
      if (p.nvars() != nvars_) throw VariableMismatch("matrix entry has the wrong number of variables");
    }
  }
  det_ = determinant(field_, nvars_, columns());
}

template <Field K>
Endo<K> Endo<K>::from_columns(K field, int nvars, const std::vector<PolyVec<K>>& cols) {
  const auto r = cols.size();
  std::vector<std::vector<Poly<K>>> rows(r, std::vector<Poly<K>>(r, Poly<K>(field, nvars)));
  for (std::size_t j = 0; j < r; ++j) {
    if (cols[j].size() != r) throw std::invalid_argument("endomorphism matrix must be square");
    for (std::size_t i = 0; i < r; ++i) rows[i][j] = cols[j][i];
  }
  return Endo(std::move(field), nvars, std::move(rows));
}

template <Field K>
std::vector<PolyVec<K>> Endo<K>::columns() const {
  const auto r = rows_.size();
  std::vector<PolyVec<K>> cols(r, PolyVec<K>(r, Poly<K>(field_, nvars_)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) cols[j][i] = rows_[i][j];
  }
  return cols;
}

template <Field K>
Submodule<K> Endo<K>::image() const {
  return Submodule<K>(field_, nvars_, rank(), columns());
}

template <Field K>
MIdeal<K> determinant_ideal(const std::vector<Endo<K>>& phis) {
  if (phis.empty()) throw std::invalid_argument("no endomorphisms");
  std::vector<Poly<K>> dets;
  for (const auto& p : phis) dets.push_back(p.det());
  return MIdeal<K>(phis.front().field(), phis.front().nvars(), std::move(dets));
}

template <Field K>
Submodule<K> h0_submodule(const std::vector<Endo<K>>& phis, std::optional<int> exponent_hint) {
  if (phis.empty()) throw std::invalid_argument("no endomorphisms");
  const auto& field = phis.front().field();
  const int nvars = phis.front().nvars();
  std::vector<Submodule<K>> frees;
  int rank = 1;
  for (const auto& p : phis) {
    if (p.nvars() != nvars) throw VariableMismatch("endomorphisms over different rings");
    frees.push_back(Submodule<K>::free(field, nvars, p.rank()));
    rank *= p.rank();
  }
  std::vector<PolyVec<K>> gens;
  for (std::size_t k = 0; k < phis.size(); ++k) {
    auto factors = frees;
    factors[k] = phis[k].image();
    if (factors[k].num_generators() == 0) continue;
    auto layer = tensor_product(factors);
    gens.insert(gens.end(), layer.gens().begin(), layer.gens().end());
  }
  return Submodule<K>(field, nvars, rank, std::move(gens), exponent_hint);
}

template <Field K>
H0Result h0_length(const std::vector<Endo<K>>& phis, int s_max) {
  // det(phi_k) F_k lies in im(phi_k) by Cramer's rule, so D F lies in the
  // layer sum and the exponent of D bounds the module's exponent.
  const auto s = determinant_ideal(phis).mprimary_exponent(s_max);
  if (!s) throw NotFiniteColength("determinant ideal is not m-primary", s_max);
  auto sub = h0_submodule(phis, *s);
  auto cert = sub.certificate(std::max(s_max, *s));
  if (!cert) throw NotFiniteColength("layer sum has no certificate", s_max);
  return H0Result{cert->colength, *s, cert->exponent};
}

template <Field K>
std::int64_t det_koszul_colength(const std::vector<Endo<K>>& phis, int s_max) {
  if (phis.empty() || static_cast<int>(phis.size()) != phis.front().nvars()) {
    throw std::invalid_argument("determinant Koszul colength needs exactly d endomorphisms");
  }
  return determinant_ideal(phis).colength(s_max);
}

template <Field K>
ComparisonReport verify_comparison(const std::vector<Endo<K>>& phis, int s_max) {
  ComparisonReport rep;
  rep.det_colength = det_koszul_colength(phis, s_max);
  const auto h0 = h0_length(phis, s_max);
  rep.h0 = h0.length;
  rep.det_exponent = h0.det_exponent;
  rep.module_exponent = h0.module_exponent;
  rep.equal = rep.h0 == rep.det_colength;
  return rep;
}

template <Field K>
Endo<K> endo_from_joint_reduction(const Submodule<K>& b) {
  if (static_cast<int>(b.num_generators()) != b.rank()) {
    throw CandidateNotJointReduction("expected " + std::to_string(b.rank()) + " generator columns, got " +
                                     std::to_string(b.num_generators()));
  }
  return Endo<K>::from_columns(b.field(), b.nvars(), b.gens());
}

namespace {

template <Field K>
Poly<K> random_entry(std::mt19937_64& rng, const K& field, int nvars, int max_degree, bool constant) {
  Poly<K> p(field, nvars);
  for (int deg = constant ? 0 : 1; deg <= max_degree; ++deg) {
    for (const auto& m : monomials_of_degree(nvars, deg)) {
      if (uniform_below(rng, 3) != 0) continue;
      const auto c = static_cast<std::int64_t>(uniform_below(rng, 9)) - 4;
      if (c != 0) p += Poly<K>::term(field, nvars, m, field.from_int(c));
    }
  }
  return p;
}

}  // namespace

template <Field K>
std::vector<Endo<K>> random_endo_family(std::mt19937_64& rng, const K& field, int nvars, int count,
                                        const RandomEndoOptions& opt) {
  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    std::vector<Endo<K>> out;
    for (int k = 0; k < count; ++k) {
      const int r = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(opt.max_rank)));
      std::vector<std::vector<Poly<K>>> rows(static_cast<std::size_t>(r));
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          const bool constant = i != j && uniform_below(rng, 4) == 0;
          rows[static_cast<std::size_t>(i)].push_back(random_entry(rng, field, nvars, opt.max_degree, constant));
        }
      }
      out.emplace_back(field, nvars, std::move(rows));
    }
    if (determinant_ideal(out).mprimary_exponent(opt.s_max)) return out;
  }
  throw NotFiniteColength("no random family with m-primary determinant ideal", opt.s_max);
}

#define BRM_INSTANTIATE_KOSZUL(K)                                                               \
  template class Endo<K>;                                                                       \
  template MIdeal<K> determinant_ideal<K>(const std::vector<Endo<K>>&);                         \
  template Submodule<K> h0_submodule<K>(const std::vector<Endo<K>>&, std::optional<int>);       \
  template H0Result h0_length<K>(const std::vector<Endo<K>>&, int);                             \
  template std::int64_t det_koszul_colength<K>(const std::vector<Endo<K>>&, int);               \
  template ComparisonReport verify_comparison<K>(const std::vector<Endo<K>>&, int);             \
  template Endo<K> endo_from_joint_reduction<K>(const Submodule<K>&);                           \
  template std::vector<Endo<K>> random_endo_family<K>(std::mt19937_64&, const K&, int, int,      \
                                                      const RandomEndoOptions&);

BRM_INSTANTIATE_KOSZUL(PrimeField)
BRM_INSTANTIATE_KOSZUL(RationalField)

}  // namespace brm
