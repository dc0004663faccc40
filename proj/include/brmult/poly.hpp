#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "brmult/errors.hpp"
#include "brmult/field.hpp"
#include "brmult/monomial.hpp"

namespace brm {

inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

/// Multivariate polynomial over K in a fixed number of variables. Terms are
/// kept sorted in graded order with no zero coefficients, so the first term
/// carries the order (lowest total degree).
template <Field K>
class Poly {
 public:
  using Element = typename K::Element;
  struct Term {
    Monomial mono;
    Element coeff;
    bool operator==(const Term&) const = default;
  };

  Poly(K field, int nvars) : field_(std::move(field)), nvars_(nvars) {}

  static Poly constant(K field, int nvars, const Element& c) {
    Poly p(std::move(field), nvars);
    if (!p.field_.is_zero(c)) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static Poly from_int(K field, int nvars, std::int64_t c) {
    auto e = field.from_int(c);
    return constant(std::move(field), nvars, e);
  }
  static Poly variable(K field, int nvars, int i) {
    Poly p(std::move(field), nvars);
    p.terms_.push_back({Monomial::variable(i), p.field_.one()});
    return p;
  }
  static Poly term(K field, int nvars, const Monomial& m, const Element& c) {
    Poly p(std::move(field), nvars);
    if (!p.field_.is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }

  const K& field() const { return field_; }
  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_unit() const { return !terms_.empty() && terms_.front().mono.degree() == 0; }

  /// Order valuation; kInfiniteOrder for the zero polynomial.
  int ord() const { return terms_.empty() ? kInfiniteOrder : terms_.front().mono.degree(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.back().mono.degree(); }

  Element coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return t.mono < x; });
    return (it != terms_.end() && it->mono == m) ? it->coeff : field_.zero();
  }

  /// Drops all terms of total degree > max_degree.
  Poly truncate(int max_degree) const {
    Poly p(field_, nvars_);
    for (const auto& t : terms_) {
      if (t.mono.degree() > max_degree) break;
      p.terms_.push_back(t);
    }
    return p;
  }

  Poly operator-() const {
    Poly p = *this;
    for (auto& t : p.terms_) t.coeff = field_.neg(t.coeff);
    return p;
  }

  Poly operator+(const Poly& o) const { return combine(o, false); }
  Poly operator-(const Poly& o) const { return combine(o, true); }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }

  Poly operator*(const Poly& o) const {
    check_compatible(o);
    Poly p(field_, nvars_);
    if (is_zero() || o.is_zero()) return p;
    std::vector<Term> raw;
    raw.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_) {
      for (const auto& b : o.terms_) raw.push_back({a.mono * b.mono, field_.mul(a.coeff, b.coeff)});
    }
    p.terms_ = collect(std::move(raw));
    return p;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scale(const Element& c) const {
    Poly p(field_, nvars_);
    if (field_.is_zero(c)) return p;
    p.terms_ = terms_;
    for (auto& t : p.terms_) t.coeff = field_.mul(t.coeff, c);
    return p;
  }

  Poly times_monomial(const Monomial& m) const {
    Poly p = *this;
    for (auto& t : p.terms_) t.mono = t.mono * m;
    return p;
  }

  Poly pow(unsigned n) const {
    Poly result = constant(field_, nvars_, field_.one());
    Poly base = *this;
    while (n > 0) {
      if (n & 1u) result *= base;
      n >>= 1u;
      if (n > 0) base *= base;
    }
    return result;
  }

  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      std::string c = field_.to_string(t.coeff);
      bool negative = !c.empty() && c[0] == '-';
      if (negative) c.erase(0, 1);
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      if (t.mono.degree() == 0) {
        out += c;
      } else {
        if (c != "1") out += c + "*";
        out += t.mono.to_string(names);
      }
    }
    return out;
  }

 private:
  void check_compatible(const Poly& o) const {
    if (nvars_ != o.nvars_) throw VariableMismatch("polynomials live in rings with different variable counts");
  }

  Poly combine(const Poly& o, bool subtract) const {
    check_compatible(o);
    Poly p(field_, nvars_);
    p.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && terms_[i].mono < o.terms_[j].mono)) {
        p.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || o.terms_[j].mono < terms_[i].mono) {
        const auto& t = o.terms_[j++];
        p.terms_.push_back({t.mono, subtract ? field_.neg(t.coeff) : t.coeff});
      } else {
        auto c = subtract ? field_.sub(terms_[i].coeff, o.terms_[j].coeff)
                          : field_.add(terms_[i].coeff, o.terms_[j].coeff);
        if (!field_.is_zero(c)) p.terms_.push_back({terms_[i].mono, c});
        ++i;
        ++j;
      }
    }
    return p;
  }

  std::vector<Term> collect(std::vector<Term> raw) const {
    std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
    std::vector<Term> out;
    out.reserve(raw.size());
    for (auto& t : raw) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff = field_.add(out.back().coeff, t.coeff);
      } else {
        if (!out.empty() && field_.is_zero(out.back().coeff)) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && field_.is_zero(out.back().coeff)) out.pop_back();
    return out;
  }

  K field_;
  int nvars_;
  std::vector<Term> terms_;
};

/// A column of polynomials: an element of the free module R^r.
template <Field K>
using PolyVec = std::vector<Poly<K>>;

template <Field K>
bool is_zero_vec(const PolyVec<K>& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly<K>& p) { return p.is_zero(); });
}

template <Field K>
int ord_vec(const PolyVec<K>& v) {
  int o = kInfiniteOrder;
  for (const auto& p : v) o = std::min(o, p.ord());
  return o;
}

/// True when the column has a single nonzero entry which is a single term.
template <Field K>
bool is_monomial_vec(const PolyVec<K>& v) {
  int nonzero = 0;
  for (const auto& p : v) {
    if (p.is_zero()) continue;
    if (!p.is_monomial() || ++nonzero > 1) return false;
  }
  return nonzero == 1;
}

/// Unit basis vector e_i of R^rank.
template <Field K>
PolyVec<K> unit_vec(const K& field, int nvars, int rank, int i) {
  PolyVec<K> v(static_cast<std::size_t>(rank), Poly<K>(field, nvars));
  v[static_cast<std::size_t>(i)] = Poly<K>::constant(field, nvars, field.one());
  return v;
}

}  // namespace brm
