#include "brmult/instance.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "brmult/errors.hpp"
#include "brmult/polyparse.hpp"

namespace brm {

namespace {

struct Piece {
  std::string text;
  int column = 1;  // 1-based column of text's first character
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

Piece trimmed(std::string_view s, int column) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && is_space(s[a])) ++a;
  while (b > a && is_space(s[b - 1])) --b;
  return {std::string(s.substr(a, b - a)), column + static_cast<int>(a)};
}

// Splits on commas outside parentheses.
std::vector<Piece> split_commas(std::string_view s, int column) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '(') ++depth;
    if (i < s.size() && s[i] == ')') --depth;
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      out.push_back(trimmed(s.substr(start, i - start), column + static_cast<int>(start)));
      start = i + 1;
    }
  }
  return out;
}

std::vector<Piece> split_words(std::string_view s, int column) {
  std::vector<Piece> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.push_back({std::string(s.substr(start, i - start)), column + static_cast<int>(start)});
  }
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

class InstanceParser {
 public:
  explicit InstanceParser(std::string_view text) : text_(text) {}

  InstanceFile parse() {
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      const std::size_t nl = text_.find('\n', pos);
      const std::size_t end = nl == std::string_view::npos ? text_.size() : nl;
      lines_.push_back(text_.substr(pos, end - pos));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    for (auto& l : lines_) {
      if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
      if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    }
    while (next_ < lines_.size()) {
      const int line = static_cast<int>(next_) + 1;
      const auto l = lines_[next_++];
      const auto words = split_words(l, 1);
      if (words.empty()) continue;
      const auto& kw = words[0];
      if (kw.text == "ring") {
        ring(line, l, kw);
      } else if (kw.text == "field") {
        field(line, words);
      } else if (kw.text == "ideal") {
        ideal(line, l, words);
      } else if (kw.text == "module") {
        matrix_block(line, words, true);
      } else if (kw.text == "endo") {
        matrix_block(line, words, false);
      } else if (kw.text == "icmodule") {
        icmodule(line, l, words);
      } else if (kw.text == "task") {
        task(line, words);
      } else if (kw.text == "end") {
        fail(line, kw.column, "'end' without an open module or endo block");
      } else {
        fail(line, kw.column, "unknown keyword '" + kw.text + "' (expected ring, field, ideal, module, endo, icmodule or task)");
      }
    }
    if (out_.vars.empty()) fail(static_cast<int>(lines_.size()), 1, "missing ring declaration");
    for (const auto& [line, t] : task_lines_) {
      for (const auto& a : t.args) {
        if (a.text.find('=') != std::string::npos) continue;
        if (!names_.count(a.text)) fail(line, a.column, "unknown object '" + a.text + "'");
      }
    }
    return out_;
  }

 private:
  [[noreturn]] void fail(int line, int column, const std::string& msg) const { throw ParseError(line, column, msg); }

  void ring(int line, std::string_view l, const Piece& kw) {
    if (!out_.vars.empty()) fail(line, kw.column, "ring declared twice");
    const auto rest = l.substr(static_cast<std::size_t>(kw.column - 1 + 4));
    std::set<std::string> seen;
    for (const auto& p : split_commas(rest, kw.column + 4)) {
      if (!is_identifier(p.text)) fail(line, p.column, "expected a variable name");
      if (!seen.insert(p.text).second) fail(line, p.column, "variable '" + p.text + "' declared twice");
      out_.vars.push_back(p.text);
    }
    if (out_.vars.size() > 8) fail(line, kw.column, "at most 8 variables are supported");
  }

  void field(int line, const std::vector<Piece>& words) {
    if (words.size() != 2) fail(line, words[0].column, "expected 'field fp:<prime>' or 'field q'");
    try {
      if (!is_rational_field(words[1].text)) prime_field_from_spec(words[1].text);
    } catch (const ParseError& e) {
      fail(line, words[1].column, e.message());
    }
    out_.field = words[1].text;
  }

  void need_ring(int line, int column) const {
    if (out_.vars.empty()) fail(line, column, "ring must be declared before polynomials");
  }

  void claim(int line, const Piece& name) {
    if (!is_identifier(name.text)) fail(line, name.column, "expected an object name");
    if (!names_.insert(name.text).second) fail(line, name.column, "object '" + name.text + "' defined twice");
  }

  std::string poly(int line, const Piece& p) const {
    if (p.text.empty()) fail(line, p.column, "expected a polynomial");
    parse_poly(p.text, out_.vars, checker_, line, p.column - 1);
    return p.text;
  }

  // "<kw> NAME = rest": returns rest with its column.
  Piece after_equals(int line, std::string_view l, const std::vector<Piece>& words) {
    if (words.size() < 2) fail(line, words[0].column, "expected a name after '" + words[0].text + "'");
    need_ring(line, words[0].column);
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) fail(line, static_cast<int>(l.size()) + 1, "expected '='");
    Piece name = trimmed(l.substr(static_cast<std::size_t>(words[1].column - 1),
                                  eq - static_cast<std::size_t>(words[1].column - 1)),
                         words[1].column);
    claim(line, name);
    return {std::string(l.substr(eq + 1)), static_cast<int>(eq) + 2};
  }

  void ideal(int line, std::string_view l, const std::vector<Piece>& words) {
    const auto rest = after_equals(line, l, words);
    IdealBlock b;
    b.name = words[1].text;
    for (const auto& p : split_commas(rest.text, rest.column)) b.gens.push_back(poly(line, p));
    out_.ideals.push_back(std::move(b));
  }

  void matrix_block(int line, const std::vector<Piece>& words, bool is_module) {
    const std::string kind = is_module ? "module" : "endo";
    need_ring(line, words[0].column);
    if (words.size() != 4 || words[2].text != "rank") {
      fail(line, words[0].column, "expected '" + kind + " NAME rank R'");
    }
    claim(line, words[1]);
    int rank = 0;
    const auto& r = words[3].text;
    if (std::from_chars(r.data(), r.data() + r.size(), rank).ec != std::errc() || rank < 1 || rank > 16) {
      fail(line, words[3].column, "rank must be an integer in 1..16");
    }
    std::vector<std::vector<std::string>> body;
    for (;;) {
      if (next_ >= lines_.size()) fail(line, words[0].column, kind + " '" + words[1].text + "' is missing 'end'");
      const int l = static_cast<int>(next_) + 1;
      const auto text = lines_[next_++];
      const auto t = trimmed(text, 1);
      if (t.text.empty()) continue;
      if (t.text == "end") break;
      const auto entries = split_commas(text, 1);
      if (static_cast<int>(entries.size()) != rank) {
        fail(l, t.column,
             "rank mismatch in " + kind + " '" + words[1].text + "': " + (is_module ? "column" : "row") + " has " +
                 std::to_string(entries.size()) + " entries but rank is " + std::to_string(rank));
      }
      std::vector<std::string> row;
      for (const auto& e : entries) row.push_back(poly(l, e));
      body.push_back(std::move(row));
    }
    if (is_module) {
      if (body.empty()) fail(line, words[0].column, "module '" + words[1].text + "' has no columns");
      out_.modules.push_back({words[1].text, rank, std::move(body)});
    } else {
      if (static_cast<int>(body.size()) != rank) {
        fail(line, words[0].column,
             "rank mismatch in endo '" + words[1].text + "': " + std::to_string(body.size()) + " rows but rank is " +
                 std::to_string(rank));
      }
      out_.endos.push_back({words[1].text, rank, std::move(body)});
    }
  }

  void icmodule(int line, std::string_view l, const std::vector<Piece>& words) {
    const auto rest = after_equals(line, l, words);
    if (out_.vars.size() != 2) fail(line, words[0].column, "icmodule needs a ring in two variables");
    ICModuleBlock b;
    b.name = words[1].text;
    for (const auto& p : split_commas(rest.text, rest.column)) b.spec.summands.push_back(summand(line, p));
    out_.icmodules.push_back(std::move(b));
  }

  ICSummand summand(int line, const Piece& p) {
    if (p.text == "free") return ICSummand::free_summand();
    if (p.text == "m") return ICSummand::maximal_power(1);
    if (p.text.rfind("m^", 0) == 0) {
      int s = 0;
      const auto* first = p.text.data() + 2;
      const auto* last = p.text.data() + p.text.size();
      const auto res = std::from_chars(first, last, s);
      if (res.ec != std::errc() || res.ptr != last || s < 1) fail(line, p.column + 2, "expected a positive exponent");
      return ICSummand::maximal_power(s);
    }
    if (p.text.rfind("mono(", 0) == 0 && p.text.back() == ')') {
      std::vector<Exponent2> exps;
      const auto inner = std::string_view(p.text).substr(5, p.text.size() - 6);
      for (const auto& g : split_commas(inner, p.column + 5)) {
        poly(line, g);
        const auto f = parse_poly(g.text, out_.vars, checker_);
        if (!f.is_monomial()) fail(line, g.column, "mono(...) takes monomials");
        const auto& m = f.terms().front().mono;
        exps.push_back({m[0], m[1]});
      }
      const auto s = ICSummand::monomial(exps);
      try {
        if (monomial_closure_exponents(s.exps) != s.exps) fail(line, p.column, "monomial ideal is not integrally closed");
      } catch (const NotFiniteColength&) {
        fail(line, p.column, "monomial ideal needs pure powers of both variables");
      }
      return s;
    }
    fail(line, p.column, "expected free, m, m^s or mono(...)");
  }

  void task(int line, const std::vector<Piece>& words) {
    if (words.size() < 2) fail(line, words[0].column, "expected a command after 'task'");
    TaskBlock t;
    t.command = words[1].text;
    std::vector<Piece> args(words.begin() + 2, words.end());
    for (const auto& a : args) t.args.push_back(a.text);
    out_.tasks.push_back(t);
    task_lines_.push_back({line, {t.command, args}});
  }

  struct PendingTask {
    std::string command;
    std::vector<Piece> args;
  };

  std::string_view text_;
  std::vector<std::string_view> lines_;
  std::size_t next_ = 0;
  InstanceFile out_;
  std::set<std::string> names_;
  std::vector<std::pair<int, PendingTask>> task_lines_;
  PrimeField checker_;
};

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string summand_text(const ICSummand& s, const std::vector<std::string>& vars) {
  if (s.free) return "free";
  const int o = s.order();
  if (s.exps == ICSummand::maximal_power(o).exps) return o == 1 ? "m" : "m^" + std::to_string(o);
  std::vector<std::string> monos;
  for (const auto& e : s.exps) monos.push_back(Monomial{e[0], e[1]}.to_string(vars));
  return "mono(" + join(monos, ", ") + ")";
}

template <Field K>
PolyVec<K> parse_all(const std::vector<std::string>& texts, const std::vector<std::string>& vars, const K& field) {
  PolyVec<K> out;
  for (const auto& t : texts) out.push_back(parse_poly(t, vars, field));
  return out;
}

}  // namespace

InstanceFile parse_instance(std::string_view text) { return InstanceParser(text).parse(); }

std::string serialize_instance(const InstanceFile& inst) {
  std::ostringstream out;
  out << "ring " << join(inst.vars, ", ") << "\n";
  out << "field " << inst.field << "\n";
  for (const auto& b : inst.ideals) out << "ideal " << b.name << " = " << join(b.gens, ", ") << "\n";
  for (const auto& b : inst.modules) {
    out << "module " << b.name << " rank " << b.rank << "\n";
    for (const auto& c : b.columns) out << "  " << join(c, ", ") << "\n";
    out << "end\n";
  }
  for (const auto& b : inst.endos) {
    out << "endo " << b.name << " rank " << b.rank << "\n";
    for (const auto& r : b.rows) out << "  " << join(r, ", ") << "\n";
    out << "end\n";
  }
  for (const auto& b : inst.icmodules) {
    std::vector<std::string> parts;
    for (const auto& s : b.spec.summands) parts.push_back(summand_text(s, inst.vars));
    out << "icmodule " << b.name << " = " << join(parts, ", ") << "\n";
  }
  for (const auto& t : inst.tasks) {
    out << "task " << t.command;
    for (const auto& a : t.args) out << " " << a;
    out << "\n";
  }
  return out.str();
}

bool is_rational_field(const std::string& spec) { return spec == "q" || spec == "Q"; }

PrimeField prime_field_from_spec(const std::string& spec) {
  if (spec.rfind("fp:", 0) != 0) throw ParseError(0, 1, "field must be fp:<prime> or q, got '" + spec + "'");
  std::uint64_t p = 0;
  const auto* first = spec.data() + 3;
  const auto* last = spec.data() + spec.size();
  const auto res = std::from_chars(first, last, p);
  if (res.ec != std::errc() || res.ptr != last || p > 0xffffffffu) {
    throw ParseError(0, 4, "expected a prime after 'fp:'");
  }
  try {
    return PrimeField(static_cast<std::uint32_t>(p));
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, 4, e.what());
  }
}

template <Field K>
const Submodule<K>& Workspace<K>::module(const std::string& name) const {
  const auto it = modules.find(name);
  if (it == modules.end()) throw std::invalid_argument("no module or ideal named '" + name + "'");
  return it->second;
}

template <Field K>
const MIdeal<K>& Workspace<K>::ideal(const std::string& name) const {
  const auto it = ideals.find(name);
  if (it == ideals.end()) throw std::invalid_argument("no ideal named '" + name + "'");
  return it->second;
}

template <Field K>
const Endo<K>& Workspace<K>::endo(const std::string& name) const {
  const auto it = endos.find(name);
  if (it == endos.end()) throw std::invalid_argument("no endo named '" + name + "'");
  return it->second;
}

template <Field K>
Workspace<K> build_workspace(const InstanceFile& inst, const K& field) {
  Workspace<K> ws{field, inst.vars, {}, {}, {}, {}};
  const int d = static_cast<int>(inst.vars.size());
  for (const auto& b : inst.ideals) {
    MIdeal<K> i(field, d, parse_all(b.gens, inst.vars, field));
    ws.ideals.emplace(b.name, i);
    ws.modules.emplace(b.name, Submodule<K>::from_ideal(i));
  }
  for (const auto& b : inst.modules) {
    std::vector<PolyVec<K>> cols;
    for (const auto& c : b.columns) cols.push_back(parse_all(c, inst.vars, field));
    ws.modules.emplace(b.name, Submodule<K>(field, d, b.rank, std::move(cols)));
  }
  for (const auto& b : inst.endos) {
    std::vector<std::vector<Poly<K>>> rows;
    for (const auto& r : b.rows) rows.push_back(parse_all(r, inst.vars, field));
    ws.endos.emplace(b.name, Endo<K>(field, d, std::move(rows)));
  }
  for (const auto& b : inst.icmodules) {
    ws.specs.emplace(b.name, b.spec);
    ws.modules.emplace(b.name, b.spec.realize(field));
  }
  return ws;
}

template struct Workspace<PrimeField>;
template struct Workspace<RationalField>;
template Workspace<PrimeField> build_workspace<PrimeField>(const InstanceFile&, const PrimeField&);
template Workspace<RationalField> build_workspace<RationalField>(const InstanceFile&, const RationalField&);

}  // namespace brm
