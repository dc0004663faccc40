#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "brmult/errors.hpp"
#include "brmult/icmod.hpp"
#include "brmult/instance.hpp"
#include "brmult/jointred.hpp"

namespace {

using brm::Field;
using nlohmann::json;

enum ExitCode { kOk = 0, kFailed = 1, kInputError = 2, kIndeterminate = 3 };

struct Options {
  std::uint64_t seed = 1;
  std::string field;
  int s_max = brm::kDefaultSMax;
  int n_max = brm::kDefaultNMax;
  std::vector<int> window;
  int trials = 10;
  int jobs = 1;
  bool csv = false;
};

struct Outcome {
  json report;
  std::string csv;
  int code = kOk;
};

std::vector<int> parse_window(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v < 0) throw std::invalid_argument("bad --window entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

json certificates_json(const brm::VerifyReport& rep) {
  json c = json::object();
  for (const auto& [k, v] : rep.certificates) c[k] = v;
  return c;
}

json verify_json(const brm::VerifyReport& rep, const std::string& instance) {
  return {{"theorem", rep.theorem},  {"instance", instance},          {"seed", rep.seed},
          {"lhs", rep.lhs},          {"rhs", rep.rhs},                {"equal", rep.equal},
          {"certificates", certificates_json(rep)}};
}

template <Field K>
class Runner {
 public:
  Runner(const brm::Workspace<K>& ws, std::string instance, Options opt)
      : ws_(ws), instance_(std::move(instance)), opt_(std::move(opt)) {
    bro_.s_max = opt_.s_max;
  }

  Outcome run(const std::string& cmd, const std::vector<std::string>& names) {
    names_ = names;
    Outcome out;
    if (cmd == "colength") {
      const auto& m = one_module();
      auto cert = m.certificate(opt_.s_max);
      if (!cert) throw brm::NotFiniteColength("object '" + names[0] + "' has no finite-colength certificate", opt_.s_max);
      out.report = {{"object", names[0]}, {"colength", cert->colength}, {"exponent", cert->exponent},
                    {"s_max", opt_.s_max}};
    } else if (cmd == "fitting") {
      const auto& m = one_module();
      const auto fit = m.fitting_ideal().minimalized(opt_.s_max);
      json gens = json::array();
      for (const auto& g : fit.gens()) gens.push_back(ws_.format(g));
      out.report = {{"object", names[0]}, {"generators", gens}, {"order", m.order()},
                    {"colength", fit.colength(opt_.s_max)}};
    } else if (cmd == "mingens" || cmd == "contracted") {
      const auto& m = one_module();
      const auto mu = m.min_generators(opt_.s_max);
      const bool contracted = static_cast<int>(mu) == m.order() + m.rank();
      out.report = {{"object", names[0]}, {"min_generators", mu}, {"order", m.order()}, {"rank", m.rank()},
                    {"contracted", contracted}};
    } else if (cmd == "brtable") {
      const auto ms = modules();
      auto upper = window_or(std::vector<int>(ms.size(), 3));
      const auto table = brm::br_table(ms, std::vector<int>(ms.size(), 0), upper, bro_);
      out.csv = table.to_csv();
      out.report = json::parse(table.to_json());
      out.report["objects"] = names_;
    } else if (cmd == "mixed-br") {
      const auto ms = modules();
      const auto res = brm::stabilized_mixed_br(ms, window_or(brm::default_mixed_window(ms)), 3, bro_);
      out.report = {{"objects", names_}, {"value", res.value}, {"stabilized", res.stabilized}, {"window", res.upper}};
      if (!res.stabilized) out.code = kIndeterminate;
    } else if (cmd == "degree-check") {
      const auto ms = modules();
      int expected = static_cast<int>(ws_.vars.size()) - static_cast<int>(ms.size());
      for (const auto& m : ms) expected += m.rank();
      const auto upper = window_or(std::vector<int>(ms.size(), expected + 1));
      const auto table = brm::br_table(ms, std::vector<int>(ms.size(), 0), upper, bro_);
      const auto rep = brm::degree_check(table);
      out.report = {{"objects", names_},          {"expected", rep.expected},     {"higher_vanish", rep.higher_vanish},
                    {"top_nonzero", rep.top_nonzero}, {"equal", rep.ok()},         {"window", upper}};
      if (!rep.ok()) out.code = kFailed;
    } else if (cmd == "mu-table") {
      const auto ms = modules();
      const auto mu = brm::mu_table(ms, opt_.n_max, bro_);
      out.report = {{"objects", names_}, {"values", mu.values}, {"degree_estimate", mu.degree_estimate},
                    {"n_max", opt_.n_max}};
    } else if (cmd == "koszul-chi") {
      std::vector<brm::Endo<K>> phis;
      for (const auto& n : names_) phis.push_back(ws_.endo(n));
      if (phis.size() == ws_.vars.size()) {
        const auto rep = brm::verify_comparison(phis, opt_.s_max);
        out.report = {{"objects", names_},
                      {"h0", rep.h0},
                      {"det_colength", rep.det_colength},
                      {"equal", rep.equal},
                      {"certificates", {{"det_exponent", rep.det_exponent}, {"module_exponent", rep.module_exponent}}}};
        if (!rep.equal) out.code = kFailed;
      } else {
        const auto h0 = brm::h0_length(phis, opt_.s_max);
        out.report = {{"objects", names_},
                      {"h0", h0.length},
                      {"det_colength", nullptr},
                      {"certificates", {{"det_exponent", h0.det_exponent}, {"module_exponent", h0.module_exponent}}}};
      }
    } else if (cmd == "joint-reduction") {
      const auto ms = modules();
      const auto b = brm::random_candidate(ms, opt_.seed);
      const auto sweep = brm::joint_reduction_number(ms, b, opt_.n_max, bro_);
      const auto det = brm::verify_determinantal(ms, b, opt_.n_max, opt_.s_max);
      json steps = json::array();
      for (const auto& s : sweep.steps) {
        steps.push_back({{"n", s.n}, {"holds", s.holds}, {"lhs_exponent", s.lhs_exponent},
                         {"lhs_colength", s.lhs_colength}, {"rhs_truncated", s.rhs_truncated}});
      }
      json cols = json::array();
      for (const auto& factor : b.columns) {
        json f = json::array();
        for (const auto& c : factor) {
          json col = json::array();
          for (const auto& p : c) col.push_back(ws_.format(p));
          f.push_back(col);
        }
        cols.push_back(f);
      }
      out.report = {{"objects", names_},
                    {"seed", opt_.seed},
                    {"columns", cols},
                    {"joint_reduction_number", sweep.number ? json(*sweep.number) : json(nullptr)},
                    {"n_max", opt_.n_max},
                    {"steps", steps},
                    {"determinantal", {{"holds", det.holds}, {"n", det.n ? json(*det.n) : json(nullptr)},
                                       {"det_orders", det.det_orders}}},
                    {"equal", sweep.number.has_value() == det.holds}};
      if (ms.size() == ws_.vars.size()) {
        const auto fr = brm::freeness_and_minimality_check(ms, b, opt_.s_max);
        out.report["det_nonzero"] = fr.det_nonzero;
        out.report["extends_mingen"] = fr.extends_mingen;
      }
      if (sweep.number.has_value() != det.holds) out.code = kFailed;
    } else if (cmd == "verify-jrn0") {
      auto ms = modules(2);
      out = verify(brm::verify_jrn0(ms[0], ms[1], opt_.seed, opt_.n_max, bro_));
    } else if (cmd == "verify-prodlength") {
      out = verify(brm::verify_prodlength(modules(), bro_));
    } else if (cmd == "verify-local") {
      auto ms = modules(2);
      out = verify(brm::verify_local_identity(ms[0], ms[1], bro_));
    } else if (cmd == "verify-step1") {
      auto ms = modules(2);
      const auto b = brm::random_candidate(ms, opt_.seed);
      out = verify(brm::verify_step1(ms[0], ms[1], b, opt_.n_max, bro_));
    } else if (cmd == "minors-mult") {
      auto ms = modules(2);
      out = verify(brm::minors_multiplicativity_check(ms[0], ms[1], bro_));
    } else if (cmd == "verify-brpolya") {
      const auto ms = modules();
      const auto rep = brm::verify_brpolya(ms, window_or(std::vector<int>(ms.size(), 3)), bro_);
      out.report = {{"theorem", "joint-br-function"},
                    {"instance", instance_},
                    {"objects", names_},
                    {"seed", opt_.seed},
                    {"lhs", rep.table},
                    {"rhs", rep.formula},
                    {"equal", rep.equal()},
                    {"certificates",
                     {{"max_deviation", rep.max_deviation},
                      {"window", rep.upper},
                      {"br", rep.br},
                      {"colengths", rep.colengths},
                      {"mixed", rep.mixed},
                      {"ingredients_stabilized", rep.ingredients_stabilized}}}};
      if (!rep.equal()) out.code = rep.ingredients_stabilized ? kFailed : kIndeterminate;
    } else if (cmd == "mixed-mult") {
      if (names_.size() != 2) throw std::invalid_argument("mixed-mult needs two ideals");
      const auto rep = brm::mixed_mult_ideals(ws_.ideal(names_[0]), ws_.ideal(names_[1]), opt_.window, opt_.trials,
                                              opt_.seed, bro_);
      out.report = {{"objects", names_},         {"route_a", rep.route_a}, {"route_b", rep.route_b},
                    {"stabilized", rep.stabilized}, {"equal", rep.equal},   {"window", rep.window},
                    {"trials", rep.trials},       {"seed", opt_.seed}};
      if (!rep.stabilized) {
        out.code = kIndeterminate;
      } else if (!rep.equal) {
        out.code = kFailed;
      }
    } else if (cmd == "ic-closure") {
      if (names_.size() != 1) throw std::invalid_argument("ic-closure needs one ideal");
      const auto& i = ws_.ideal(names_[0]);
      const auto c = brm::monomial_closure(i);
      json gens = json::array();
      for (const auto& g : c.gens()) gens.push_back(ws_.format(g));
      out.report = {{"object", names_[0]}, {"closure", gens}, {"integrally_closed", brm::is_integrally_closed_monomial(i)}};
    } else if (cmd == "jrn-experiment") {
      const auto ms = modules();
      std::vector<brm::ExperimentRecord> recs(static_cast<std::size_t>(std::max(opt_.trials, 0)));
      std::vector<std::exception_ptr> errors(recs.size());
#pragma omp parallel for num_threads(opt_.jobs) schedule(dynamic, 1)
      for (int t = 0; t < static_cast<int>(recs.size()); ++t) {
        try {
          recs[static_cast<std::size_t>(t)] =
              brm::jrn_experiment(ms, 1, opt_.seed + static_cast<std::uint64_t>(t), opt_.n_max, bro_).front();
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      }
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
      json rows = json::array();
      std::map<std::string, int> histogram;
      for (const auto& r : recs) {
        const auto key = r.joint_reduction_number ? std::to_string(*r.joint_reduction_number) : "not_found";
        ++histogram[key];
        rows.push_back({{"seed", r.seed},
                        {"joint_reduction_number", r.joint_reduction_number ? json(*r.joint_reduction_number) : json(nullptr)}});
      }
      out.report = {{"objects", names_}, {"records", rows}, {"histogram", histogram}, {"n_max", opt_.n_max},
                    {"trials", opt_.trials}};
    } else {
      throw std::invalid_argument("unknown command '" + cmd + "'");
    }
    out.report["command"] = cmd;
    return out;
  }

 private:
  Outcome verify(const brm::VerifyReport& rep) {
    Outcome out;
    out.report = verify_json(rep, instance_);
    out.report["objects"] = names_;
    out.code = rep.equal ? kOk : kFailed;
    return out;
  }

  const brm::Submodule<K>& one_module() const {
    if (names_.size() != 1) throw std::invalid_argument("command needs exactly one object");
    return ws_.module(names_[0]);
  }

  std::vector<brm::Submodule<K>> modules(std::size_t exact = 0) const {
    if (names_.empty()) throw std::invalid_argument("command needs at least one object");
    if (exact != 0 && names_.size() != exact) {
      throw std::invalid_argument("command needs exactly " + std::to_string(exact) + " objects");
    }
    std::vector<brm::Submodule<K>> out;
    for (const auto& n : names_) out.push_back(ws_.module(n));
    return out;
  }

  std::vector<int> window_or(std::vector<int> fallback) const {
    if (opt_.window.empty()) return fallback;
    if (opt_.window.size() != fallback.size()) {
      throw std::invalid_argument("--window needs " + std::to_string(fallback.size()) + " entries");
    }
    return opt_.window;
  }

  const brm::Workspace<K>& ws_;
  std::string instance_;
  Options opt_;
  brm::BROptions bro_;
  std::vector<std::string> names_;
};

int classify(const std::exception_ptr& e, std::string& message) {
  try {
    std::rethrow_exception(e);
  } catch (const brm::NotFiniteColength& x) {
    message = x.what();
    return kIndeterminate;
  } catch (const brm::WindowTooSmall& x) {
    message = x.what();
    return kIndeterminate;
  } catch (const brm::GeneratorOverflow& x) {
    message = x.what();
    return kIndeterminate;
  } catch (const brm::CandidateNotJointReduction& x) {
    message = x.what();
    return kIndeterminate;
  } catch (const std::exception& x) {
    message = x.what();
    return kInputError;
  }
}

// Applies key=value task arguments over the command-line options.
Options with_overrides(Options opt, std::vector<std::string>& args) {
  std::vector<std::string> names;
  for (const auto& a : args) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) {
      names.push_back(a);
      continue;
    }
    const auto key = a.substr(0, eq);
    const auto value = a.substr(eq + 1);
    if (key == "seed") {
      opt.seed = std::stoull(value);
    } else if (key == "window") {
      opt.window = parse_window(value);
    } else if (key == "n-max") {
      opt.n_max = std::stoi(value);
    } else if (key == "s-max") {
      opt.s_max = std::stoi(value);
    } else if (key == "trials") {
      opt.trials = std::stoi(value);
    } else {
      throw std::invalid_argument("unknown task option '" + key + "'");
    }
  }
  args = names;
  return opt;
}

struct TaskResult {
  json report;
  std::string csv;
  int code = kOk;
};

int severity(int code) {
  switch (code) {
    case kInputError: return 3;
    case kIndeterminate: return 2;
    case kFailed: return 1;
    default: return 0;
  }
}

template <Field K>
int execute(const brm::InstanceFile& inst, const K& field, const std::string& path, const std::string& cmd,
            std::vector<std::string> names, const Options& opt) {
  const auto ws = brm::build_workspace(inst, field);
  auto one = [&](const std::string& c, std::vector<std::string> args, const Options& base) {
    TaskResult res;
    try {
      const auto o = with_overrides(base, args);
      Runner<K> runner(ws, path, o);
      auto out = runner.run(c, args);
      res.report = std::move(out.report);
      res.csv = std::move(out.csv);
      res.code = out.code;
    } catch (...) {
      std::string msg;
      res.code = classify(std::current_exception(), msg);
      res.report = {{"command", c}, {"error", msg}, {"exit_code", res.code}};
    }
    return res;
  };
  if (cmd == "run") {
    std::vector<TaskResult> results(inst.tasks.size());
#pragma omp parallel for num_threads(opt.jobs) schedule(dynamic, 1)
    for (int i = 0; i < static_cast<int>(inst.tasks.size()); ++i) {
      const auto& t = inst.tasks[static_cast<std::size_t>(i)];
      results[static_cast<std::size_t>(i)] = one(t.command, t.args, opt);
    }
    json all = json::array();
    int code = kOk;
    for (std::size_t i = 0; i < results.size(); ++i) {
      all.push_back({{"task", i}, {"report", results[i].report}});
      if (severity(results[i].code) > severity(code)) code = results[i].code;
    }
    std::cout << json{{"instance", path}, {"tasks", all}}.dump(2) << "\n";
    return code;
  }
  if (names.empty()) {
    const auto it = std::find_if(inst.tasks.begin(), inst.tasks.end(),
                                 [&](const brm::TaskBlock& t) { return t.command == cmd; });
    if (it == inst.tasks.end()) {
      std::cerr << "brmult: no objects given and no '" << cmd << "' task in " << path << "\n";
      return kInputError;
    }
    names = it->args;
  }
  const auto res = one(cmd, names, opt);
  if (opt.csv && !res.csv.empty() && res.code == kOk) {
    std::cout << res.csv;
  } else {
    std::cout << res.report.dump(2) << "\n";
  }
  if (res.report.contains("error")) std::cerr << "brmult: " << res.report["error"].template get<std::string>() << "\n";
  return res.code;
}

const std::vector<std::pair<std::string, std::string>>& commands() {
  static const std::vector<std::pair<std::string, std::string>> list{
      {"colength", "length of F/M for a module or ideal"},
      {"fitting", "minimal generators, order and colength of the Fitting ideal"},
      {"mingens", "minimal number of generators, order, rank"},
      {"contracted", "numerical contractedness test mu = ord + rank"},
      {"brtable", "joint Buchsbaum-Rim function over a window (CSV with --csv)"},
      {"mixed-br", "mixed Buchsbaum-Rim multiplicity by finite differences"},
      {"degree-check", "total degree of the joint Buchsbaum-Rim polynomial"},
      {"mu-table", "minimal generator counts of graded products"},
      {"koszul-chi", "H0 length of the tensor Koszul complex vs determinant colength"},
      {"joint-reduction", "random joint reduction, equational sweep and determinantal check"},
      {"verify-jrn0", "joint reduction number zero for integrally closed pairs"},
      {"verify-prodlength", "colength of a product of modules from ranks and mixed multiplicities"},
      {"verify-local", "length identity for local modules"},
      {"verify-step1", "length identity through a joint reduction"},
      {"verify-brpolya", "closed form of the joint Buchsbaum-Rim function"},
      {"minors-mult", "Fitting ideal of a product of two modules"},
      {"mixed-mult", "mixed multiplicity of two ideals by two routes"},
      {"ic-closure", "integral closure of a monomial ideal"},
      {"jrn-experiment", "joint reduction numbers over many seeds (records only)"},
      {"run", "every task of the instance file"},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"brmult: joint reductions and Buchsbaum-Rim multiplicities over k[x1..xd] at the origin"};
  app.require_subcommand(1);
  Options opt;
  std::string window;
  std::string file;
  std::vector<std::string> names;
  std::string command;
  for (const auto& [name, help] : commands()) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);
    if (name != "run") sub->add_option("objects", names, "object names (default: the file's matching task)");
    sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    sub->add_option("--field", opt.field, "fp:<prime> or q (overrides the file)");
    sub->add_option("--s-max", opt.s_max, "largest certified exponent searched")->capture_default_str()->check(CLI::Range(1, 200));
    sub->add_option("--n-max", opt.n_max, "sweep bound for joint reduction numbers")->capture_default_str()->check(CLI::Range(0, 64));
    sub->add_option("--window", window, "window corner a,b[,c...]");
    sub->add_option("--trials", opt.trials, "random trials")->capture_default_str()->check(CLI::Range(1, 100000));
    sub->add_option("--jobs", opt.jobs, "parallel tasks")->capture_default_str()->check(CLI::Range(1, 1024));
    sub->add_flag("--csv", opt.csv, "CSV output for tables");
    sub->add_flag("--json", "JSON output (default)");
    sub->callback([&command, name = name] { command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }
  try {
    if (!window.empty()) opt.window = parse_window(window);
    std::ifstream in(file, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto inst = brm::parse_instance(buf.str());
    const std::string field = opt.field.empty() ? inst.field : opt.field;
    if (brm::is_rational_field(field)) return execute(inst, brm::RationalField(), file, command, names, opt);
    return execute(inst, brm::prime_field_from_spec(field), file, command, names, opt);
  } catch (const brm::ParseError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "brmult: " << e.what() << "\n";
    return kInputError;
  }
}
