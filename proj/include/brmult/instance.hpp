#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "brmult/icmod.hpp"
#include "brmult/koszul.hpp"

namespace brm {

struct IdealBlock {
  std::string name;
  std::vector<std::string> gens;
  bool operator==(const IdealBlock&) const = default;
};

struct ModuleBlock {
  std::string name;
  int rank = 0;
  std::vector<std::vector<std::string>> columns;
  bool operator==(const ModuleBlock&) const = default;
};

struct EndoBlock {
  std::string name;
  int rank = 0;
  std::vector<std::vector<std::string>> rows;
  bool operator==(const EndoBlock&) const = default;
};

struct ICModuleBlock {
  std::string name;
  ICModuleSpec spec;
  bool operator==(const ICModuleBlock&) const = default;
};

struct TaskBlock {
  std::string command;
  std::vector<std::string> args;
  bool operator==(const TaskBlock&) const = default;
};

/// Parsed instance file. Grammar in docs/instance-format.md.
struct InstanceFile {
  std::vector<std::string> vars;
  std::string field = "fp:32003";
  std::vector<IdealBlock> ideals;
  std::vector<ModuleBlock> modules;
  std::vector<EndoBlock> endos;
  std::vector<ICModuleBlock> icmodules;
  std::vector<TaskBlock> tasks;

  bool operator==(const InstanceFile&) const = default;
};

/// Throws ParseError with 1-based line and column.
InstanceFile parse_instance(std::string_view text);
std::string serialize_instance(const InstanceFile& inst);

/// "fp:<prime>" or "q". Throws ParseError (line 0) otherwise.
bool is_rational_field(const std::string& spec);
PrimeField prime_field_from_spec(const std::string& spec);

/// Every named object realized over one field. Ideals are also available as
/// rank-1 modules.
template <Field K>
struct Workspace {
  K field;
  std::vector<std::string> vars;
  std::map<std::string, MIdeal<K>> ideals;
  std::map<std::string, Submodule<K>> modules;
  std::map<std::string, Endo<K>> endos;
  std::map<std::string, ICModuleSpec> specs;

  const Submodule<K>& module(const std::string& name) const;
  const MIdeal<K>& ideal(const std::string& name) const;
  const Endo<K>& endo(const std::string& name) const;
  /// Polynomial in the workspace's variable names.
  std::string format(const Poly<K>& p) const { return p.to_string(vars); }
};

template <Field K>
Workspace<K> build_workspace(const InstanceFile& inst, const K& field);

}  // namespace brm
