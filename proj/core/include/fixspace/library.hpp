#pragma once

// Named groups: built-in families plus .grp / .mat files from search
// directories. Built groups are cached, so equal names give the same object.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixspace/matrep.hpp"
#include "fixspace/perm.hpp"

namespace fixspace {

// A<n>, S<n>, C<n> (n <= 16), L2(q) or L2_q on the projective line
// (q a prime power <= 64), AGL1_q on q points.
std::optional<GroupSpec> builtin_group(std::string_view name);
// SL2_p (p prime <= 31), SL3_3, Ex3_7 (extraspecial 3^{1+2} in dimension 3
// over GF(7)).
std::optional<MatGroupSpec> builtin_matgroup(std::string_view name);

class GroupLibrary {
public:
  GroupLibrary() = default;

  void add_search_dir(std::filesystem::path dir);
  void add_group(GroupSpec spec);
  void add_matgroup(MatGroupSpec spec);

  // Permutation group by name; matrix groups resolve to their embedding.
  // Throws NotFound.
  std::shared_ptr<const PermGroup> group(std::string_view name);
  // Throws NotFound.
  const EmbeddedGroup& matgroup(std::string_view name);
  bool is_matgroup(std::string_view name);

private:
  std::optional<GroupSpec> find_group_spec(const std::string& name);
  std::optional<MatGroupSpec> find_matgroup_spec(const std::string& name);

  std::recursive_mutex mu_;
  std::vector<std::filesystem::path> dirs_;
  std::map<std::string, GroupSpec> group_specs_;
  std::map<std::string, MatGroupSpec> mat_specs_;
  std::map<std::string, std::shared_ptr<const PermGroup>> groups_;
  std::map<std::string, std::unique_ptr<EmbeddedGroup>> embedded_;
};

} // namespace fixspace
