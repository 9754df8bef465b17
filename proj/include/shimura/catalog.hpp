#pragma once

// Isomorphism classes of small groups, each built from a stored construction.

#include <optional>
#include <string>
#include <vector>

#include "shimura/group.hpp"

namespace shimura {

inline constexpr int kCatalogHardCap = 32;
inline constexpr int kCatalogCompleteBound = 24;

struct CatalogEntry {
  int order = 0;
  int local_index = 0;  // 1-based within its order
  std::string name;
  std::optional<std::string> paper_id;  // "G(n,k)" label for groups of the golden table
  GroupPtr group;
  bool external = false;

  // "order#local_index"; external entries use "ext:<name>".
  std::string id() const;
};

// Building blocks.
GroupPtr cyclic_group(int n);
GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b);
// Extension of N by a cyclic group of order k: elements (x, j), 0 <= j < k, with
// (x,j)(y,l) = (x * alpha^j(y) * [z if j+l >= k], (j+l) mod k).
// Requires alpha in Aut(N), alpha(z) = z and alpha^k = conjugation by z.
GroupPtr cyclic_extension(const FiniteGroup& n, const std::vector<int>& alpha, int z, int k);
GroupPtr dihedral_group(int n);  // order 2n

class Catalog {
 public:
  // Every isomorphism class of order <= max_order. Throws OrderCapExceeded
  // above the complete bound.
  static Catalog build(int max_order = kCatalogCompleteBound);

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  int max_order() const { return max_order_; }

  // The entry isomorphic to g; NotFound if none.
  const CatalogEntry& identify(const FiniteGroup& g) const;
  // Lookup by "n#k", by name, or by table id; nullptr when absent.
  const CatalogEntry* find(const std::string& key) const;

  // Adds a user-supplied group, tagged external.
  const CatalogEntry& add_external(const std::string& name, GroupPtr g);

  // order,local_index,name,paper_id,abelian,exponent,class_count
  std::string csv() const;

 private:
  int max_order_ = 0;
  std::vector<CatalogEntry> entries_;
  std::vector<std::vector<long long>> fingerprints_;
};

// {"order":..,"exponent":..,"class_sizes":[..],"abelian":..,"id":..}
std::string group_descriptor_json(const FiniteGroup& g, const Catalog* catalog);

// Reads {"kind":"table",...} or {"kind":"perm",...} group files.
GroupPtr load_group_file(const std::string& path, const Limits& limits = {});
GroupPtr parse_group_json(const std::string& text, const Limits& limits = {});

}  // namespace shimura
