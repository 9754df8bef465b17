#pragma once

// Finite groups as dense multiplication tables.
//
// Elements are indices 0..order-1 and 0 is always the identity. Every module
// above this one speaks in element indices.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shimura {

struct Limits {
  int construction_cap = 10000;  // build_from_permutations closure
  int structure_cap = 256;       // automorphisms, subgroups, isomorphism
};

struct ConjugacyData {
  std::vector<std::vector<int>> classes;  // sorted members
  std::vector<int> class_of;              // element -> class index
  std::vector<int> representatives;       // smallest member of each class
  std::vector<int> centralizer_order;
  std::vector<int> element_order;         // per class
  std::vector<int> inverse_class;         // class of x^-1
  // power[c][k] = class of rep^k, k taken modulo the group exponent.
  std::vector<std::vector<int>> power;

  int size() const { return static_cast<int>(classes.size()); }
  int class_size(int c) const { return static_cast<int>(classes[c].size()); }
  int power_map(int c, long long k) const;
};

class FiniteGroup {
 public:
  // Validates the table (Latin square, identity, inverses, associativity)
  // and relabels so that the identity becomes index 0.
  static FiniteGroup from_table(const std::vector<std::vector<int>>& table);

  int order() const { return n_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  int pow(int a, long long k) const;
  // g * a * g^-1
  int conj(int a, int g) const { return mul(mul(g, a), inverse_[g]); }
  int element_order(int a) const { return element_order_[a]; }
  int exponent() const { return exponent_; }
  bool is_abelian() const { return abelian_; }
  const ConjugacyData& conjugacy() const { return conjugacy_; }
  // A small generating set chosen greedily (largest closure first).
  const std::vector<int>& generators() const { return generators_; }

  // Sorted members of the subgroup generated by gens.
  std::vector<int> closure(std::span<const int> gens) const;
  bool generates(std::span<const int> gens) const;
  std::vector<std::vector<int>> table() const;

  // Trusted construction for tables produced by this library (identity at 0,
  // already a group). Derived data is computed here.
  static FiniteGroup from_flat_table(int n, std::vector<std::uint16_t> table);

 private:
  FiniteGroup() = default;
  void derive();

  int n_ = 0;
  std::vector<std::uint16_t> table_;
  std::vector<int> inverse_;
  std::vector<int> element_order_;
  int exponent_ = 1;
  bool abelian_ = true;
  ConjugacyData conjugacy_;
  std::vector<int> generators_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Permutations are 0-based images: perm[i] = image of point i. Products
// compose as functions: (a*b)(i) = a(b(i)).
using Permutation = std::vector<int>;

struct PermutationGroup {
  GroupPtr group;
  std::vector<Permutation> elements;  // element index -> permutation
  std::vector<int> generator_index;   // element index of each input generator

  int index_of(const Permutation& p) const;  // -1 when absent
};

FiniteGroup build_group(const std::vector<std::vector<int>>& table);
PermutationGroup build_from_permutations(int degree, const std::vector<Permutation>& generators,
                                         const Limits& limits = {});
// Parses "(1,2,3)(4,5)" style cycles (1-based points) into a permutation.
Permutation parse_cycles(int degree, const std::string& text);
Permutation cycles_to_permutation(int degree, const std::vector<std::vector<int>>& cycles);

struct Subgroup {
  GroupPtr parent;
  std::vector<int> member_set;  // sorted
  bool is_normal = false;

  int order() const { return static_cast<int>(member_set.size()); }
  bool contains(int x) const;
};

Subgroup make_subgroup(const GroupPtr& g, std::span<const int> gens);
std::vector<Subgroup> subgroups_up_to_conjugacy(const GroupPtr& g, const Limits& limits = {});

struct GroupMap {
  GroupPtr source;
  GroupPtr target;
  std::vector<int> image_of;

  int operator()(int x) const { return image_of[x]; }
};

std::vector<GroupMap> automorphisms(const GroupPtr& g, const Limits& limits = {});
// A subset of the automorphisms that generates Aut(G) under composition.
std::vector<GroupMap> automorphism_generators(const std::vector<GroupMap>& all);
GroupMap compose(const GroupMap& outer, const GroupMap& inner);

// An isomorphism a -> b as an index map, if one exists.
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                                                 const Limits& limits = {});
// Cheap invariants equal for isomorphic groups.
std::vector<long long> fingerprint(const FiniteGroup& g);

int center_order(const FiniteGroup& g);
int derived_subgroup_order(const FiniteGroup& g);

}  // namespace shimura
