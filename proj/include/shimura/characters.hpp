#pragma once

// Irreducible characters over cyclotomic fields (Dixon-Schneider).

#include <string>
#include <vector>

#include "shimura/cyclotomic.hpp"
#include "shimura/group.hpp"

namespace shimura {

using ClassFunction = std::vector<Cyclotomic>;  // one value per conjugacy class

struct CharacterTable {
  GroupPtr group;
  std::vector<ClassFunction> chars;  // sorted by degree, then by value strings
  std::vector<int> degrees;
  int trivial_index = 0;
  long prime = 0;  // modulus used for the construction

  const ConjugacyData& classes() const { return group->conjugacy(); }
  int size() const { return static_cast<int>(chars.size()); }
};

// Throws OrderCapExceeded above limits.structure_cap, LiftFailed on an
// internal inconsistency.
CharacterTable character_table(const GroupPtr& g, const Limits& limits = {});

// counts[chi][alpha] = multiplicity of zeta_m^alpha as an eigenvalue of
// sigma_chi(x), m = order of x.
struct EigenvalueProfile {
  int element = 0;
  int order = 1;
  std::vector<std::vector<int>> counts;
};

EigenvalueProfile eigenvalue_profile(const CharacterTable& t, int element);

// (1/|G|) sum_x f(x) * conj(g(x)), evaluated class-wise.
Cyclotomic inner_product(const CharacterTable& t, const ClassFunction& f, const ClassFunction& g);
Cyclotomic inner_product(const CharacterTable& t, const ClassFunction& f, int chi);

// "1a", "2a", "3a", "3b", ...
std::vector<std::string> class_names(const ConjugacyData& cd);

// Classes as columns, characters as rows.
std::string chartab_text(const CharacterTable& t);

}  // namespace shimura
