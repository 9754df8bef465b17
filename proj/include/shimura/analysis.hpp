#pragma once

// The character of G on holomorphic 1-forms and the invariant count N.

#include <string>
#include <vector>

#include "shimura/characters.hpp"
#include "shimura/covers.hpp"

namespace shimura {

struct HodgeDecomposition {
  int genus = 0;
  std::vector<int> multiplicities;  // mu_chi, in character table order
  ClassFunction chi_rho;            // sum mu_chi * chi
};

// Chevalley-Weil. Throws NotIntegral / NegativeMultiplicity on inconsistency.
HodgeDecomposition chevalley_weil(const CharacterTable& t, const Tuple& x);

// |Fix_nu(g)| for g of order m > 1 and nu coprime to m.
long long fix_count(const FiniteGroup& g, const Tuple& x, int element, int nu);

// Eichler trace of element on H^0(C, K_C). Throws GenusTooSmall when g <= 1.
Cyclotomic eichler_trace(const FiniteGroup& g, const Tuple& x, int element);

// N = (1/2|G|) sum_x (chi(x)^2 + chi(x^2)).
long long compute_N(const CharacterTable& t, const HodgeDecomposition& h);
// The same number through the folded real form over G_0 and G_1.
long long compute_N_realform(const CharacterTable& t, const HodgeDecomposition& h);
// compute_N after checking both routes agree (MismatchWithNCW otherwise).
long long compute_N_checked(const CharacterTable& t, const HodgeDecomposition& h);

// N for the restriction of chi_rho to a subgroup.
long long subgroup_N(const FiniteGroup& g, const ClassFunction& chi_rho, const std::vector<int>& h_members);

struct FamilyReport {
  Tuple ssg;
  int genus = 0;
  int r = 0;
  int dim = 0;
  long long N = 0;
  bool is_shimura = false;
  bool is_cm_point = false;
  int hyperelliptic_witness = -1;  // element index of an involution acting as -1, or -1
  HodgeDecomposition hodge;
};

FamilyReport classify(const CharacterTable& t, const Tuple& x);

// {"genus","r","dim","N","is_shimura","is_cm_point","hyperelliptic_witness","mu","chi_rho"}
std::string report_json(const FiniteGroup& g, const FamilyReport& rep);

}  // namespace shimura
