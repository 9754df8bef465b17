#pragma once

// Signatures, spherical systems of generators and Hurwitz classes.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shimura/group.hpp"

namespace shimura {

using Signature = std::vector<int>;  // sorted, entries >= 2
using Tuple = std::vector<int>;      // element indices x_1..x_r

struct SearchBudget {
  long long ssg_node_cap = 500000000;
  long long orbit_state_cap = 10000000;
};

// 2g - 2 = |G| (-2 + sum (1 - 1/m_i)). Throws NotIntegral unless g is an
// integer >= 0.
int genus_from_rh(int group_order, const Signature& sig);

// Sorted signatures of length >= min_r, entries among the element orders of
// g, compatible with the given genus.
std::vector<Signature> signatures(int genus, const FiniteGroup& g, int min_r);

// Order sequence of a tuple (not sorted).
std::vector<int> tuple_orders(const FiniteGroup& g, const Tuple& x);

// Checks the three SSG invariants; throws InvalidSSG naming the first
// violation. With a signature, the sorted orders must match it.
void validate_ssg(const FiniteGroup& g, const Tuple& x, const Signature* sig = nullptr);
bool is_ssg(const FiniteGroup& g, const Tuple& x);

// All SSGs over all arrangements of the signature, in lexicographic order.
std::vector<Tuple> enumerate_ssg(const FiniteGroup& g, const Signature& sig, const SearchBudget& budget = {});

// sigma_i for 1 <= i <= r-1: (x_i, x_{i+1}) -> (x_{i+1}, x_{i+1}^-1 x_i x_{i+1}).
Tuple braid_move(const FiniteGroup& g, const Tuple& x, int i);
Tuple braid_move_inverse(const FiniteGroup& g, const Tuple& x, int i);
Tuple apply_map(const GroupMap& a, const Tuple& x);

struct HurwitzClass {
  Tuple representative;  // least member whose orders are non-decreasing
  long long orbit_size = 0;
};

// Orbits of the braid group x Aut(G) on all SSGs of the signature.
std::vector<HurwitzClass> hurwitz_classes(const GroupPtr& g, const Signature& sig,
                                          const std::vector<GroupMap>& aut_generators,
                                          const SearchBudget& budget = {});
std::vector<HurwitzClass> hurwitz_classes(const GroupPtr& g, const Signature& sig, const SearchBudget& budget = {});

// Genus of C/H for the cover defined by x.
int quotient_genus(const FiniteGroup& g, const Tuple& x, const std::vector<int>& h_members);

// Genus of C/H and the sorted branch orders of C -> C/H.
std::pair<int, Signature> subcover_signature(const FiniteGroup& g, const Tuple& x,
                                             const std::vector<int>& h_members);

// Least |G''| allowed by two embeddings meeting in at most k elements.
long long lemma_order_bound(long long order_g, long long order_g2, long long k);

// {"group_id":..,"signature":[..],"ssg":[..],"genus":..,"dim":..}
std::string datum_json(const std::string& group_id, const FiniteGroup& g, const Tuple& x);

std::string signature_str(const Signature& sig);  // "(2,3,3,3)"
Signature parse_signature(const std::string& text);  // "2,3,3,3" or "(2,3^3)"

}  // namespace shimura
