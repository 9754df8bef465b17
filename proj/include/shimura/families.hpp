#pragma once

// Words in named generators, concrete realizations of presented groups and
// the golden table of Shimura families.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shimura/catalog.hpp"
#include "shimura/covers.hpp"

namespace shimura {

// "y1^2*y2 y3^-1", "x^3y". A name is a letter followed by digits.
using Word = std::vector<std::pair<std::string, long long>>;
Word parse_word(const std::string& text);
int evaluate_word(const FiniteGroup& g, const Word& w, const std::map<std::string, int>& named);
int evaluate_word(const FiniteGroup& g, const std::string& text, const std::map<std::string, int>& named);

struct Realization {
  GroupPtr group;
  std::map<std::string, int> named;  // generator or element name -> element index
};

// Points are the nonzero vectors of F_p^n; matrices act on columns.
Realization realize_matrices(long p, const std::map<std::string, std::vector<std::vector<long>>>& gens);
Realization realize_permutations(int degree, const std::map<std::string, std::string>& gens);
// Least assignment (in element index order) of the generators to elements of
// g satisfying every relation and generating g. A relation is "w" (w = 1) or
// "u = v". Throws NotFound when none exists.
Realization realize_presentation(const GroupPtr& g, const std::vector<std::string>& generators,
                                 const std::vector<std::string>& relations);

struct GoldenRealization {
  std::string kind;  // "presentation", "permutations" or "matrices"
  std::vector<std::string> generators;
  std::vector<std::string> relations;
  int degree = 0;
  std::map<std::string, std::string> perm_generators;
  long p = 0;
  std::map<std::string, std::vector<std::vector<long>>> matrix_generators;
  std::map<std::string, std::vector<std::vector<long>>> matrix_elements;
  std::map<std::string, std::string> word_elements;
};

struct GoldenRow {
  int label = 0;
  int genus = 0;
  int order = 0;
  std::string group;
  std::string id;
  Signature signature;
  int dim = 0;
  std::optional<bool> hyperelliptic;
  std::optional<GoldenRealization> realization;
  std::vector<std::string> ssg;
  std::optional<std::string> witness;
};

std::vector<GoldenRow> parse_golden(const std::string& json_text);
std::vector<GoldenRow> load_golden(const std::string& path);
// The table compiled into the library.
const std::vector<GoldenRow>& builtin_golden();
const std::string& builtin_golden_text();

struct ResolvedFamily {
  const GoldenRow* row = nullptr;
  Realization realization;
  Tuple ssg;
};

// Builds the group of a row with a realization (catalog lookup for
// presentations) and evaluates its SSG words. Throws NotFound without one.
ResolvedFamily resolve_family(const GoldenRow& row, const Catalog& catalog);

const GoldenRow* find_row(const std::vector<GoldenRow>& rows, int label);

}  // namespace shimura
