#include <doctest.h>

#include <algorithm>

#include "shimura/catalog.hpp"
#include "shimura/characters.hpp"
#include "shimura/error.hpp"

using namespace shimura;

namespace {

const Catalog& cat() {
  static const Catalog c = Catalog::build(24);
  return c;
}

int class_of_perm(const PermutationGroup& pg, int degree, const char* cyc) {
  return pg.group->conjugacy().class_of[pg.index_of(parse_cycles(degree, cyc))];
}

}  // namespace

TEST_CASE("Z/2 table") {
  auto t = character_table(cyclic_group(2));
  REQUIRE(t.size() == 2);
  CHECK(t.chars[t.trivial_index] == ClassFunction{Cyclotomic(1), Cyclotomic(1)});
  CHECK(t.chars[1 - t.trivial_index] == ClassFunction{Cyclotomic(1), Cyclotomic(-1)});
}

TEST_CASE("S3 table") {
  auto pg = build_from_permutations(3, {parse_cycles(3, "(1,2,3)"), parse_cycles(3, "(1,2)")});
  auto t = character_table(pg.group);
  CHECK(t.degrees == std::vector<int>{1, 1, 2});
  int tr = class_of_perm(pg, 3, "(1,2)"), three = class_of_perm(pg, 3, "(1,2,3)");
  CHECK(t.chars[2][0] == Cyclotomic(2));
  CHECK(t.chars[2][tr] == Cyclotomic(0));
  CHECK(t.chars[2][three] == Cyclotomic(-1));
}

TEST_CASE("A4 table") {
  auto pg = build_from_permutations(4, {parse_cycles(4, "(1,2,3)"), parse_cycles(4, "(1,2)(3,4)")});
  auto t = character_table(pg.group);
  CHECK(t.degrees == std::vector<int>{1, 1, 1, 3});
  int c = class_of_perm(pg, 4, "(1,2,3)");
  std::vector<Cyclotomic> lin;
  for (int chi = 0; chi < 3; ++chi)
    if (chi != t.trivial_index) lin.push_back(t.chars[chi][c]);
  REQUIRE(lin.size() == 2);
  CHECK(((lin[0] == Cyclotomic::zeta(3, 1) && lin[1] == Cyclotomic::zeta(3, 2)) ||
         (lin[0] == Cyclotomic::zeta(3, 2) && lin[1] == Cyclotomic::zeta(3, 1))));

  auto prof = eigenvalue_profile(t, pg.index_of(parse_cycles(4, "(1,2,3)")));
  CHECK(prof.order == 3);
  CHECK(prof.counts[3] == std::vector<int>{1, 1, 1});
  auto id = eigenvalue_profile(t, 0);
  for (int chi = 0; chi < t.size(); ++chi) CHECK(id.counts[chi] == std::vector<int>{t.degrees[chi]});
}

TEST_CASE("inner products") {
  auto g = cat().find("S4")->group;
  auto t = character_table(g);
  for (int chi = 0; chi < t.size(); ++chi) CHECK(inner_product(t, t.chars[chi], chi) == Cyclotomic(1));
  ClassFunction reg(g->conjugacy().size(), Cyclotomic(0));
  reg[0] = Cyclotomic(g->order());
  CHECK(inner_product(t, reg, t.trivial_index) == Cyclotomic(1));
  for (int chi = 0; chi < t.size(); ++chi) CHECK(inner_product(t, reg, chi) == Cyclotomic(t.degrees[chi]));
}

TEST_CASE("character table invariants for every catalog group") {
  for (const auto& e : cat().entries()) {
    const auto& g = *e.group;
    auto t = character_table(e.group);
    const auto& cd = g.conjugacy();
    CHECK_MESSAGE(t.size() == cd.size(), e.name);
    int sq = 0;
    for (int d : t.degrees) {
      sq += d * d;
      CHECK(g.order() % d == 0);
    }
    CHECK_MESSAGE(sq == g.order(), e.name);
    for (int a = 0; a < t.size(); ++a)
      for (int b = 0; b < t.size(); ++b)
        CHECK(inner_product(t, t.chars[a], t.chars[b]) == Cyclotomic(a == b ? 1 : 0));
    for (int x = 0; x < cd.size(); ++x)
      for (int y = 0; y < cd.size(); ++y) {
        Cyclotomic s;
        for (int c = 0; c < t.size(); ++c) s += t.chars[c][x] * t.chars[c][y].conjugate();
        CHECK(s == Cyclotomic(x == y ? cd.centralizer_order[x] : 0));
      }
    for (int c = 0; c < t.size(); ++c)
      for (int x = 0; x < cd.size(); ++x) CHECK(t.chars[c][cd.inverse_class[x]] == t.chars[c][x].conjugate());
    // eigenvalue profiles reconstruct the character
    for (int x = 0; x < cd.size(); ++x) {
      auto prof = eigenvalue_profile(t, cd.representatives[x]);
      for (int c = 0; c < t.size(); ++c) {
        Cyclotomic s;
        int total = 0;
        for (int a = 0; a < prof.order; ++a) {
          CHECK(prof.counts[c][a] >= 0);
          total += prof.counts[c][a];
          s += scale(Cyclotomic::zeta(prof.order, a), Rational(prof.counts[c][a]));
        }
        CHECK(total == t.degrees[c]);
        CHECK(s == t.chars[c][x]);
      }
    }
  }
}

TEST_CASE("deterministic ordering and text") {
  auto g = cat().find("Q8")->group;
  auto a = character_table(g), b = character_table(g);
  CHECK(a.chars == b.chars);
  auto text = chartab_text(a);
  CHECK(text.find("class") == 0);
  CHECK(text.find("X.5") != std::string::npos);
  CHECK(class_names(g->conjugacy()) == std::vector<std::string>{"1a", "2a", "4a", "4b", "4c"});
}
