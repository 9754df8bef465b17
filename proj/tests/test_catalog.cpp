#include <doctest.h>

#include <map>
#include <numeric>
#include <random>

#include "shimura/catalog.hpp"
#include "shimura/error.hpp"

using namespace shimura;

namespace {

const Catalog& full() {
  static const Catalog c = Catalog::build(24);
  return c;
}

GroupPtr relabel(const FiniteGroup& g, std::mt19937& rng) {
  const int n = g.order();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[p[a]][p[b]] = p[g.mul(a, b)];
  return std::make_shared<const FiniteGroup>(build_group(t));
}

}  // namespace

TEST_CASE("counts per order") {
  const std::vector<int> expected = {1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15};
  std::map<int, int> counts;
  for (const auto& e : full().entries()) ++counts[e.order];
  for (int n = 1; n <= 24; ++n) CHECK_MESSAGE(counts[n] == expected[n - 1], "order " << n);
  CHECK(full().entries().size() == 74);

  auto small = Catalog::build(8);
  std::vector<int> got;
  for (int n = 1; n <= 8; ++n) {
    int c = 0;
    for (const auto& e : small.entries()) c += e.order == n;
    got.push_back(c);
  }
  CHECK(got == std::vector<int>{1, 1, 1, 2, 1, 2, 1, 5});
}

TEST_CASE("entries of equal order are pairwise non-isomorphic") {
  const auto& es = full().entries();
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j)
      if (es[i].order == es[j].order)
        CHECK_MESSAGE(!find_isomorphism(*es[i].group, *es[j].group), es[i].name << " ~ " << es[j].name);
}

TEST_CASE("every cyclic extension of a catalog group is in the catalog") {
  // Independent completeness check: all groups of order <= 24 are solvable,
  // hence extensions of a group of order n/p by Z/p.
  const auto& c = full();
  int built = 0;
  for (int n = 2; n <= 24; ++n) {
    for (int p = 2; p <= n; ++p) {
      bool prime = true;
      for (int d = 2; d * d <= p; ++d) prime = prime && p % d;
      if (!prime || n % p) continue;
      for (const auto& base : c.entries()) {
        if (base.order != n / p) continue;
        const auto& N = *base.group;
        for (const auto& a : automorphisms(base.group)) {
          std::vector<int> cur(N.order());
          std::iota(cur.begin(), cur.end(), 0);
          for (int k = 0; k < p; ++k)
            for (int x = 0; x < N.order(); ++x) cur[x] = a.image_of[cur[x]];
          for (int z = 0; z < N.order(); ++z) {
            if (a.image_of[z] != z) continue;
            bool inner = true;
            for (int x = 0; x < N.order() && inner; ++x) inner = cur[x] == N.conj(x, z);
            if (!inner) continue;
            auto g = cyclic_extension(N, a.image_of, z, p);
            CHECK_NOTHROW(c.identify(*g));
            ++built;
          }
        }
      }
    }
  }
  CHECK(built > 500);
}

TEST_CASE("identify round trip and relabelling") {
  std::mt19937 rng(11);
  for (const auto& e : full().entries()) {
    CHECK(&full().identify(*e.group) == &e);
    CHECK(full().identify(*relabel(*e.group, rng)).id() == e.id());
  }
}

TEST_CASE("Z/6 two ways") {
  auto a = cyclic_group(6);
  auto b = build_from_permutations(5, {parse_cycles(5, "(1,2)(3,4,5)")}).group;
  CHECK(full().identify(*a).id() == full().identify(*b).id());
  CHECK(full().identify(*b).name == "Z/6");
}

TEST_CASE("golden groups from explicit presentations") {
  // family (38): y1 of order 2 inverting y3, y2 central of order 3
  auto g38 = build_from_permutations(6, {parse_cycles(6, "(1,2)"), parse_cycles(6, "(4,5,6)"), parse_cycles(6, "(1,2,3)")}).group;
  CHECK(g38->order() == 18);
  CHECK(full().identify(*g38).name == "Z/3 x S3");
  CHECK(full().identify(*g38).paper_id == std::optional<std::string>("G(18,3)"));

  const auto* s4 = full().find("S4");
  const auto* sl = full().find("SL(2,3)");
  REQUIRE(s4);
  REQUIRE(sl);
  CHECK_FALSE(find_isomorphism(*s4->group, *sl->group));
  CHECK(full().find("G(16,13)") == full().find("(Z/4 x Z/2) : Z/2"));

  int with_id = 0, nonabelian = 0;
  for (const auto& e : full().entries()) {
    if (!e.paper_id) continue;
    ++with_id;
    nonabelian += !e.group->is_abelian();
    CHECK(e.paper_id->find("G(" + std::to_string(e.order) + ",") == 0);
  }
  CHECK(with_id == 24);
  CHECK(nonabelian == 10);
}

TEST_CASE("hard cap and lookup") {
  CHECK_THROWS_AS(Catalog::build(33), Error);
  CHECK_THROWS_AS(Catalog::build(30), Error);
  CHECK(full().find("nope") == nullptr);
  CHECK(full().find("8#4")->name == "D4");
  auto c = Catalog::build(6);
  CHECK_THROWS_AS(c.identify(*cyclic_group(8)), Error);
}

TEST_CASE("group files and descriptors") {
  auto g = parse_group_json(R"({"kind":"perm","degree":4,"generators":[[[1,2,3]],[[1,2],[3,4]]]})");
  CHECK(g->order() == 12);
  auto t = parse_group_json(R"({"kind":"table","table":[[0,1],[1,0]]})");
  CHECK(t->order() == 2);
  CHECK_THROWS_AS(parse_group_json(R"({"kind":"blob"})"), Error);
  CHECK_THROWS_AS(parse_group_json("{"), Error);
  CHECK(group_descriptor_json(*g, &full()) ==
        R"({"order":12,"exponent":6,"class_sizes":[1,3,4,4],"abelian":false,"id":"12#4"})");
}
