#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "shimura/error.hpp"
#include "shimura/group.hpp"

using namespace shimura;

namespace {

GroupPtr perm_group(int degree, const std::vector<std::string>& gens) {
  std::vector<Permutation> perms;
  for (const auto& g : gens) perms.push_back(parse_cycles(degree, g));
  return build_from_permutations(degree, perms).group;
}

std::vector<std::vector<int>> cyclic_table(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

// Brute-force oracle: conjugacy classes by direct conjugation.
int brute_class_count(const FiniteGroup& g) {
  std::set<std::set<int>> classes;
  for (int x = 0; x < g.order(); ++x) {
    std::set<int> c;
    for (int y = 0; y < g.order(); ++y) c.insert(g.mul(g.mul(y, x), g.inv(y)));
    classes.insert(c);
  }
  return static_cast<int>(classes.size());
}

}  // namespace

TEST_CASE("trivial and Z/2 tables") {
  auto g = build_group({{0}});
  CHECK(g.order() == 1);
  CHECK(g.exponent() == 1);
  auto z2 = build_group(cyclic_table(2));
  CHECK(z2.element_order(0) == 1);
  CHECK(z2.element_order(1) == 2);
}

TEST_CASE("table validation errors") {
  auto code_of = [](const std::vector<std::vector<int>>& t) {
    try {
      build_group(t);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Ok;
  };
  CHECK(code_of({{0, 1}, {0, 1}}) == ErrorCode::NotLatinSquare);
  CHECK(code_of({{1, 0}, {0, 1}}) == ErrorCode::Ok);  // identity relabelled to 0
  // Latin square without identity
  CHECK(code_of({{1, 2, 0}, {2, 0, 1}, {0, 1, 2}}) == ErrorCode::Ok);
  CHECK(code_of({{1, 0, 2}, {2, 1, 0}, {0, 2, 1}}) == ErrorCode::NoIdentity);
  // loop of order 5 that is not associative
  std::vector<std::vector<int>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK(code_of(loop) == ErrorCode::NotAssociative);
}

TEST_CASE("relabelled identity still a group") {
  auto g = build_group({{1, 0}, {0, 1}});
  CHECK(g.mul(0, 1) == 1);
  CHECK(g.mul(1, 1) == 0);
}

TEST_CASE("A4 from permutations") {
  auto pg = build_from_permutations(4, {parse_cycles(4, "(1,2,3)"), parse_cycles(4, "(1,2)(3,4)")});
  const auto& g = *pg.group;
  CHECK(g.order() == 12);
  CHECK(g.exponent() == 6);
  CHECK(g.conjugacy().size() == 4);
  CHECK(brute_class_count(g) == 4);
  std::vector<int> sizes;
  for (int c = 0; c < g.conjugacy().size(); ++c) sizes.push_back(g.conjugacy().class_size(c));
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{1, 3, 4, 4});
  CHECK(pg.index_of(parse_cycles(4, "(1,2,3)")) == pg.generator_index[0]);
}

TEST_CASE("conjugacy invariants") {
  for (auto gp : {perm_group(4, {"(1,2,3,4)", "(1,2)"}), perm_group(5, {"(1,2,3,4,5)", "(2,5)(3,4)"}),
                  perm_group(3, {"(1,2,3)"})}) {
    const auto& g = *gp;
    const auto& cd = g.conjugacy();
    int total = 0;
    for (int c = 0; c < cd.size(); ++c) {
      total += cd.class_size(c);
      CHECK(cd.class_size(c) * cd.centralizer_order[c] == g.order());
      CHECK(cd.power_map(c, 1) == c);
      CHECK(cd.power_map(c, g.exponent()) == 0);
      CHECK(g.order() % cd.element_order[c] == 0);
    }
    CHECK(total == g.order());
    CHECK(g.order() % g.exponent() == 0);
    CHECK(cd.classes[0] == std::vector<int>{0});
  }
}

TEST_CASE("abelian groups have singleton classes") {
  auto g = build_group(cyclic_table(7));
  CHECK(g.conjugacy().size() == 7);
  for (int c = 0; c < 7; ++c) CHECK(g.conjugacy().centralizer_order[c] == 7);
}

TEST_CASE("SL(2,3) on nonzero vectors of F3^2") {
  // Points: index of (a,b) != 0 in order (0,1),(0,2),(1,0),(1,1),(1,2),(2,0),(2,1),(2,2).
  auto act = [](int m00, int m01, int m10, int m11) {
    std::vector<std::pair<int, int>> pts;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (a || b) pts.emplace_back(a, b);
    Permutation p(8);
    for (int i = 0; i < 8; ++i) {
      auto [a, b] = pts[i];
      std::pair<int, int> img{(m00 * a + m01 * b) % 3, (m10 * a + m11 * b) % 3};
      p[i] = static_cast<int>(std::find(pts.begin(), pts.end(), img) - pts.begin());
    }
    return p;
  };
  auto pg = build_from_permutations(8, {act(1, 1, 0, 1), act(1, 0, 1, 1)});
  const auto& g = *pg.group;
  CHECK(g.order() == 24);
  CHECK(g.exponent() == 12);
  CHECK(g.conjugacy().size() == 7);
  int minus_one = pg.index_of(act(2, 0, 0, 2));
  CHECK(g.conjugacy().class_size(g.conjugacy().class_of[minus_one]) == 1);
}

TEST_CASE("order cap") {
  Limits small;
  small.construction_cap = 100;
  try {
    build_from_permutations(5, {parse_cycles(5, "(1,2,3,4,5)"), parse_cycles(5, "(1,2)")}, small);
    FAIL("expected cap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderCapExceeded);
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_cycles(3, "(1,2"), Error);
  CHECK_THROWS_AS(parse_cycles(3, "(1,4)"), Error);
  CHECK(parse_cycles(3, "()") == Permutation{0, 1, 2});
  CHECK(parse_cycles(3, "(1 2 3)") == Permutation{1, 2, 0});
}

TEST_CASE("automorphism counts") {
  CHECK(automorphisms(std::make_shared<const FiniteGroup>(build_group(cyclic_table(2)))).size() == 1);
  CHECK(automorphisms(std::make_shared<const FiniteGroup>(build_group(cyclic_table(3)))).size() == 2);
  auto s3 = perm_group(3, {"(1,2,3)", "(1,2)"});
  auto auts = automorphisms(s3);
  CHECK(auts.size() == 6);
  // Oracle: all bijections fixing 0 that are multiplicative.
  std::vector<int> p(6);
  std::iota(p.begin(), p.end(), 0);
  int brute = 0;
  do {
    bool ok = true;
    for (int a = 0; a < 6 && ok; ++a)
      for (int b = 0; b < 6 && ok; ++b) ok = p[s3->mul(a, b)] == s3->mul(p[a], p[b]);
    brute += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  CHECK(brute == 6);
}

TEST_CASE("automorphisms form a group with inner part of index |G|/|Z|") {
  auto d4 = perm_group(4, {"(1,2,3,4)", "(1,3)"});
  auto auts = automorphisms(d4);
  CHECK(auts.size() == 8);
  std::set<std::vector<int>> all;
  for (const auto& a : auts) all.insert(a.image_of);
  for (const auto& a : auts)
    for (const auto& b : auts) CHECK(all.count(compose(a, b).image_of));
  std::set<std::vector<int>> inner;
  for (int g = 0; g < d4->order(); ++g) {
    std::vector<int> m(d4->order());
    for (int x = 0; x < d4->order(); ++x) m[x] = d4->conj(x, g);
    inner.insert(m);
  }
  CHECK(static_cast<int>(inner.size()) == d4->order() / center_order(*d4));
  auto gens = automorphism_generators(auts);
  CHECK(gens.size() <= 3);
}

TEST_CASE("subgroups up to conjugacy") {
  auto z4 = std::make_shared<const FiniteGroup>(build_group(cyclic_table(4)));
  auto subs = subgroups_up_to_conjugacy(z4);
  REQUIRE(subs.size() == 3);
  CHECK(subs[0].order() == 1);
  CHECK(subs[1].order() == 2);
  CHECK(subs[2].order() == 4);

  auto d4 = perm_group(4, {"(1,2,3,4)", "(1,3)"});
  auto ds = subgroups_up_to_conjugacy(d4);
  // Oracle: every subset closed under multiplication, then conjugacy classes.
  std::set<std::vector<int>> found;
  for (int mask = 1; mask < (1 << 8); ++mask) {
    if (!(mask & 1)) continue;
    std::vector<int> s;
    for (int x = 0; x < 8; ++x)
      if (mask >> x & 1) s.push_back(x);
    bool closed = true;
    for (int a : s)
      for (int b : s) closed = closed && (mask >> d4->mul(a, b) & 1);
    if (!closed) continue;
    std::vector<int> best = s;
    for (int g = 0; g < 8; ++g) {
      std::vector<int> c;
      for (int a : s) c.push_back(d4->conj(a, g));
      std::sort(c.begin(), c.end());
      best = std::min(best, c);
    }
    found.insert(best);
  }
  CHECK(found.size() == 8);
  CHECK(ds.size() == 8);

  // Z/2 x Z/6 has three cyclic subgroups of order 6.
  auto z2z6 = perm_group(8, {"(1,2)", "(3,4,5,6,7,8)"});
  int cyclic6 = 0;
  for (const auto& h : subgroups_up_to_conjugacy(z2z6)) {
    if (h.order() != 6) continue;
    bool cyc = false;
    for (int x : h.member_set) cyc = cyc || z2z6->element_order(x) == 6;
    cyclic6 += cyc;
    CHECK(h.is_normal);
  }
  CHECK(cyclic6 == 3);
}

TEST_CASE("isomorphism under random relabelling") {
  auto d4 = perm_group(4, {"(1,2,3,4)", "(1,3)"});
  auto q8 = perm_group(8, {"(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"});
  CHECK(q8->order() == 8);
  CHECK_FALSE(find_isomorphism(*d4, *q8).has_value());
  std::mt19937 rng(3);
  auto t = d4->table();
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<int> p(8);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    std::vector<std::vector<int>> r(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) r[p[a]][p[b]] = p[t[a][b]];
    auto g = build_group(r);
    auto iso = find_isomorphism(*d4, g);
    REQUIRE(iso.has_value());
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) CHECK((*iso)[d4->mul(a, b)] == g.mul((*iso)[a], (*iso)[b]));
  }
}

TEST_CASE("center and derived subgroup") {
  auto s4 = perm_group(4, {"(1,2,3,4)", "(1,2)"});
  CHECK(center_order(*s4) == 1);
  CHECK(derived_subgroup_order(*s4) == 12);
  auto d4 = perm_group(4, {"(1,2,3,4)", "(1,3)"});
  CHECK(center_order(*d4) == 2);
  CHECK(derived_subgroup_order(*d4) == 2);
}
