#include "shimura/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "shimura/error.hpp"

namespace shimura {

namespace {

std::string triple(int a, int b, int c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

struct PermHash {
  std::size_t operator()(const Permutation& p) const {
    std::size_t h = 1469598103934665603ULL;
    for (int v : p) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};

Permutation compose_perm(const Permutation& a, const Permutation& b) {
  Permutation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

using Bits = std::vector<std::uint64_t>;

Bits to_bits(int n, std::span<const int> members) {
  Bits b((n + 63) / 64, 0);
  for (int x : members) b[x / 64] |= (1ULL << (x % 64));
  return b;
}

bool test_bit(const Bits& b, int x) { return (b[x / 64] >> (x % 64)) & 1ULL; }

std::vector<int> from_bits(int n, const Bits& b) {
  std::vector<int> out;
  for (int x = 0; x < n; ++x)
    if (test_bit(b, x)) out.push_back(x);
  return out;
}

}  // namespace

int ConjugacyData::power_map(int c, long long k) const {
  const long long e = static_cast<long long>(power[c].size());
  long long r = k % e;
  if (r < 0) r += e;
  return power[c][static_cast<std::size_t>(r)];
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) fail(ErrorCode::NotLatinSquare, "empty table");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n)
      fail(ErrorCode::NotLatinSquare, "row " + std::to_string(a) + " has wrong length");
    std::vector<char> seen(n, 0);
    for (int b = 0; b < n; ++b) {
      int v = table[a][b];
      if (v < 0 || v >= n || seen[v])
        fail(ErrorCode::NotLatinSquare, "row " + std::to_string(a) + " is not a permutation");
      seen[v] = 1;
    }
  }
  for (int b = 0; b < n; ++b) {
    std::vector<char> seen(n, 0);
    for (int a = 0; a < n; ++a) {
      int v = table[a][b];
      if (seen[v]) fail(ErrorCode::NotLatinSquare, "column " + std::to_string(b) + " is not a permutation");
      seen[v] = 1;
    }
  }

  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (identity < 0) fail(ErrorCode::NoIdentity, "no two-sided identity element");

  for (int x = 0; x < n; ++x) {
    int y = 0;
    while (table[x][y] != identity) ++y;
    if (table[y][x] != identity)
      fail(ErrorCode::NoInverse, "element " + std::to_string(x) + " has no two-sided inverse");
  }

  auto check = [&](int a, int b, int c) {
    if (table[table[a][b]][c] != table[a][table[b][c]])
      fail(ErrorCode::NotAssociative, "triple " + triple(a, b, c));
  };
  if (n <= 256) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 100000; ++t) check(pick(rng), pick(rng), pick(rng));
  }

  // Swap labels identity <-> 0.
  auto relabel = [&](int x) { return x == identity ? 0 : (x == 0 ? identity : x); };
  std::vector<std::uint16_t> flat(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      flat[static_cast<std::size_t>(relabel(a)) * n + relabel(b)] =
          static_cast<std::uint16_t>(relabel(table[a][b]));
  return from_flat_table(n, std::move(flat));
}

FiniteGroup build_group(const std::vector<std::vector<int>>& table) { return FiniteGroup::from_table(table); }

FiniteGroup FiniteGroup::from_flat_table(int n, std::vector<std::uint16_t> table) {
  if (n > 65535) fail(ErrorCode::OrderCapExceeded, "group order exceeds index width");
  FiniteGroup g;
  g.n_ = n;
  g.table_ = std::move(table);
  g.derive();
  return g;
}

void FiniteGroup::derive() {
  const int n = n_;
  inverse_.assign(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (mul(x, y) == 0) {
        inverse_[x] = y;
        break;
      }

  element_order_.assign(n, 1);
  exponent_ = 1;
  for (int x = 0; x < n; ++x) {
    int k = 1;
    for (int y = x; y != 0; y = mul(y, x)) ++k;
    element_order_[x] = x == 0 ? 1 : k;
    exponent_ = std::lcm(exponent_, element_order_[x]);
  }

  abelian_ = true;
  for (int a = 0; a < n && abelian_; ++a)
    for (int b = a + 1; b < n && abelian_; ++b) abelian_ = mul(a, b) == mul(b, a);

  // Conjugacy classes, ordered by (element order, size, smallest member).
  ConjugacyData cd;
  std::vector<int> owner(n, -1);
  std::vector<std::vector<int>> raw;
  for (int x = 0; x < n; ++x) {
    if (owner[x] >= 0) continue;
    std::vector<int> cls;
    for (int g = 0; g < n; ++g) {
      int y = conj(x, g);
      if (owner[y] < 0) {
        owner[y] = static_cast<int>(raw.size());
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    raw.push_back(std::move(cls));
  }
  std::sort(raw.begin(), raw.end(), [&](const auto& a, const auto& b) {
    auto ka = std::make_tuple(element_order_[a[0]], a.size(), a[0]);
    auto kb = std::make_tuple(element_order_[b[0]], b.size(), b[0]);
    return ka < kb;
  });
  cd.classes = std::move(raw);
  cd.class_of.assign(n, 0);
  for (int c = 0; c < cd.size(); ++c) {
    for (int x : cd.classes[c]) cd.class_of[x] = c;
    cd.representatives.push_back(cd.classes[c][0]);
    cd.centralizer_order.push_back(n / cd.class_size(c));
    cd.element_order.push_back(element_order_[cd.classes[c][0]]);
  }
  for (int c = 0; c < cd.size(); ++c) {
    cd.inverse_class.push_back(cd.class_of[inverse_[cd.representatives[c]]]);
    std::vector<int> pw(exponent_);
    for (int k = 0; k < exponent_; ++k) pw[k] = cd.class_of[pow(cd.representatives[c], k)];
    cd.power.push_back(std::move(pw));
  }
  conjugacy_ = std::move(cd);

  // Greedy generating set.
  generators_.clear();
  std::vector<int> current{0};
  while (static_cast<int>(current.size()) < n) {
    std::vector<char> in(n, 0);
    for (int x : current) in[x] = 1;
    int best = -1;
    std::size_t best_size = 0;
    for (int g = 1; g < n; ++g) {
      if (in[g]) continue;
      std::size_t size = 0;
      if (n <= 256) {
        auto gens = generators_;
        gens.push_back(g);
        size = closure(gens).size();
      }
      if (best < 0 || size > best_size ||
          (size == best_size && element_order_[g] > element_order_[best])) {
        best = g;
        best_size = size;
      }
    }
    generators_.push_back(best);
    current = closure(generators_);
  }
}

int FiniteGroup::pow(int a, long long k) const {
  long long m = element_order_[a];
  long long r = k % m;
  if (r < 0) r += m;
  int out = 0;
  for (long long i = 0; i < r; ++i) out = mul(out, a);
  return out;
}

std::vector<int> FiniteGroup::closure(std::span<const int> gens) const {
  std::vector<char> in(n_, 0);
  std::vector<int> members{0};
  in[0] = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    int x = members[i];
    for (int g : gens) {
      int y = mul(x, g);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

bool FiniteGroup::generates(std::span<const int> gens) const {
  return static_cast<int>(closure(gens).size()) == n_;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) out[a][b] = mul(a, b);
  return out;
}

// ---------------------------------------------------------------- permutations

int PermutationGroup::index_of(const Permutation& p) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == p) return static_cast<int>(i);
  return -1;
}

Permutation cycles_to_permutation(int degree, const std::vector<std::vector<int>>& cycles) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::vector<char> used(degree, 0);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      if (a < 1 || a > degree || b < 1 || b > degree)
        fail(ErrorCode::InvalidArgument, "cycle point out of range 1.." + std::to_string(degree));
      if (used[a - 1]) fail(ErrorCode::InvalidArgument, "point repeated in cycles");
      used[a - 1] = 1;
      p[a - 1] = b - 1;
    }
  }
  return p;
}

Permutation parse_cycles(int degree, const std::string& text) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    if (c != '(') fail(ErrorCode::ParseError, "expected '(' in cycle text: " + text);
    std::size_t close = text.find(')', i);
    if (close == std::string::npos) fail(ErrorCode::ParseError, "unbalanced cycle text: " + text);
    std::string body = text.substr(i + 1, close - i - 1);
    for (char& ch : body)
      if (ch == ',') ch = ' ';
    std::istringstream in(body);
    std::vector<int> cyc;
    int v;
    while (in >> v) cyc.push_back(v);
    if (!in.eof()) fail(ErrorCode::ParseError, "bad point in cycle text: " + text);
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    i = close + 1;
  }
  return cycles_to_permutation(degree, cycles);
}

PermutationGroup build_from_permutations(int degree, const std::vector<Permutation>& generators,
                                         const Limits& limits) {
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != degree) fail(ErrorCode::InvalidArgument, "generator has wrong degree");
    std::vector<char> seen(degree, 0);
    for (int v : g) {
      if (v < 0 || v >= degree || seen[v]) fail(ErrorCode::InvalidArgument, "generator is not a bijection");
      seen[v] = 1;
    }
  }
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Permutation> elements{id};
  std::unordered_map<Permutation, int, PermHash> index{{id, 0}};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& g : generators) {
      Permutation p = compose_perm(elements[i], g);
      if (index.count(p)) continue;
      if (static_cast<int>(elements.size()) >= limits.construction_cap)
        fail(ErrorCode::OrderCapExceeded,
             "closure exceeds " + std::to_string(limits.construction_cap) + " elements");
      index.emplace(p, static_cast<int>(elements.size()));
      elements.push_back(std::move(p));
    }
  }
  const int n = static_cast<int>(elements.size());
  std::vector<std::uint16_t> flat(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      flat[static_cast<std::size_t>(a) * n + b] =
          static_cast<std::uint16_t>(index.at(compose_perm(elements[a], elements[b])));
  PermutationGroup out;
  out.group = std::make_shared<const FiniteGroup>(FiniteGroup::from_flat_table(n, std::move(flat)));
  for (const auto& g : generators) out.generator_index.push_back(index.at(g));
  out.elements = std::move(elements);
  return out;
}

// ------------------------------------------------------------------ subgroups

bool Subgroup::contains(int x) const { return std::binary_search(member_set.begin(), member_set.end(), x); }

Subgroup make_subgroup(const GroupPtr& g, std::span<const int> gens) {
  Subgroup h;
  h.parent = g;
  h.member_set = g->closure(gens);
  h.is_normal = true;
  for (int x : h.member_set) {
    for (int y = 0; y < g->order() && h.is_normal; ++y)
      if (!h.contains(g->conj(x, y))) h.is_normal = false;
  }
  return h;
}

std::vector<Subgroup> subgroups_up_to_conjugacy(const GroupPtr& g, const Limits& limits) {
  const int n = g->order();
  if (n > limits.structure_cap)
    fail(ErrorCode::OrderCapExceeded, "subgroup enumeration limited to order " + std::to_string(limits.structure_cap));

  // All subgroups, grown one cyclic extension at a time.
  std::map<Bits, std::vector<int>> all;  // bits -> generators
  std::deque<Bits> queue;
  Bits trivial = to_bits(n, std::vector<int>{0});
  all.emplace(trivial, std::vector<int>{});
  queue.push_back(trivial);
  while (!queue.empty()) {
    Bits h = queue.front();
    queue.pop_front();
    const auto gens = all.at(h);
    for (int x = 1; x < n; ++x) {
      if (test_bit(h, x)) continue;
      auto ext = gens;
      ext.push_back(x);
      Bits k = to_bits(n, g->closure(ext));
      if (all.emplace(k, ext).second) queue.push_back(k);
    }
  }

  std::map<std::vector<int>, Subgroup> reps;  // canonical members -> rep
  std::set<Bits> done;
  for (const auto& [bits, gens] : all) {
    if (done.count(bits)) continue;
    std::vector<int> members = from_bits(n, bits);
    std::set<std::vector<int>> conjugates;
    for (int y = 0; y < n; ++y) {
      std::vector<int> c;
      c.reserve(members.size());
      for (int x : members) c.push_back(g->conj(x, y));
      std::sort(c.begin(), c.end());
      done.insert(to_bits(n, c));
      conjugates.insert(std::move(c));
    }
    Subgroup s;
    s.parent = g;
    s.member_set = *conjugates.begin();
    s.is_normal = conjugates.size() == 1;
    reps.emplace(s.member_set, std::move(s));
  }
  std::vector<Subgroup> out;
  for (auto& [k, s] : reps) out.push_back(std::move(s));
  std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.member_set < b.member_set;
  });
  return out;
}

// ------------------------------------------------------ maps and isomorphisms

namespace {

// Extends gens[i] -> images[i] (first `count` generators) over the subgroup
// they generate. Fails unless the result is a well-defined injective
// homomorphism on that subgroup.
bool extend(const FiniteGroup& a, const FiniteGroup& b, const std::vector<int>& gens,
            const std::vector<int>& images, std::size_t count, std::vector<int>& phi) {
  phi.assign(a.order(), -1);
  std::vector<char> used(b.order(), 0);
  phi[0] = 0;
  used[0] = 1;
  std::vector<int> frontier{0};
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    int x = frontier[i];
    for (std::size_t j = 0; j < count; ++j) {
      int y = a.mul(x, gens[j]);
      int v = b.mul(phi[x], images[j]);
      if (phi[y] < 0) {
        if (used[v]) return false;
        used[v] = 1;
        phi[y] = v;
        frontier.push_back(y);
      } else if (phi[y] != v) {
        return false;
      }
    }
  }
  return true;
}

// Element invariant used to prune generator images.
std::pair<int, int> element_key(const FiniteGroup& g, int x) {
  return {g.element_order(x), g.conjugacy().class_size(g.conjugacy().class_of[x])};
}

template <typename Visit>
void search_maps(const FiniteGroup& a, const FiniteGroup& b, Visit&& visit) {
  const auto& gens = a.generators();
  std::vector<std::vector<int>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto key = element_key(a, gens[i]);
    for (int y = 0; y < b.order(); ++y)
      if (element_key(b, y) == key) candidates[i].push_back(y);
  }
  std::vector<int> images(gens.size());
  std::vector<int> phi;
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (stop) return;
    if (depth == gens.size()) {
      extend(a, b, gens, images, depth, phi);
      if (visit(phi)) stop = true;
      return;
    }
    for (int y : candidates[depth]) {
      images[depth] = y;
      if (!extend(a, b, gens, images, depth + 1, phi)) continue;
      self(self, depth + 1);
      if (stop) return;
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<GroupMap> automorphisms(const GroupPtr& g, const Limits& limits) {
  if (g->order() > limits.structure_cap)
    fail(ErrorCode::OrderCapExceeded, "automorphism search limited to order " + std::to_string(limits.structure_cap));
  std::vector<GroupMap> out;
  search_maps(*g, *g, [&](const std::vector<int>& phi) {
    out.push_back(GroupMap{g, g, phi});
    return false;
  });
  std::sort(out.begin(), out.end(), [](const GroupMap& x, const GroupMap& y) { return x.image_of < y.image_of; });
  return out;
}

GroupMap compose(const GroupMap& outer, const GroupMap& inner) {
  GroupMap m{inner.source, outer.target, std::vector<int>(inner.image_of.size())};
  for (std::size_t x = 0; x < inner.image_of.size(); ++x) m.image_of[x] = outer.image_of[inner.image_of[x]];
  return m;
}

std::vector<GroupMap> automorphism_generators(const std::vector<GroupMap>& all) {
  std::vector<GroupMap> gens;
  if (all.empty()) return gens;
  std::set<std::vector<int>> reached;
  reached.insert(all.front().image_of);  // identity is the smallest image vector
  auto grow = [&]() {
    std::vector<std::vector<int>> frontier(reached.begin(), reached.end());
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (const auto& s : gens) {
        std::vector<int> next(frontier[i].size());
        for (std::size_t x = 0; x < next.size(); ++x) next[x] = s.image_of[frontier[i][x]];
        if (reached.insert(next).second) frontier.push_back(std::move(next));
      }
    }
  };
  for (const auto& m : all) {
    if (reached.count(m.image_of)) continue;
    gens.push_back(m);
    grow();
    if (reached.size() == all.size()) break;
  }
  return gens;
}

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b, const Limits& limits) {
  if (a.order() != b.order()) return std::nullopt;
  if (a.order() > limits.structure_cap)
    fail(ErrorCode::OrderCapExceeded, "isomorphism test limited to order " + std::to_string(limits.structure_cap));
  if (fingerprint(a) != fingerprint(b)) return std::nullopt;
  std::optional<std::vector<int>> found;
  search_maps(a, b, [&](const std::vector<int>& phi) {
    found = phi;
    return true;
  });
  return found;
}

int center_order(const FiniteGroup& g) {
  int count = 0;
  for (int c = 0; c < g.conjugacy().size(); ++c) count += g.conjugacy().class_size(c) == 1;
  return count;
}

int derived_subgroup_order(const FiniteGroup& g) {
  std::vector<int> comms;
  std::vector<char> seen(g.order(), 0);
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y) {
      int c = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return static_cast<int>(g.closure(comms).size());
}

std::vector<long long> fingerprint(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<int> roots(n, 0);
  for (int x = 0; x < n; ++x) ++roots[g.mul(x, x)];
  std::vector<std::tuple<int, int, int>> per;
  for (int x = 0; x < n; ++x) {
    auto [o, s] = element_key(g, x);
    per.emplace_back(o, s, roots[x]);
  }
  std::sort(per.begin(), per.end());
  std::vector<long long> out{n, g.exponent(), g.conjugacy().size(), center_order(g), derived_subgroup_order(g)};
  for (auto [o, s, r] : per) {
    out.push_back(o);
    out.push_back(s);
    out.push_back(r);
  }
  return out;
}

}  // namespace shimura
