#include "shimura/covers.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "shimura/cyclotomic.hpp"
#include "shimura/error.hpp"

namespace shimura {

namespace {

using Flat = std::vector<std::uint16_t>;

// Open-addressing index over fixed-width tuples stored back to back.
class TupleIndex {
 public:
  TupleIndex(const Flat& data, int width) : data_(data), width_(width) {
    const std::size_t count = width ? data.size() / width : 0;
    std::size_t cap = 16;
    while (cap < 2 * count + 1) cap <<= 1;
    slots_.assign(cap, kEmpty);
    mask_ = cap - 1;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t h = hash(&data_[i * width_]) & mask_;
      while (slots_[h] != kEmpty) h = (h + 1) & mask_;
      slots_[h] = static_cast<std::uint32_t>(i);
    }
  }

  long long find(const std::uint16_t* t) const {
    std::size_t h = hash(t) & mask_;
    while (slots_[h] != kEmpty) {
      if (std::equal(t, t + width_, &data_[static_cast<std::size_t>(slots_[h]) * width_])) return slots_[h];
      h = (h + 1) & mask_;
    }
    return -1;
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  std::size_t hash(const std::uint16_t* t) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int i = 0; i < width_; ++i) {
      h ^= t[i];
      h *= 0xff51afd7ed558ccdULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }

  const Flat& data_;
  int width_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
};

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

void check_signature(const Signature& sig) {
  for (int m : sig)
    if (m < 2) fail(ErrorCode::InvalidArgument, "signature entries must be >= 2");
}

// Lexicographically sorted SSGs, flattened.
Flat enumerate_flat(const FiniteGroup& g, const Signature& sig_in, const SearchBudget& budget) {
  Signature sig = sig_in;
  check_signature(sig);
  std::sort(sig.begin(), sig.end());
  const int r = static_cast<int>(sig.size());
  const int n = g.order();
  Flat out;
  if (r == 0) {
    if (n == 1) out.clear();
    return out;
  }
  std::vector<std::vector<int>> by_order(g.exponent() + 1);
  for (int x = 0; x < n; ++x) by_order[g.element_order(x)].push_back(x);
  for (int m : sig)
    if (m > g.exponent() || by_order[m].empty()) return out;

  std::unordered_map<std::uint64_t, bool> gen_cache;
  auto generates = [&](const std::vector<int>& t) {
    if (n <= 64) {
      std::uint64_t key = 0;
      for (int x : t) key |= 1ULL << x;
      auto it = gen_cache.find(key);
      if (it != gen_cache.end()) return it->second;
      bool ok = g.generates(t);
      gen_cache.emplace(key, ok);
      return ok;
    }
    return g.generates(t);
  };

  long long nodes = 0;
  std::vector<int> arr = sig, cur(r);
  std::vector<int> prefix(r + 1, 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == r - 1) {
      int last = g.inv(prefix[pos]);
      if (g.element_order(last) != arr[pos]) return;
      cur[pos] = last;
      if (!generates(cur)) return;
      for (int x : cur) out.push_back(static_cast<std::uint16_t>(x));
      return;
    }
    for (int x : by_order[arr[pos]]) {
      if (++nodes > budget.ssg_node_cap)
        fail(ErrorCode::SearchBudgetExceeded, "SSG node cap " + std::to_string(budget.ssg_node_cap) + " exceeded");
      cur[pos] = x;
      prefix[pos + 1] = g.mul(prefix[pos], x);
      self(self, pos + 1);
    }
  };
  do {
    rec(rec, 0);
  } while (std::next_permutation(arr.begin(), arr.end()));

  // sort tuples lexicographically
  const std::size_t count = out.size() / r;
  std::vector<std::uint32_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(&out[a * r], &out[a * r] + r, &out[b * r], &out[b * r] + r);
  });
  Flat sorted(out.size());
  for (std::size_t i = 0; i < count; ++i) std::copy_n(&out[idx[i] * r], r, &sorted[i * r]);
  return sorted;
}

}  // namespace

int genus_from_rh(int group_order, const Signature& sig) {
  check_signature(sig);
  Rational s = -2;
  for (int m : sig) s += Rational(1) - Rational(1, m);
  Rational two_g = s * group_order + 2;  // = 2g
  two_g.canonicalize();
  if (two_g.get_den() != 1 || two_g.get_num() % 2 != 0 || two_g < 0)
    fail(ErrorCode::NotIntegral, "signature " + signature_str(sig) + " incompatible with order " + std::to_string(group_order));
  mpz_class g = two_g.get_num() / 2;
  return static_cast<int>(g.get_si());
}

std::vector<Signature> signatures(int genus, const FiniteGroup& g, int min_r) {
  std::vector<int> orders;
  for (int x = 1; x < g.order(); ++x) orders.push_back(g.element_order(x));
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  const long long n = g.order();
  long long L = 1;
  for (int m : orders) L = std::lcm(L, static_cast<long long>(m));
  // sum n*(L - L/m_i) = 2nL + (2g-2)L
  const long long target = 2 * n * L + (2LL * genus - 2) * L;
  std::vector<Signature> out;
  if (orders.empty() || target < 0) return out;
  Signature cur;
  auto rec = [&](auto&& self, std::size_t start, long long remaining) -> void {
    if (remaining == 0) {
      if (static_cast<int>(cur.size()) >= min_r) out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < orders.size(); ++i) {
      long long term = n * (L - L / orders[i]);
      if (term > remaining) continue;
      cur.push_back(orders[i]);
      self(self, i, remaining - term);
      cur.pop_back();
    }
  };
  rec(rec, 0, target);
  std::sort(out.begin(), out.end(), [](const Signature& a, const Signature& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<int> tuple_orders(const FiniteGroup& g, const Tuple& x) {
  std::vector<int> o;
  for (int v : x) o.push_back(g.element_order(v));
  return o;
}

void validate_ssg(const FiniteGroup& g, const Tuple& x, const Signature* sig) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= g.order())
      fail(ErrorCode::InvalidSSG, "entry " + std::to_string(i + 1) + " is not a group element");
    if (x[i] == 0) fail(ErrorCode::InvalidSSG, "entry " + std::to_string(i + 1) + " is the identity");
  }
  if (sig) {
    auto o = tuple_orders(g, x);
    std::sort(o.begin(), o.end());
    Signature s = *sig;
    std::sort(s.begin(), s.end());
    if (o != s) fail(ErrorCode::InvalidSSG, "element orders " + signature_str(o) + " do not match signature " + signature_str(s));
  }
  int p = 0;
  for (int v : x) p = g.mul(p, v);
  if (p != 0) fail(ErrorCode::InvalidSSG, "product x_1 ... x_r is not the identity");
  if (!g.generates(x)) fail(ErrorCode::InvalidSSG, "entries do not generate the group");
}

bool is_ssg(const FiniteGroup& g, const Tuple& x) {
  try {
    validate_ssg(g, x);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::vector<Tuple> enumerate_ssg(const FiniteGroup& g, const Signature& sig, const SearchBudget& budget) {
  Flat flat = enumerate_flat(g, sig, budget);
  const std::size_t r = sig.size();
  std::vector<Tuple> out;
  if (r == 0) {
    if (g.order() == 1) out.push_back({});
    return out;
  }
  for (std::size_t i = 0; i < flat.size(); i += r) out.emplace_back(flat.begin() + i, flat.begin() + i + r);
  return out;
}

Tuple braid_move(const FiniteGroup& g, const Tuple& x, int i) {
  if (i < 1 || i >= static_cast<int>(x.size()))
    fail(ErrorCode::IndexOutOfRange, "braid index " + std::to_string(i) + " outside 1.." + std::to_string(x.size() - 1));
  Tuple y = x;
  int a = x[i - 1], b = x[i];
  y[i - 1] = b;
  y[i] = g.mul(g.mul(g.inv(b), a), b);
  return y;
}

Tuple braid_move_inverse(const FiniteGroup& g, const Tuple& x, int i) {
  if (i < 1 || i >= static_cast<int>(x.size()))
    fail(ErrorCode::IndexOutOfRange, "braid index " + std::to_string(i) + " outside 1.." + std::to_string(x.size() - 1));
  Tuple y = x;
  int a = x[i - 1], b = x[i];
  y[i - 1] = g.mul(g.mul(a, b), g.inv(a));
  y[i] = a;
  return y;
}

Tuple apply_map(const GroupMap& a, const Tuple& x) {
  Tuple y;
  for (int v : x) y.push_back(a(v));
  return y;
}

std::vector<HurwitzClass> hurwitz_classes(const GroupPtr& gp, const Signature& sig_in,
                                          const std::vector<GroupMap>& aut_generators,
                                          const SearchBudget& budget) {
  const FiniteGroup& g = *gp;
  Signature sig = sig_in;
  std::sort(sig.begin(), sig.end());
  const int r = static_cast<int>(sig.size());
  std::vector<HurwitzClass> out;
  if (r == 0) {
    if (g.order() == 1) out.push_back({{}, 1});
    return out;
  }
  Flat flat = enumerate_flat(g, sig, budget);
  const std::size_t count = flat.size() / r;
  if (static_cast<long long>(count) > budget.orbit_state_cap)
    fail(ErrorCode::SearchBudgetExceeded,
         std::to_string(count) + " SSGs exceed the orbit state cap " + std::to_string(budget.orbit_state_cap));
  if (count == 0) return out;
  TupleIndex index(flat, r);
  UnionFind uf(count);
  std::vector<std::uint16_t> t(r);
  auto link = [&](std::size_t i) {
    long long j = index.find(t.data());
    if (j < 0) fail(ErrorCode::Internal, "orbit left the SSG set");
    uf.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  };
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint16_t* s = &flat[i * r];
    for (int k = 0; k + 1 < r; ++k) {
      std::copy_n(s, r, t.begin());
      int a = s[k], b = s[k + 1];
      t[k] = static_cast<std::uint16_t>(b);
      t[k + 1] = static_cast<std::uint16_t>(g.mul(g.mul(g.inv(b), a), b));
      link(i);
    }
    for (const auto& alpha : aut_generators) {
      for (int k = 0; k < r; ++k) t[k] = static_cast<std::uint16_t>(alpha(s[k]));
      link(i);
    }
  }
  std::unordered_map<std::uint32_t, std::size_t> slot;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t root = uf.find(static_cast<std::uint32_t>(i));
    auto it = slot.find(root);
    if (it == slot.end()) {
      it = slot.emplace(root, out.size()).first;
      out.push_back({});
    }
    auto& cls = out[it->second];
    ++cls.orbit_size;
    if (cls.representative.empty()) {
      const std::uint16_t* s = &flat[i * r];
      bool sorted = true;
      for (int k = 0; k + 1 < r && sorted; ++k) sorted = g.element_order(s[k]) <= g.element_order(s[k + 1]);
      if (sorted) cls.representative.assign(s, s + r);
    }
  }
  for (const auto& c : out)
    if (c.representative.empty()) fail(ErrorCode::Internal, "orbit without a sorted member");
  std::sort(out.begin(), out.end(),
            [](const HurwitzClass& a, const HurwitzClass& b) { return a.representative < b.representative; });
  return out;
}

std::vector<HurwitzClass> hurwitz_classes(const GroupPtr& g, const Signature& sig, const SearchBudget& budget) {
  Limits limits;
  limits.structure_cap = std::max(limits.structure_cap, g->order());
  return hurwitz_classes(g, sig, automorphism_generators(automorphisms(g, limits)), budget);
}

int quotient_genus(const FiniteGroup& g, const Tuple& x, const std::vector<int>& h_members) {
  const int n = g.order();
  const int h = static_cast<int>(h_members.size());
  if (h == 0 || n % h) fail(ErrorCode::InvalidArgument, "not a subgroup");
  // coset id of gH
  std::vector<int> coset(n, -1);
  int d = 0;
  for (int a = 0; a < n; ++a) {
    if (coset[a] >= 0) continue;
    for (int y : h_members) coset[g.mul(a, y)] = d;
    ++d;
  }
  std::vector<int> rep(d);
  for (int a = n - 1; a >= 0; --a) rep[coset[a]] = a;
  long long branching = 0;
  for (int xi : x) {
    std::vector<char> seen(d, 0);
    int cycles = 0;
    for (int c = 0; c < d; ++c) {
      if (seen[c]) continue;
      ++cycles;
      for (int e = c; !seen[e]; e = coset[g.mul(xi, rep[e])]) seen[e] = 1;
    }
    branching += d - cycles;
  }
  long long two_g = branching - 2LL * d + 2;
  if (two_g < 0 || two_g % 2) fail(ErrorCode::Internal, "quotient genus not integral");
  return static_cast<int>(two_g / 2);
}

std::pair<int, Signature> subcover_signature(const FiniteGroup& g, const Tuple& x, const std::vector<int>& h_members) {
  const int n = g.order();
  std::vector<char> in_h(n, 0);
  for (int y : h_members) in_h[y] = 1;
  Signature sig;
  for (int xi : x) {
    std::vector<int> cyc = g.closure(std::vector<int>{xi});
    // points of the fibre: cosets a<x_i>
    std::vector<int> coset(n, -1);
    int d = 0;
    for (int a = 0; a < n; ++a) {
      if (coset[a] >= 0) continue;
      for (int y : cyc) coset[g.mul(a, y)] = d;
      ++d;
    }
    std::vector<char> seen(d, 0);
    for (int a = 0; a < n; ++a) {
      if (seen[coset[a]]) continue;
      for (int y : h_members) seen[coset[g.mul(y, a)]] = 1;
      // stabilizer in H of the point a<x_i> is H meet a<x_i>a^-1
      int stab = 0;
      for (int y : cyc) stab += in_h[g.conj(y, a)];
      if (stab > 1) sig.push_back(stab);
    }
  }
  std::sort(sig.begin(), sig.end());
  return {quotient_genus(g, x, h_members), sig};
}

long long lemma_order_bound(long long order_g, long long order_g2, long long k) {
  if (k <= 0) fail(ErrorCode::InvalidArgument, "intersection bound must be positive");
  return (order_g * order_g2 + k - 1) / k;
}

std::string datum_json(const std::string& group_id, const FiniteGroup& g, const Tuple& x) {
  auto o = tuple_orders(g, x);
  std::sort(o.begin(), o.end());
  nlohmann::ordered_json j;
  j["group_id"] = group_id;
  j["signature"] = o;
  j["ssg"] = x;
  j["genus"] = genus_from_rh(g.order(), o);
  j["dim"] = static_cast<int>(x.size()) - 3;
  return j.dump();
}

std::string signature_str(const Signature& sig) {
  std::string s = "(";
  for (std::size_t i = 0; i < sig.size(); ++i) s += (i ? "," : "") + std::to_string(sig[i]);
  return s + ")";
}

Signature parse_signature(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ') t += c;
  Signature sig;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) fail(ErrorCode::ParseError, "empty signature entry in '" + text + "'");
    try {
      std::size_t caret = item.find('^');
      std::size_t used = 0;
      int m = std::stoi(item.substr(0, caret), &used);
      if (used != (caret == std::string::npos ? item.size() : caret)) throw std::invalid_argument(item);
      int rep = 1;
      if (caret != std::string::npos) {
        std::string e = item.substr(caret + 1);
        rep = std::stoi(e, &used);
        if (used != e.size() || rep < 0) throw std::invalid_argument(item);
      }
      for (int i = 0; i < rep; ++i) sig.push_back(m);
    } catch (const std::logic_error&) {
      fail(ErrorCode::ParseError, "bad signature entry '" + item + "'");
    }
  }
  check_signature(sig);
  std::sort(sig.begin(), sig.end());
  return sig;
}

}  // namespace shimura
