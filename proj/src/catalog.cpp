#include "shimura/catalog.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "shimura/error.hpp"

namespace shimura {

namespace {

using Table = std::vector<std::vector<int>>;

GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

GroupPtr perms(int degree, std::initializer_list<const char*> gens) {
  std::vector<Permutation> ps;
  for (const char* g : gens) ps.push_back(parse_cycles(degree, g));
  return build_from_permutations(degree, ps).group;
}

GroupPtr product(std::initializer_list<GroupPtr> factors) {
  GroupPtr acc;
  for (const auto& f : factors) acc = acc ? direct_product(*acc, *f) : f;
  return acc;
}

// x -> x^-1 on an abelian group.
std::vector<int> inversion(const FiniteGroup& n) {
  std::vector<int> a(n.order());
  for (int x = 0; x < n.order(); ++x) a[x] = n.inv(x);
  return a;
}

// x -> r*x on Z/m.
std::vector<int> multiply_by(int m, int r) {
  std::vector<int> a(m);
  for (int x = 0; x < m; ++x) a[x] = (r * x) % m;
  return a;
}

GroupPtr ext_cyclic(int m, int r, int z, int k) {
  return cyclic_extension(*cyclic_group(m), multiply_by(m, r), z, k);
}

GroupPtr sl23() {
  std::vector<std::pair<int, int>> pts;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a || b) pts.emplace_back(a, b);
  auto act = [&](int m00, int m01, int m10, int m11) {
    Permutation p(8);
    for (int i = 0; i < 8; ++i) {
      auto [a, b] = pts[i];
      std::pair<int, int> img{(m00 * a + m01 * b) % 3, (m10 * a + m11 * b) % 3};
      for (int j = 0; j < 8; ++j)
        if (pts[j] == img) p[i] = j;
    }
    return p;
  };
  return build_from_permutations(8, {act(1, 1, 0, 1), act(1, 0, 1, 1)}).group;
}

struct Recipe {
  int order;
  const char* name;
  const char* paper_id;  // may be null
  std::function<GroupPtr()> make;
};

std::vector<Recipe> recipes() {
  auto Z = [](int n) { return cyclic_group(n); };
  auto D = [](int n) { return dihedral_group(n); };
  auto S3 = [] { return dihedral_group(3); };
  auto Q8 = [] { return ext_cyclic(4, 3, 2, 2); };
  auto A4 = [] { return perms(4, {"(1,2,3)", "(1,2)(3,4)"}); };
  auto Dic3 = [] { return ext_cyclic(6, 5, 3, 2); };
  std::vector<Recipe> r = {
      {1, "1", nullptr, [=] { return Z(1); }},
      {2, "Z/2", "G(2,1)", [=] { return Z(2); }},
      {3, "Z/3", "G(3,1)", [=] { return Z(3); }},
      {4, "Z/4", "G(4,1)", [=] { return Z(4); }},
      {4, "Z/2 x Z/2", "G(4,2)", [=] { return product({Z(2), Z(2)}); }},
      {5, "Z/5", "G(5,1)", [=] { return Z(5); }},
      {6, "Z/6", "G(6,2)", [=] { return Z(6); }},
      {6, "S3", "G(6,1)", S3},
      {7, "Z/7", "G(7,1)", [=] { return Z(7); }},
      {8, "Z/8", "G(8,1)", [=] { return Z(8); }},
      {8, "Z/2 x Z/4", "G(8,2)", [=] { return product({Z(2), Z(4)}); }},
      {8, "Z/2 x Z/2 x Z/2", nullptr, [=] { return product({Z(2), Z(2), Z(2)}); }},
      {8, "D4", "G(8,3)", [=] { return D(4); }},
      {8, "Q8", "G(8,4)", Q8},
      {9, "Z/9", "G(9,1)", [=] { return Z(9); }},
      {9, "Z/3 x Z/3", "G(9,2)", [=] { return product({Z(3), Z(3)}); }},
      {10, "Z/10", "G(10,2)", [=] { return Z(10); }},
      {10, "D5", nullptr, [=] { return D(5); }},
      {11, "Z/11", nullptr, [=] { return Z(11); }},
      {12, "Z/12", "G(12,2)", [=] { return Z(12); }},
      {12, "Z/2 x Z/6", "G(12,5)", [=] { return product({Z(2), Z(6)}); }},
      {12, "Z/3 : Z/4", "G(12,1)", Dic3},
      {12, "A4", "G(12,3)", A4},
      {12, "D6", "G(12,4)", [=] { return D(6); }},
      {13, "Z/13", nullptr, [=] { return Z(13); }},
      {14, "Z/14", nullptr, [=] { return Z(14); }},
      {14, "D7", nullptr, [=] { return D(7); }},
      {15, "Z/15", nullptr, [=] { return Z(15); }},
      {16, "Z/16", nullptr, [=] { return Z(16); }},
      {16, "Z/2 x Z/8", nullptr, [=] { return product({Z(2), Z(8)}); }},
      {16, "Z/4 x Z/4", nullptr, [=] { return product({Z(4), Z(4)}); }},
      {16, "Z/2 x Z/2 x Z/4", nullptr, [=] { return product({Z(2), Z(2), Z(4)}); }},
      {16, "Z/2 x Z/2 x Z/2 x Z/2", nullptr, [=] { return product({Z(2), Z(2), Z(2), Z(2)}); }},
      {16, "D8", nullptr, [=] { return D(8); }},
      {16, "Q16", nullptr, [=] { return ext_cyclic(8, 7, 4, 2); }},
      {16, "SD16", nullptr, [=] { return ext_cyclic(8, 3, 0, 2); }},
      {16, "M16", nullptr, [=] { return ext_cyclic(8, 5, 0, 2); }},
      {16, "Z/2 x D4", nullptr, [=] { return product({Z(2), D(4)}); }},
      {16, "Z/2 x Q8", nullptr, [=] { return product({Z(2), Q8()}); }},
      {16, "Z/4 : Z/4", nullptr, [=] { return ext_cyclic(4, 3, 0, 4); }},
      {16, "(Z/2 x Z/2) : Z/4", nullptr,
       [=] {
         // swap the two factors
         return cyclic_extension(*product({Z(2), Z(2)}), {0, 2, 1, 3}, 0, 4);
       }},
      {16, "(Z/4 x Z/2) : Z/2", "G(16,13)",
       [=] {
         // N = <y3> x <y2>, index 2*i + j for y3^i y2^j; y2 -> y2 y3^2
         std::vector<int> alpha(8);
         for (int i = 0; i < 4; ++i)
           for (int j = 0; j < 2; ++j) alpha[2 * i + j] = 2 * ((i + 2 * j) % 4) + j;
         return cyclic_extension(*product({Z(4), Z(2)}), alpha, 0, 2);
       }},
      {17, "Z/17", nullptr, [=] { return Z(17); }},
      {18, "Z/18", nullptr, [=] { return Z(18); }},
      {18, "Z/3 x Z/6", nullptr, [=] { return product({Z(3), Z(6)}); }},
      {18, "D9", nullptr, [=] { return D(9); }},
      {18, "Z/3 x S3", "G(18,3)", [=] { return product({Z(3), S3()}); }},
      {18, "(Z/3 x Z/3) : Z/2", nullptr,
       [=] {
         auto n = product({Z(3), Z(3)});
         return cyclic_extension(*n, inversion(*n), 0, 2);
       }},
      {19, "Z/19", nullptr, [=] { return Z(19); }},
      {20, "Z/20", nullptr, [=] { return Z(20); }},
      {20, "Z/2 x Z/10", nullptr, [=] { return product({Z(2), Z(10)}); }},
      {20, "D10", nullptr, [=] { return D(10); }},
      {20, "Z/5 : Z/4", nullptr, [=] { return ext_cyclic(10, 9, 5, 2); }},
      {20, "F5", nullptr, [=] { return ext_cyclic(5, 2, 0, 4); }},
      {21, "Z/21", nullptr, [=] { return Z(21); }},
      {21, "Z/7 : Z/3", nullptr, [=] { return ext_cyclic(7, 2, 0, 3); }},
      {22, "Z/22", nullptr, [=] { return Z(22); }},
      {22, "D11", nullptr, [=] { return D(11); }},
      {23, "Z/23", nullptr, [=] { return Z(23); }},
      {24, "Z/24", nullptr, [=] { return Z(24); }},
      {24, "Z/2 x Z/12", nullptr, [=] { return product({Z(2), Z(12)}); }},
      {24, "Z/2 x Z/2 x Z/6", nullptr, [=] { return product({Z(2), Z(2), Z(6)}); }},
      {24, "S4", "G(24,12)", [=] { return perms(4, {"(1,2,3,4)", "(1,2)"}); }},
      {24, "SL(2,3)", "G(24,3)", sl23},
      {24, "Z/3 : Z/8", nullptr, [=] { return ext_cyclic(3, 2, 0, 8); }},
      {24, "Z/3 : Q8", nullptr, [=] { return ext_cyclic(12, 11, 6, 2); }},
      {24, "D12", nullptr, [=] { return D(12); }},
      {24, "Z/2 x A4", nullptr, [=] { return product({Z(2), A4()}); }},
      {24, "Z/4 x S3", nullptr, [=] { return product({Z(4), S3()}); }},
      {24, "Z/2 x (Z/3 : Z/4)", nullptr, [=] { return product({Z(2), Dic3()}); }},
      {24, "Z/3 x D4", nullptr, [=] { return product({Z(3), D(4)}); }},
      {24, "Z/3 x Q8", nullptr, [=] { return product({Z(3), Q8()}); }},
      {24, "Z/2 x D6", nullptr, [=] { return product({Z(2), D(6)}); }},
      // D4 acts on Z/3 through its quotient by a Klein four-group
      {24, "Z/3 : D4", nullptr, [=] { return perms(7, {"(1,2,3,4)(5,6)", "(1,3)", "(5,6,7)"}); }},
  };
  return r;
}

}  // namespace

std::string CatalogEntry::id() const {
  if (external) return "ext:" + name;
  return std::to_string(order) + "#" + std::to_string(local_index);
}

GroupPtr cyclic_group(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "cyclic group order must be positive");
  std::vector<std::uint16_t> t(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>((a + b) % n);
  return share(FiniteGroup::from_flat_table(n, std::move(t)));
}

GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<std::uint16_t> t(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[static_cast<std::size_t>(x) * n + y] =
          static_cast<std::uint16_t>(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
  return share(FiniteGroup::from_flat_table(n, std::move(t)));
}

GroupPtr cyclic_extension(const FiniteGroup& n, const std::vector<int>& alpha, int z, int k) {
  const int m = n.order();
  if (k < 1 || static_cast<int>(alpha.size()) != m || z < 0 || z >= m)
    fail(ErrorCode::InvalidArgument, "bad cyclic extension data");
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (alpha[n.mul(x, y)] != n.mul(alpha[x], alpha[y]))
        fail(ErrorCode::InvalidArgument, "extension map is not a homomorphism");
  if (alpha[z] != z) fail(ErrorCode::InvalidArgument, "extension element not fixed by the map");
  std::vector<std::vector<int>> powers{std::vector<int>(m)};
  for (int x = 0; x < m; ++x) powers[0][x] = x;
  for (int j = 1; j <= k; ++j) {
    std::vector<int> next(m);
    for (int x = 0; x < m; ++x) next[x] = alpha[powers[j - 1][x]];
    powers.push_back(std::move(next));
  }
  for (int x = 0; x < m; ++x)
    if (powers[k][x] != n.conj(x, z))
      fail(ErrorCode::InvalidArgument, "k-th power of the map is not conjugation by the extension element");
  Table t(static_cast<std::size_t>(m) * k, std::vector<int>(static_cast<std::size_t>(m) * k));
  for (int j = 0; j < k; ++j)
    for (int x = 0; x < m; ++x)
      for (int l = 0; l < k; ++l)
        for (int y = 0; y < m; ++y) {
          int w = n.mul(x, powers[j][y]);
          if (j + l >= k) w = n.mul(w, z);
          t[j * m + x][l * m + y] = ((j + l) % k) * m + w;
        }
  return share(build_group(t));
}

GroupPtr dihedral_group(int n) {
  auto zn = cyclic_group(n);
  return cyclic_extension(*zn, multiply_by(n, n - 1), 0, 2);
}

Catalog Catalog::build(int max_order) {
  if (max_order < 1) fail(ErrorCode::InvalidArgument, "max_order must be positive");
  if (max_order > kCatalogHardCap)
    fail(ErrorCode::OrderCapExceeded, "catalog hard cap is " + std::to_string(kCatalogHardCap));
  if (max_order > kCatalogCompleteBound)
    fail(ErrorCode::OrderCapExceeded,
         "catalog constructions stop at order " + std::to_string(kCatalogCompleteBound));
  Catalog c;
  c.max_order_ = max_order;
  std::map<int, int> seen;
  for (const auto& r : recipes()) {
    if (r.order > max_order) continue;
    CatalogEntry e;
    e.order = r.order;
    e.local_index = ++seen[r.order];
    e.name = r.name;
    if (r.paper_id) e.paper_id = r.paper_id;
    e.group = r.make();
    if (e.group->order() != r.order) fail(ErrorCode::Internal, std::string("construction of ") + r.name + " has wrong order");
    c.fingerprints_.push_back(fingerprint(*e.group));
    c.entries_.push_back(std::move(e));
  }
  return c;
}

const CatalogEntry& Catalog::identify(const FiniteGroup& g) const {
  auto fp = fingerprint(g);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].order != g.order() || fingerprints_[i] != fp) continue;
    Limits limits;
    limits.structure_cap = std::max(limits.structure_cap, g.order());
    if (find_isomorphism(g, *entries_[i].group, limits)) return entries_[i];
  }
  fail(ErrorCode::NotFound, "no catalog entry isomorphic to the given group of order " + std::to_string(g.order()));
}

const CatalogEntry* Catalog::find(const std::string& key) const {
  for (const auto& e : entries_)
    if (e.id() == key || e.name == key || (e.paper_id && *e.paper_id == key)) return &e;
  return nullptr;
}

const CatalogEntry& Catalog::add_external(const std::string& name, GroupPtr g) {
  CatalogEntry e;
  e.order = g->order();
  e.name = name;
  e.group = std::move(g);
  e.external = true;
  e.local_index = 0;
  fingerprints_.push_back(fingerprint(*e.group));
  entries_.push_back(std::move(e));
  return entries_.back();
}

std::string Catalog::csv() const {
  std::ostringstream out;
  out << "order,local_index,name,paper_id,abelian,exponent,class_count\n";
  for (const auto& e : entries_) {
    if (e.external) continue;
    out << e.order << ',' << e.local_index << ",\"" << e.name << "\"," << (e.paper_id ? *e.paper_id : "") << ','
        << (e.group->is_abelian() ? "true" : "false") << ',' << e.group->exponent() << ','
        << e.group->conjugacy().size() << '\n';
  }
  return out.str();
}

std::string group_descriptor_json(const FiniteGroup& g, const Catalog* catalog) {
  nlohmann::ordered_json j;
  j["order"] = g.order();
  j["exponent"] = g.exponent();
  std::vector<int> sizes;
  for (int c = 0; c < g.conjugacy().size(); ++c) sizes.push_back(g.conjugacy().class_size(c));
  j["class_sizes"] = sizes;
  j["abelian"] = g.is_abelian();
  j["id"] = nullptr;
  if (catalog && g.order() <= catalog->max_order()) {
    try {
      j["id"] = catalog->identify(g).id();
    } catch (const Error&) {
    }
  }
  return j.dump();
}

GroupPtr parse_group_json(const std::string& text, const Limits& limits) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "table") {
      auto t = j.at("table").get<Table>();
      if (static_cast<int>(t.size()) > limits.construction_cap)
        fail(ErrorCode::OrderCapExceeded, "table larger than construction cap");
      return share(build_group(t));
    }
    if (kind == "perm") {
      const int degree = j.at("degree").get<int>();
      std::vector<Permutation> gens;
      for (const auto& g : j.at("generators")) {
        if (g.is_string()) {
          gens.push_back(parse_cycles(degree, g.get<std::string>()));
        } else {
          gens.push_back(cycles_to_permutation(degree, g.get<std::vector<std::vector<int>>>()));
        }
      }
      return build_from_permutations(degree, gens, limits).group;
    }
    fail(ErrorCode::ParseError, "unknown group kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

GroupPtr load_group_file(const std::string& path, const Limits& limits) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_group_json(buf.str(), limits);
}

}  // namespace shimura
