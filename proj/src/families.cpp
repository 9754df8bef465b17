#include "shimura/families.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "shimura/error.hpp"

namespace shimura {

namespace detail {
extern const char* const kGoldenTable;
}

Word parse_word(const std::string& text) {
  Word w;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
  };
  skip();
  if (i == text.size()) fail(ErrorCode::ParseError, "empty word");
  while (i < text.size()) {
    if (text[i] == '1' && w.empty()) {  // the identity
      ++i;
      skip();
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(text[i])))
      fail(ErrorCode::ParseError, "bad word '" + text + "' at position " + std::to_string(i));
    std::string name(1, text[i++]);
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) name += text[i++];
    long long e = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start || !std::isdigit(static_cast<unsigned char>(text[i - 1])))
        fail(ErrorCode::ParseError, "bad exponent in '" + text + "'");
      e = std::stoll(text.substr(start, i - start));
    }
    w.emplace_back(name, e);
    skip();
  }
  return w;
}

int evaluate_word(const FiniteGroup& g, const Word& w, const std::map<std::string, int>& named) {
  int x = 0;
  for (const auto& [name, e] : w) {
    auto it = named.find(name);
    if (it == named.end()) fail(ErrorCode::NotFound, "unknown generator '" + name + "'");
    int y = it->second;
    long long k = e;
    if (k < 0) {
      y = g.inv(y);
      k = -k;
    }
    x = g.mul(x, g.pow(y, k));
  }
  return x;
}

int evaluate_word(const FiniteGroup& g, const std::string& text, const std::map<std::string, int>& named) {
  return evaluate_word(g, parse_word(text), named);
}

Realization realize_permutations(int degree, const std::map<std::string, std::string>& gens) {
  std::vector<std::string> names;
  std::vector<Permutation> perms;
  for (const auto& [name, cycles] : gens) {
    names.push_back(name);
    perms.push_back(parse_cycles(degree, cycles));
  }
  PermutationGroup pg = build_from_permutations(degree, perms);
  Realization r{pg.group, {}};
  for (std::size_t i = 0; i < names.size(); ++i) r.named[names[i]] = pg.generator_index[i];
  return r;
}

namespace {

using Matrix = std::vector<std::vector<long>>;

long mod(long a, long p) { return ((a % p) + p) % p; }

std::vector<std::vector<long>> nonzero_vectors(int n, long p) {
  std::vector<std::vector<long>> out;
  std::vector<long> v(n, 0);
  long total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  for (long code = 1; code < total; ++code) {
    long c = code;
    for (int i = 0; i < n; ++i) {
      v[i] = c % p;
      c /= p;
    }
    out.push_back(v);
  }
  return out;
}

Permutation matrix_permutation(const Matrix& m, long p, const std::vector<std::vector<long>>& points) {
  const int n = static_cast<int>(m.size());
  std::map<std::vector<long>, int> index;
  for (std::size_t i = 0; i < points.size(); ++i) index[points[i]] = static_cast<int>(i);
  Permutation perm(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<long> w(n, 0);
    for (int r = 0; r < n; ++r) {
      if (static_cast<int>(m[r].size()) != n) fail(ErrorCode::InvalidArgument, "matrix is not square");
      long s = 0;
      for (int c = 0; c < n; ++c) s += mod(m[r][c], p) * points[i][c];
      w[r] = mod(s, p);
    }
    auto it = index.find(w);
    if (it == index.end()) fail(ErrorCode::InvalidArgument, "matrix is singular");
    perm[i] = it->second;
  }
  return perm;
}

}  // namespace

Realization realize_matrices(long p, const std::map<std::string, Matrix>& gens) {
  if (gens.empty()) fail(ErrorCode::InvalidArgument, "no matrices given");
  const int n = static_cast<int>(gens.begin()->second.size());
  if (p < 2 || n < 1 || n > 4) fail(ErrorCode::InvalidArgument, "unsupported matrix size or modulus");
  auto points = nonzero_vectors(n, p);
  std::vector<std::string> names;
  std::vector<Permutation> perms;
  for (const auto& [name, m] : gens) {
    if (static_cast<int>(m.size()) != n) fail(ErrorCode::InvalidArgument, "matrices of different sizes");
    names.push_back(name);
    perms.push_back(matrix_permutation(m, p, points));
  }
  PermutationGroup pg = build_from_permutations(static_cast<int>(points.size()), perms);
  Realization r{pg.group, {}};
  for (std::size_t i = 0; i < names.size(); ++i) r.named[names[i]] = pg.generator_index[i];
  return r;
}

Realization realize_presentation(const GroupPtr& g, const std::vector<std::string>& generators,
                                 const std::vector<std::string>& relations) {
  struct Rel {
    Word lhs, rhs;
    std::size_t ready;  // number of generators that must be assigned
  };
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < generators.size(); ++i) pos[generators[i]] = i;
  std::vector<Rel> rels;
  for (const auto& text : relations) {
    Rel r;
    auto eq = text.find('=');
    r.lhs = parse_word(text.substr(0, eq));
    if (eq != std::string::npos) r.rhs = parse_word(text.substr(eq + 1));
    r.ready = 0;
    for (const Word* w : {&r.lhs, &r.rhs})
      for (const auto& letter : *w) {
        auto it = pos.find(letter.first);
        if (it == pos.end()) fail(ErrorCode::ParseError, "relation uses unknown generator '" + letter.first + "'");
        r.ready = std::max(r.ready, it->second + 1);
      }
    rels.push_back(std::move(r));
  }
  std::map<std::string, int> named;
  std::vector<int> chosen(generators.size(), 0);
  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == generators.size()) return g->generates(chosen);
    for (int x = 0; x < g->order(); ++x) {
      chosen[k] = x;
      named[generators[k]] = x;
      bool ok = true;
      for (const auto& r : rels) {
        if (r.ready != k + 1) continue;
        if (evaluate_word(*g, r.lhs, named) != evaluate_word(*g, r.rhs, named)) {
          ok = false;
          break;
        }
      }
      if (ok && assign(k + 1)) return true;
    }
    named.erase(generators[k]);
    return false;
  };
  if (!assign(0)) fail(ErrorCode::NotFound, "presentation has no generating solution in this group");
  return Realization{g, named};
}

namespace {

GoldenRow parse_row(const nlohmann::json& j) {
  GoldenRow row;
  row.label = j.at("label").get<int>();
  row.genus = j.at("genus").get<int>();
  row.order = j.at("order").get<int>();
  row.group = j.at("group").get<std::string>();
  row.id = j.at("id").get<std::string>();
  row.signature = j.at("signature").get<Signature>();
  std::sort(row.signature.begin(), row.signature.end());
  row.dim = j.at("dim").get<int>();
  if (j.contains("hyperelliptic")) row.hyperelliptic = j["hyperelliptic"].get<bool>();
  if (j.contains("ssg")) row.ssg = j["ssg"].get<std::vector<std::string>>();
  if (j.contains("witness")) row.witness = j["witness"].get<std::string>();
  if (j.contains("realization")) {
    const auto& r = j["realization"];
    GoldenRealization gr;
    gr.kind = r.at("kind").get<std::string>();
    if (gr.kind == "presentation") {
      gr.generators = r.at("generators").get<std::vector<std::string>>();
      gr.relations = r.at("relations").get<std::vector<std::string>>();
      if (r.contains("elements")) gr.word_elements = r["elements"].get<std::map<std::string, std::string>>();
    } else if (gr.kind == "permutations") {
      gr.degree = r.at("degree").get<int>();
      gr.perm_generators = r.at("generators").get<std::map<std::string, std::string>>();
      if (r.contains("elements")) gr.word_elements = r["elements"].get<std::map<std::string, std::string>>();
    } else if (gr.kind == "matrices") {
      gr.p = r.at("p").get<long>();
      gr.matrix_generators = r.at("generators").get<std::map<std::string, Matrix>>();
      if (r.contains("elements")) gr.matrix_elements = r["elements"].get<std::map<std::string, Matrix>>();
    } else {
      fail(ErrorCode::ParseError, "unknown realization kind '" + gr.kind + "'");
    }
    row.realization = std::move(gr);
  }
  return row;
}

}  // namespace

std::vector<GoldenRow> parse_golden(const std::string& json_text) {
  std::vector<GoldenRow> rows;
  try {
    auto j = nlohmann::json::parse(json_text);
    for (const auto& r : j.at("rows")) rows.push_back(parse_row(r));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("golden table: ") + e.what());
  }
  std::set<int> labels;
  for (const auto& r : rows)
    if (!labels.insert(r.label).second) fail(ErrorCode::ParseError, "duplicate label " + std::to_string(r.label));
  return rows;
}

std::vector<GoldenRow> load_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_golden(buf.str());
}

const std::string& builtin_golden_text() {
  static const std::string text(detail::kGoldenTable);
  return text;
}

const std::vector<GoldenRow>& builtin_golden() {
  static const std::vector<GoldenRow> rows = parse_golden(builtin_golden_text());
  return rows;
}

ResolvedFamily resolve_family(const GoldenRow& row, const Catalog& catalog) {
  if (!row.realization) fail(ErrorCode::NotFound, "family (" + std::to_string(row.label) + ") has no presentation");
  const GoldenRealization& gr = *row.realization;
  ResolvedFamily out;
  out.row = &row;
  if (gr.kind == "presentation") {
    const CatalogEntry* e = catalog.find(row.id);
    if (!e) fail(ErrorCode::UnknownGroup, "group " + row.id + " is not in the catalog");
    out.realization = realize_presentation(e->group, gr.generators, gr.relations);
  } else if (gr.kind == "permutations") {
    out.realization = realize_permutations(gr.degree, gr.perm_generators);
  } else {
    auto all = gr.matrix_generators;
    for (const auto& [name, m] : gr.matrix_elements) all[name] = m;
    // Build from the generators only, then locate the extra elements.
    Realization base = realize_matrices(gr.p, gr.matrix_generators);
    Realization full = realize_matrices(gr.p, all);
    if (full.group->order() != base.group->order())
      fail(ErrorCode::InvalidArgument, "named matrices lie outside the generated group");
    out.realization = full;
  }
  auto& r = out.realization;
  for (const auto& [name, word] : gr.word_elements) r.named[name] = evaluate_word(*r.group, word, r.named);
  for (const auto& w : row.ssg) out.ssg.push_back(evaluate_word(*r.group, w, r.named));
  return out;
}

const GoldenRow* find_row(const std::vector<GoldenRow>& rows, int label) {
  for (const auto& r : rows)
    if (r.label == label) return &r;
  return nullptr;
}

}  // namespace shimura
