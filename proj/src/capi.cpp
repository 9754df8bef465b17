#include "shimura_c.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <mutex>
#include <set>
#include <string>

#include <json.hpp>

#include "shimura/search.hpp"

using namespace shimura;

struct shimura_catalog {
  Catalog catalog;
  GroupData data;
  std::mutex mu;

  explicit shimura_catalog(Catalog c) : catalog(std::move(c)), data(catalog) {}
};

struct shimura_group {
  shimura_catalog* owner;
  std::string entry_id;
  GroupPtr group;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
shimura_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return SHIMURA_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<shimura_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SHIMURA_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SHIMURA_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

const CatalogEntry& entry_of(const shimura_group* g) {
  const CatalogEntry* e = g->owner->catalog.find(g->entry_id);
  if (!e) fail(ErrorCode::UnknownGroup, "group " + g->entry_id + " vanished from its catalog");
  return *e;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  auto b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

Tuple parse_ssg(const FiniteGroup& g, const std::string& text) {
  std::map<std::string, int> named;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) named["g" + std::to_string(i + 1)] = gens[i];
  Tuple x;
  std::string body = trim(text);
  if (!body.empty() && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  std::size_t start = 0;
  while (start <= body.size()) {
    auto comma = body.find(',', start);
    std::string tok = trim(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (tok.empty()) fail(ErrorCode::ParseError, "empty SSG entry in '" + text + "'");
    if (tok.find_first_not_of("0123456789") == std::string::npos) {
      long v = std::stol(tok);
      if (v < 0 || v >= g.order()) fail(ErrorCode::InvalidSSG, "element index " + tok + " outside the group");
      x.push_back(static_cast<int>(v));
    } else {
      x.push_back(evaluate_word(g, tok, named));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return x;
}

nlohmann::ordered_json row_json(const FiniteGroup& g, const SweepRow& row) {
  auto j = nlohmann::ordered_json::parse(report_json(g, row.report));
  j["orbit_size"] = row.orbit_size;
  return j;
}

}  // namespace

extern "C" {

const char* shimura_status_name(shimura_status status) { return error_code_name(static_cast<ErrorCode>(status)); }

const char* shimura_last_error(void) { return last_error.c_str(); }

void shimura_free_string(char* s) { std::free(s); }

shimura_status shimura_catalog_new(int max_order, shimura_catalog** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = new shimura_catalog(Catalog::build(max_order));
  });
}

void shimura_catalog_free(shimura_catalog* cat) { delete cat; }

shimura_status shimura_catalog_csv(shimura_catalog* cat, char** out) {
  return guarded([&] {
    need(cat, "catalog");
    need(out, "out");
    std::lock_guard<std::mutex> lock(cat->mu);
    *out = dup(cat->catalog.csv());
  });
}

shimura_status shimura_group_resolve(shimura_catalog* cat, const char* spec, shimura_group** out) {
  return guarded([&] {
    need(cat, "catalog");
    need(spec, "spec");
    need(out, "out");
    *out = nullptr;
    std::lock_guard<std::mutex> lock(cat->mu);
    const std::string key = spec;
    if (const CatalogEntry* e = cat->catalog.find(key)) {
      *out = new shimura_group{cat, e->id(), e->group};
      return;
    }
    std::error_code ec;
    if (!std::filesystem::is_regular_file(key, ec)) fail(ErrorCode::UnknownGroup, "unknown group '" + key + "'");
    GroupPtr g = load_group_file(key);
    const CatalogEntry* e = nullptr;
    if (g->order() <= cat->catalog.max_order()) {
      e = &cat->catalog.identify(*g);
    } else {
      for (const auto& x : cat->catalog.entries())
        if (x.external && x.order == g->order() && find_isomorphism(*x.group, *g)) e = &x;
      if (!e) e = &cat->catalog.add_external(std::filesystem::path(key).filename().string(), g);
    }
    *out = new shimura_group{cat, e->id(), e->group};
  });
}

void shimura_group_free(shimura_group* g) { delete g; }

int shimura_group_order(const shimura_group* g) { return g ? g->group->order() : 0; }

shimura_status shimura_group_describe(const shimura_group* g, char** out) {
  return guarded([&] {
    need(g, "group");
    need(out, "out");
    std::lock_guard<std::mutex> lock(g->owner->mu);
    *out = dup(group_descriptor_json(*g->group, &g->owner->catalog));
  });
}

shimura_status shimura_group_chartab(const shimura_group* g, char** out) {
  return guarded([&] {
    need(g, "group");
    need(out, "out");
    std::lock_guard<std::mutex> lock(g->owner->mu);
    const CatalogEntry& e = entry_of(g);
    *out = dup(chartab_text(g->owner->data.table(e)));
  });
}

shimura_status shimura_analyze(const shimura_group* g, const char* signature, const char* ssg, char** out) {
  return guarded([&] {
    need(g, "group");
    need(signature, "signature");
    need(out, "out");
    std::lock_guard<std::mutex> lock(g->owner->mu);
    const CatalogEntry& e = entry_of(g);
    Signature sig = parse_signature(signature);
    SearchConfig cfg;
    apply_environment(cfg);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    if (!ssg) {
      for (const auto& row : analyze_cell(g->owner->data, e, sig, cfg.budget)) arr.push_back(row_json(*e.group, row));
    } else {
      for (int m : sig)
        if (m < 2) fail(ErrorCode::IncompatibleSignature, "branch orders must be at least 2");
      int genus = 0;
      try {
        genus = genus_from_rh(e.order, sig);
      } catch (const Error& err) {
        fail(ErrorCode::IncompatibleSignature, err.what());
      }
      if (genus < 1) fail(ErrorCode::IncompatibleSignature, signature_str(sig) + " gives genus 0");
      Tuple x = parse_ssg(*e.group, ssg);
      validate_ssg(*e.group, x, &sig);
      SweepRow row{&e, sig, 0, classify(g->owner->data.table(e), x)};
      auto j = row_json(*e.group, row);
      j.erase("orbit_size");
      arr.push_back(j);
    }
    *out = dup(arr.dump() + "\n");
  });
}

shimura_status shimura_enumerate(shimura_catalog* cat, const char* config_json, char** out) {
  return guarded([&] {
    need(cat, "catalog");
    need(out, "out");
    std::lock_guard<std::mutex> lock(cat->mu);
    SearchConfig cfg;
    if (config_json) apply_config_json(cfg, config_json);
    apply_environment(cfg);
    validate_config(cfg);
    if (cfg.max_order > cat->catalog.max_order())
      fail(ErrorCode::OrderCapExceeded, "catalog holds groups up to order " + std::to_string(cat->catalog.max_order()));
    SweepResult res = sweep(cat->data, cfg);
    *out = dup(cfg.format == "json" ? sweep_json(res) : sweep_csv(res));
  });
}

shimura_status shimura_subcovers(shimura_catalog* cat, int family_label, int max_index, char** out) {
  return guarded([&] {
    need(cat, "catalog");
    need(out, "out");
    std::lock_guard<std::mutex> lock(cat->mu);
    const GoldenRow* row = find_row(builtin_golden(), family_label);
    if (!row) fail(ErrorCode::NotFound, "no family (" + std::to_string(family_label) + ")");
    Tuple x;
    GroupPtr g;
    std::map<std::string, int> named;
    if (row->realization) {
      ResolvedFamily fam = resolve_family(*row, cat->catalog);
      g = fam.realization.group;
      x = fam.ssg;
      named = fam.realization.named;
    } else {
      const CatalogEntry* e = cat->catalog.find(row->id);
      if (!e) fail(ErrorCode::UnknownGroup, "group " + row->id + " is not in the catalog");
      for (const auto& r : analyze_cell(cat->data, *e, row->signature)) {
        if (r.report.is_shimura && (!row->hyperelliptic || *row->hyperelliptic == (r.report.hyperelliptic_witness >= 0))) {
          x = r.report.ssg;
          break;
        }
      }
      if (x.empty()) fail(ErrorCode::MissingRow, "no Shimura class for family (" + std::to_string(family_label) + ")");
      g = e->group;
    }
    CharacterTable t = character_table(g);
    FamilyReport rep = classify(t, x);
    nlohmann::ordered_json j;
    j["family"] = family_label;
    j["group"] = row->group;
    j["genus"] = rep.genus;
    j["signature"] = row->signature;
    j["ssg"] = x;
    j["N"] = rep.N;
    nlohmann::ordered_json names = nlohmann::ordered_json::object();
    for (const auto& [k, v] : named) names[k] = v;
    j["named"] = names;
    std::vector<nlohmann::ordered_json> rows;
    for (const auto& s : subcovers(g, x, rep.hodge.chi_rho)) {
      const int index = g->order() / s.order;
      if (max_index > 0 && index > max_index) continue;
      nlohmann::ordered_json r;
      r["order"] = s.order;
      r["index"] = index;
      r["generators"] = s.generators;
      r["normal"] = s.normal;
      r["quotient_genus"] = s.quotient_genus;
      r["signature"] = s.signature;
      r["N"] = s.N;
      rows.push_back(r);
    }
    // One subgroup per line.
    std::string text = j.dump();
    text.pop_back();
    text += ",\"subgroups\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) text += (i ? ",\n  " : "\n  ") + rows[i].dump();
    text += "\n]}\n";
    *out = dup(text);
  });
}

shimura_status shimura_verify_table(shimura_catalog* cat, const char* golden_path, const char* options_json,
                                    int* passed, char** out) {
  return guarded([&] {
    need(cat, "catalog");
    need(passed, "passed");
    need(out, "out");
    *passed = 0;
    std::lock_guard<std::mutex> lock(cat->mu);
    std::vector<GoldenRow> golden = golden_path ? load_golden(golden_path) : builtin_golden();
    VerifyOptions opt;
    opt.max_order = cat->catalog.max_order();
    SearchConfig env;
    apply_environment(env);
    opt.budget = env.budget;
    opt.workers = env.workers;
    if (options_json) {
      try {
        auto j = nlohmann::json::parse(options_json);
        static const std::set<std::string> known = {"genus", "empty_genera", "ssg_node_cap", "orbit_state_cap",
                                                    "workers"};
        for (const auto& [k, v] : j.items())
          if (!known.count(k)) fail(ErrorCode::ParseError, "unknown option '" + k + "'");
        if (j.contains("genus")) {
          auto g = j["genus"].get<std::vector<int>>();
          if (g.size() != 2) fail(ErrorCode::ParseError, "genus must be [lo, hi]");
          opt.genus_min = g[0];
          opt.genus_max = g[1];
        }
        if (j.contains("empty_genera")) opt.empty_genera = j["empty_genera"].get<std::vector<int>>();
        if (j.contains("ssg_node_cap")) opt.budget.ssg_node_cap = j["ssg_node_cap"].get<long long>();
        if (j.contains("orbit_state_cap")) opt.budget.orbit_state_cap = j["orbit_state_cap"].get<long long>();
        if (j.contains("workers")) opt.workers = j["workers"].get<int>();
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("options: ") + e.what());
      }
    }
    VerifyReport rep = verify_table(cat->data, golden, opt);
    *passed = rep.pass() ? 1 : 0;
    *out = dup(verify_text(rep));
  });
}

shimura_status shimura_golden_table(char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup(builtin_golden_text());
  });
}

}  // extern "C"
