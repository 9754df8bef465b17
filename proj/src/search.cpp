#include "shimura/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "shimura/error.hpp"

namespace shimura {

void validate_config(const SearchConfig& cfg) {
  if (cfg.genus_min < 0 || cfg.genus_max < cfg.genus_min)
    fail(ErrorCode::InvalidArgument, "genus range is empty");
  if (cfg.min_r < 3 || cfg.min_r > 4) fail(ErrorCode::InvalidArgument, "min_r must be 3 or 4");
  if (cfg.max_r != 0 && cfg.max_r < cfg.min_r) fail(ErrorCode::InvalidArgument, "max_r below min_r");
  if (cfg.max_order < 1) fail(ErrorCode::InvalidArgument, "max_order must be positive");
  if (cfg.workers < 1) fail(ErrorCode::InvalidArgument, "workers must be positive");
  if (cfg.budget.ssg_node_cap < 1 || cfg.budget.orbit_state_cap < 1)
    fail(ErrorCode::InvalidArgument, "budgets must be positive");
  if (cfg.format != "csv" && cfg.format != "json") fail(ErrorCode::InvalidArgument, "format must be csv or json");
}

void apply_config_json(SearchConfig& cfg, const std::string& json_text) {
  try {
    auto j = nlohmann::json::parse(json_text);
    if (!j.is_object()) fail(ErrorCode::ParseError, "config must be a JSON object");
    static const std::set<std::string> known = {"genus", "max_order", "min_r", "max_r", "ssg_node_cap",
                                                "orbit_state_cap", "workers", "format"};
    for (const auto& [k, v] : j.items())
      if (!known.count(k)) fail(ErrorCode::ParseError, "unknown config key '" + k + "'");
    if (j.contains("genus")) {
      auto g = j["genus"].get<std::vector<int>>();
      if (g.size() != 2) fail(ErrorCode::ParseError, "genus must be [lo, hi]");
      cfg.genus_min = g[0];
      cfg.genus_max = g[1];
    }
    if (j.contains("max_order")) cfg.max_order = j["max_order"].get<int>();
    if (j.contains("min_r")) cfg.min_r = j["min_r"].get<int>();
    if (j.contains("max_r")) cfg.max_r = j["max_r"].get<int>();
    if (j.contains("ssg_node_cap")) cfg.budget.ssg_node_cap = j["ssg_node_cap"].get<long long>();
    if (j.contains("orbit_state_cap")) cfg.budget.orbit_state_cap = j["orbit_state_cap"].get<long long>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
  validate_config(cfg);
}

void apply_config_file(SearchConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_json(cfg, buf.str());
}

namespace {

long long env_number(const char* name, long long fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  long long x = std::strtoll(v, &end, 10);
  if (*end || x < 1) fail(ErrorCode::InvalidArgument, std::string(name) + " must be a positive integer");
  return x;
}

}  // namespace

void apply_environment(SearchConfig& cfg) {
  cfg.budget.ssg_node_cap = env_number("SHIMURA_SSG_NODE_CAP", cfg.budget.ssg_node_cap);
  cfg.budget.orbit_state_cap = env_number("SHIMURA_ORBIT_STATE_CAP", cfg.budget.orbit_state_cap);
  cfg.workers = static_cast<int>(env_number("SHIMURA_WORKERS", cfg.workers));
}

const CharacterTable& GroupData::table(const CatalogEntry& e) {
  auto it = tables_.find(e.id());
  if (it == tables_.end()) it = tables_.emplace(e.id(), character_table(e.group)).first;
  return it->second;
}

const std::vector<GroupMap>& GroupData::aut_generators(const CatalogEntry& e) {
  auto it = auts_.find(e.id());
  if (it == auts_.end()) {
    Limits limits;
    limits.structure_cap = std::max(limits.structure_cap, e.group->order());
    it = auts_.emplace(e.id(), automorphism_generators(automorphisms(e.group, limits))).first;
  }
  return it->second;
}

void GroupData::prepare(const std::vector<const CatalogEntry*>& entries, int workers) {
  std::vector<const CatalogEntry*> todo;
  for (const auto* e : entries)
    if (!tables_.count(e->id()) || !auts_.count(e->id())) todo.push_back(e);
  std::vector<CharacterTable> tables(todo.size());
  std::vector<std::vector<GroupMap>> auts(todo.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto work = [&] {
    for (std::size_t i = next++; i < todo.size(); i = next++) {
      try {
        tables[i] = character_table(todo[i]->group);
        Limits limits;
        limits.structure_cap = std::max(limits.structure_cap, todo[i]->group->order());
        auts[i] = automorphism_generators(automorphisms(todo[i]->group, limits));
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  for (std::size_t i = 0; i < todo.size(); ++i) {
    tables_.emplace(todo[i]->id(), std::move(tables[i]));
    auts_.emplace(todo[i]->id(), std::move(auts[i]));
  }
}

std::vector<Cell> sweep_cells(const Catalog& catalog, const SearchConfig& cfg) {
  std::vector<Cell> cells;
  for (int genus = cfg.genus_min; genus <= cfg.genus_max; ++genus) {
    for (const auto& e : catalog.entries()) {
      if (e.order > cfg.max_order || e.order < 2) continue;
      auto sigs = signatures(genus, *e.group, cfg.min_r);
      std::sort(sigs.begin(), sigs.end());
      for (auto& s : sigs) {
        if (cfg.max_r && static_cast<int>(s.size()) > cfg.max_r) continue;
        cells.push_back({genus, &e, std::move(s)});
      }
    }
  }
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.genus != b.genus) return a.genus < b.genus;
    if (a.group->order != b.group->order) return a.group->order < b.group->order;
    return a.group->local_index < b.group->local_index;
  });
  return cells;
}

namespace {

// The chi_rho of a tuple depends only on the conjugacy classes of its entries.
std::vector<int> class_multiset(const FiniteGroup& g, const Tuple& x) {
  std::vector<int> k;
  for (int v : x) k.push_back(g.conjugacy().class_of[v]);
  std::sort(k.begin(), k.end());
  return k;
}

bool shimura_row(const FamilyReport& r) { return r.is_shimura && r.r > 3; }

CellResult run_cell_const(const CatalogEntry& e, const CharacterTable& t, const std::vector<GroupMap>& auts,
                          const Cell& cell, const SearchConfig& cfg) {
  CellResult out;
  out.cell = cell;
  try {
    const FiniteGroup& g = *e.group;
    std::map<std::vector<int>, FamilyReport> by_classes;
    auto report_for = [&](const Tuple& x) -> const FamilyReport& {
      auto key = class_multiset(g, x);
      auto it = by_classes.find(key);
      if (it == by_classes.end()) it = by_classes.emplace(key, classify(t, x)).first;
      return it->second;
    };
    for (const auto& hc : hurwitz_classes(e.group, cell.signature, auts, cfg.budget)) {
      FamilyReport rep = report_for(hc.representative);
      if (cfg.shimura_only && !shimura_row(rep)) continue;
      rep.ssg = hc.representative;
      out.rows.push_back({&e, cell.signature, hc.orbit_size, std::move(rep)});
    }
  } catch (const Error& err) {
    out.rows.clear();
    out.error = err.what();
  }
  return out;
}

}  // namespace

CellResult run_cell(GroupData& data, const Cell& cell, const SearchConfig& cfg) {
  return run_cell_const(*cell.group, data.table(*cell.group), data.aut_generators(*cell.group), cell, cfg);
}

SweepResult sweep(GroupData& data, const SearchConfig& cfg) {
  validate_config(cfg);
  SweepResult res;
  res.config = cfg;
  auto cells = sweep_cells(data.catalog(), cfg);
  std::vector<const CatalogEntry*> groups;
  for (const auto& c : cells) groups.push_back(c.group);
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
  data.prepare(groups, cfg.workers);
  res.cells.resize(cells.size());
  // Largest groups first keeps the pool busy; results land in their slot.
  std::vector<std::size_t> order(cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cells[a].group->order * cells[a].signature.size() > cells[b].group->order * cells[b].signature.size();
  });
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < order.size(); k = next++) {
      const Cell& c = cells[order[k]];
      res.cells[order[k]] = run_cell_const(*c.group, data.table(*c.group), data.aut_generators(*c.group), c, cfg);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < cfg.workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return res;
}

namespace {

std::string tuple_str(const Tuple& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " " : "") + std::to_string(x[i]);
  return s;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string sweep_csv(const SweepResult& s) {
  std::ostringstream out;
  out << "genus,order,group,group_id,paper_id,signature,r,dim,N,is_shimura,is_cm_point,hyperelliptic_witness,"
         "orbit_size,ssg,status\n";
  for (const auto& c : s.cells) {
    const CatalogEntry& e = *c.cell.group;
    const std::string head = std::to_string(c.cell.genus) + ',' + std::to_string(e.order) + ',' + csv_quote(e.name) +
                             ',' + e.id() + ',' + (e.paper_id ? *e.paper_id : "") + ',' +
                             csv_quote(signature_str(c.cell.signature)) + ',';
    if (c.error) {
      out << head << c.cell.signature.size() << ',' << static_cast<int>(c.cell.signature.size()) - 3
          << ",,,,,,," << csv_quote(*c.error) << '\n';
      continue;
    }
    for (const auto& row : c.rows) {
      const auto& r = row.report;
      out << head << r.r << ',' << r.dim << ',' << r.N << ',' << (r.is_shimura ? 1 : 0) << ','
          << (r.is_cm_point ? 1 : 0) << ',' << (r.hyperelliptic_witness < 0 ? "" : std::to_string(r.hyperelliptic_witness))
          << ',' << row.orbit_size << ',' << tuple_str(r.ssg) << ",ok\n";
    }
  }
  return out.str();
}

std::string sweep_json(const SweepResult& s) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : s.cells) {
    const CatalogEntry& e = *c.cell.group;
    if (c.error) {
      nlohmann::ordered_json j;
      j["genus"] = c.cell.genus;
      j["group"] = e.name;
      j["group_id"] = e.id();
      j["signature"] = c.cell.signature;
      j["error"] = *c.error;
      arr.push_back(j);
      continue;
    }
    for (const auto& row : c.rows) {
      nlohmann::ordered_json j;
      j["group"] = e.name;
      j["group_id"] = e.id();
      j["paper_id"] = e.paper_id ? nlohmann::ordered_json(*e.paper_id) : nlohmann::ordered_json(nullptr);
      j["signature"] = c.cell.signature;
      j["orbit_size"] = row.orbit_size;
      auto rep = nlohmann::ordered_json::parse(report_json(*e.group, row.report));
      for (auto& [k, v] : rep.items()) j[k] = v;
      arr.push_back(j);
    }
  }
  return arr.dump(1) + "\n";
}

namespace {

using RowKey = std::tuple<int, int, int, std::string, Signature, std::string>;  // genus, order, index, id, signature, name

RowKey row_key(int genus, const CatalogEntry& e, const Signature& sig) {
  return {genus, e.order, e.local_index, e.id(), sig, e.name};
}

std::string key_str(const RowKey& k) {
  return "g=" + std::to_string(std::get<0>(k)) + " " + std::get<5>(k) + " [" + std::get<3>(k) + "] " + signature_str(std::get<4>(k));
}

std::string label_str(int label) { return "(" + std::to_string(label) + ")"; }

void issue(VerifyReport& rep, ErrorCode code, std::optional<int> label, const std::string& msg) {
  rep.issues.push_back({code, label, msg});
}

}  // namespace

VerifyReport verify_against(GroupData& data, const std::vector<GoldenRow>& golden, const SweepResult& main,
                            const SweepResult& high, int max_order) {
  const Catalog& catalog = data.catalog();
  VerifyReport rep;
  rep.golden_rows = static_cast<int>(golden.size());

  struct Found {
    const SweepRow* row;
    bool used = false;
  };
  std::map<RowKey, std::vector<Found>> found;
  for (const auto& c : main.cells) {
    if (c.error)
      issue(rep, ErrorCode::SearchBudgetExceeded, std::nullopt,
            "cell g=" + std::to_string(c.cell.genus) + " " + c.cell.group->name + " " +
                signature_str(c.cell.signature) + ": " + *c.error);
    for (const auto& r : c.rows)
      if (r.report.is_shimura && r.report.dim > 0)
        found[row_key(c.cell.genus, *c.cell.group, c.cell.signature)].push_back({&r});
  }

  std::map<RowKey, std::vector<const GoldenRow*>> expected;
  for (const auto& row : golden) {
    if (row.dim != static_cast<int>(row.signature.size()) - 3) {
      issue(rep, ErrorCode::ValueMismatch, row.label,
            "family " + label_str(row.label) + " lists dim " + std::to_string(row.dim) + " but r-3 = " +
                std::to_string(row.signature.size() - 3));
      continue;
    }
    const CatalogEntry* e = catalog.find(row.id);
    if (!e || e->order > max_order || row.genus < main.config.genus_min || row.genus > main.config.genus_max) {
      issue(rep, ErrorCode::MissingRow, row.label,
            "family " + label_str(row.label) + " (" + row.group + ", " + signature_str(row.signature) +
                ") lies outside the searched catalog");
      continue;
    }
    if (e->order != row.order) {
      issue(rep, ErrorCode::ValueMismatch, row.label,
            "family " + label_str(row.label) + " lists |G| = " + std::to_string(row.order) + " for " + row.id);
      continue;
    }
    expected[row_key(row.genus, *e, row.signature)].push_back(&row);
  }

  for (auto& [key, rows] : expected) {
    auto& have = found[key];
    // Rows stating hyperellipticity claim a class with that flag first.
    std::vector<const GoldenRow*> ordered = rows;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const GoldenRow* a, const GoldenRow* b) { return a->hyperelliptic.has_value() > b->hyperelliptic.has_value(); });
    for (const GoldenRow* row : ordered) {
      Found* match = nullptr;
      for (auto& f : have) {
        if (f.used) continue;
        const bool he = f.row->report.hyperelliptic_witness >= 0;
        if (row->hyperelliptic && *row->hyperelliptic != he) continue;
        match = &f;
        break;
      }
      if (!match) {
        const bool any_left = std::any_of(have.begin(), have.end(), [](const Found& f) { return !f.used; });
        if (any_left && row->hyperelliptic) {
          issue(rep, ErrorCode::ValueMismatch, row->label,
                "family " + label_str(row->label) + " expected " + (*row->hyperelliptic ? "a" : "no") +
                    " hyperelliptic witness in " + key_str(key));
        } else {
          issue(rep, ErrorCode::MissingRow, row->label,
                "family " + label_str(row->label) + " not found: " + key_str(key));
        }
        continue;
      }
      match->used = true;
      if (match->row->report.N != row->dim) {
        issue(rep, ErrorCode::ValueMismatch, row->label,
              "family " + label_str(row->label) + " has N = " + std::to_string(match->row->report.N) +
                  ", dim " + std::to_string(row->dim));
        continue;
      }
      ++rep.matched_rows;
      const auto& g = *match->row->group->group;
      if (g.order() == 1 || (g.is_abelian() && g.exponent() == g.order()))
        ++rep.cyclic;
      else if (g.is_abelian())
        ++rep.abelian_noncyclic;
      else
        ++rep.nonabelian;
    }
  }
  for (const auto& [key, have] : found) {
    std::string labels;
    auto it = expected.find(key);
    if (it != expected.end())
      for (const auto* r : it->second) labels += (labels.empty() ? "" : ",") + label_str(r->label);
    for (const auto& f : have) {
      if (f.used) continue;
      ++rep.extra_rows;
      issue(rep, ErrorCode::ExtraRow, std::nullopt,
            "unlisted Shimura datum " + key_str(key) + " N=" + std::to_string(f.row->report.N) +
                (labels.empty() ? "" : " (cell of " + labels + ")"));
    }
  }

  for (const auto& c : high.cells) {
    if (c.error)
      issue(rep, ErrorCode::SearchBudgetExceeded, std::nullopt,
            "cell g=" + std::to_string(c.cell.genus) + " " + c.cell.group->name + " " +
                signature_str(c.cell.signature) + ": " + *c.error);
    for (const auto& r : c.rows) {
      if (!(r.report.is_shimura && r.report.dim > 0)) continue;
      ++rep.high_genus_rows;
      issue(rep, ErrorCode::ExtraRow, std::nullopt,
            "Shimura datum in the emptiness range: " +
                key_str(row_key(c.cell.genus, *c.cell.group, c.cell.signature)));
    }
  }

  for (const auto& row : golden) {
    if (!row.realization) continue;
    ++rep.presentations_checked;
    try {
      ResolvedFamily fam = resolve_family(row, catalog);
      const FiniteGroup& g = *fam.realization.group;
      const CatalogEntry& e = catalog.identify(g);
      if (!e.paper_id || *e.paper_id != row.id) {
        issue(rep, ErrorCode::ValueMismatch, row.label,
              "family " + label_str(row.label) + " presentation gives " + e.name + ", not " + row.id);
        continue;
      }
      validate_ssg(g, fam.ssg, &row.signature);
      CharacterTable t = character_table(fam.realization.group);
      FamilyReport r = classify(t, fam.ssg);
      if (r.genus != row.genus || !r.is_shimura || r.N != row.dim) {
        issue(rep, ErrorCode::ValueMismatch, row.label,
              "family " + label_str(row.label) + " presentation: genus " + std::to_string(r.genus) + ", N " +
                  std::to_string(r.N) + ", r " + std::to_string(r.r));
        continue;
      }
      if (row.hyperelliptic && *row.hyperelliptic != (r.hyperelliptic_witness >= 0))
        issue(rep, ErrorCode::ValueMismatch, row.label,
              "family " + label_str(row.label) + " presentation: hyperelliptic witness mismatch");
      if (row.witness && evaluate_word(g, *row.witness, fam.realization.named) != r.hyperelliptic_witness)
        issue(rep, ErrorCode::ValueMismatch, row.label,
              "family " + label_str(row.label) + " presentation: witness is not " + *row.witness);
    } catch (const Error& err) {
      issue(rep, ErrorCode::ValueMismatch, row.label,
            "family " + label_str(row.label) + " presentation: " + err.what());
    }
  }

  // Informational: the rows above genus 1.
  int listed = 0, hit = 0, extra = 0;
  for (const auto& [key, rows] : expected)
    if (std::get<0>(key) >= 2) listed += static_cast<int>(rows.size());
  for (const auto& [key, have] : found) {
    if (std::get<0>(key) < 2) continue;
    for (const auto& f : have) (f.used ? hit : extra) += 1;
  }
  rep.notes.push_back("genus >= 2: " + std::to_string(hit) + "/" + std::to_string(listed) + " rows matched, " +
                      std::to_string(extra) + " unlisted");
  return rep;
}

VerifyReport verify_table(GroupData& data, const std::vector<GoldenRow>& golden, const VerifyOptions& opt) {
  SearchConfig cfg;
  cfg.genus_min = opt.genus_min;
  cfg.genus_max = opt.genus_max;
  cfg.max_order = opt.max_order;
  cfg.min_r = 4;
  cfg.budget = opt.budget;
  cfg.workers = opt.workers;
  cfg.shimura_only = true;
  SweepResult main = sweep(data, cfg);
  SweepResult high;
  high.config = cfg;
  for (int g : opt.empty_genera) {
    SearchConfig h = cfg;
    h.genus_min = h.genus_max = g;
    SweepResult part = sweep(data, h);
    for (auto& c : part.cells) high.cells.push_back(std::move(c));
  }
  VerifyReport rep = verify_against(data, golden, main, high, opt.max_order);
  std::string genera;
  for (int g : opt.empty_genera) genera += (genera.empty() ? "" : ",") + std::to_string(g);
  if (!genera.empty())
    rep.notes.push_back(genera + (rep.high_genus_rows ? " not empty" : " empty") + " at order <= " +
                        std::to_string(opt.max_order));
  return rep;
}

std::string verify_text(const VerifyReport& r) {
  std::ostringstream out;
  for (const auto& i : r.issues) out << error_code_name(i.code) << (i.label ? label_str(*i.label) : "") << ": " << i.message << '\n';
  out << "matched " << r.matched_rows << "/" << r.golden_rows << " rows (" << r.cyclic << " cyclic, "
      << r.abelian_noncyclic << " abelian non-cyclic, " << r.nonabelian << " non-abelian), " << r.extra_rows
      << " unlisted, " << r.presentations_checked << " presentations re-checked\n";
  for (const auto& n : r.notes) out << n << '\n';
  out << (r.pass() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::vector<SweepRow> analyze_cell(GroupData& data, const CatalogEntry& e, const Signature& sig_in,
                                   const SearchBudget& budget) {
  Signature sig = sig_in;
  std::sort(sig.begin(), sig.end());
  for (int m : sig)
    if (m < 2) fail(ErrorCode::IncompatibleSignature, "branch orders must be at least 2");
  try {
    genus_from_rh(e.order, sig);
  } catch (const Error& err) {
    fail(ErrorCode::IncompatibleSignature, signature_str(sig) + " for " + e.name + ": " + err.what());
  }
  if (genus_from_rh(e.order, sig) < 1)
    fail(ErrorCode::IncompatibleSignature, signature_str(sig) + " for " + e.name + " gives genus 0");
  SearchConfig cfg;
  cfg.budget = budget;
  Cell cell{genus_from_rh(e.order, sig), &e, sig};
  CellResult res = run_cell(data, cell, cfg);
  if (res.error) fail(ErrorCode::SearchBudgetExceeded, *res.error);
  if (res.rows.empty())
    fail(ErrorCode::IncompatibleSignature, "no spherical system of generators of " + e.name + " has signature " + signature_str(sig));
  return res.rows;
}

std::vector<SubcoverRow> subcovers(const GroupPtr& g, const Tuple& x, const ClassFunction& chi_rho) {
  std::vector<SubcoverRow> out;
  for (const auto& h : subgroups_up_to_conjugacy(g)) {
    if (h.order() == 1 || h.order() == g->order()) continue;
    SubcoverRow row;
    row.order = h.order();
    row.normal = h.is_normal;
    std::vector<int> gens;
    for (int y : h.member_set) {
      if (y == 0) continue;
      if (static_cast<int>(g->closure(gens).size()) == h.order()) break;
      auto with = gens;
      with.push_back(y);
      if (g->closure(with).size() > g->closure(gens).size()) gens = with;
    }
    row.generators = gens;
    auto [qg, sig] = subcover_signature(*g, x, h.member_set);
    row.quotient_genus = qg;
    row.signature = sig;
    row.N = subgroup_N(*g, chi_rho, h.member_set);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace shimura
