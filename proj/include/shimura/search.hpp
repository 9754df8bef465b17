#pragma once

// Sweeps over (genus, group, signature) cells and the golden-table check.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shimura/analysis.hpp"
#include "shimura/catalog.hpp"
#include "shimura/error.hpp"
#include "shimura/families.hpp"

namespace shimura {

struct SearchConfig {
  int genus_min = 1;
  int genus_max = 7;
  int max_order = kCatalogCompleteBound;
  int min_r = 4;
  int max_r = 0;  // 0: no upper bound
  SearchBudget budget;
  int workers = 1;
  std::string format = "csv";
  // Report only classes with N = r-3 and r > 3.
  bool shimura_only = false;
};

// Throws InvalidArgument on an out-of-range field.
void validate_config(const SearchConfig& cfg);
// {"genus":[lo,hi],"max_order":K,"min_r":4,"max_r":0,"ssg_node_cap":..,
//  "orbit_state_cap":..,"workers":..,"format":"csv"}; absent keys keep cfg.
void apply_config_json(SearchConfig& cfg, const std::string& json_text);
void apply_config_file(SearchConfig& cfg, const std::string& path);
// SHIMURA_SSG_NODE_CAP, SHIMURA_ORBIT_STATE_CAP, SHIMURA_WORKERS.
void apply_environment(SearchConfig& cfg);

struct Cell {
  int genus = 0;
  const CatalogEntry* group = nullptr;
  Signature signature;
};

struct SweepRow {
  const CatalogEntry* group = nullptr;
  Signature signature;
  long long orbit_size = 0;
  FamilyReport report;
};

struct CellResult {
  Cell cell;
  std::vector<SweepRow> rows;
  std::optional<std::string> error;  // budget or other failure, reported inline
};

struct SweepResult {
  SearchConfig config;
  std::vector<CellResult> cells;  // deterministic order
};

// Caches character tables and automorphism generators of catalog groups.
class GroupData {
 public:
  explicit GroupData(const Catalog& catalog) : catalog_(catalog) {}
  const Catalog& catalog() const { return catalog_; }
  const CharacterTable& table(const CatalogEntry& e);
  const std::vector<GroupMap>& aut_generators(const CatalogEntry& e);
  void prepare(const std::vector<const CatalogEntry*>& entries, int workers);

 private:
  const Catalog& catalog_;
  // Keyed by entry id so that entries added later do not invalidate them.
  std::map<std::string, CharacterTable> tables_;
  std::map<std::string, std::vector<GroupMap>> auts_;
};

std::vector<Cell> sweep_cells(const Catalog& catalog, const SearchConfig& cfg);
CellResult run_cell(GroupData& data, const Cell& cell, const SearchConfig& cfg);
SweepResult sweep(GroupData& data, const SearchConfig& cfg);

std::string sweep_csv(const SweepResult& s);
std::string sweep_json(const SweepResult& s);

struct VerifyIssue {
  ErrorCode code = ErrorCode::Ok;
  std::optional<int> label;
  std::string message;
};

struct VerifyReport {
  std::vector<VerifyIssue> issues;
  int golden_rows = 0;
  int matched_rows = 0;
  int cyclic = 0, abelian_noncyclic = 0, nonabelian = 0;  // among matched rows
  int extra_rows = 0;
  int high_genus_rows = 0;  // Shimura rows found in the emptiness sweep
  int presentations_checked = 0;
  std::vector<std::string> notes;
  bool pass() const { return issues.empty(); }
};

struct VerifyOptions {
  int genus_min = 1;
  int genus_max = 7;
  std::vector<int> empty_genera = {8, 9};
  int max_order = kCatalogCompleteBound;
  SearchBudget budget;
  int workers = 1;
};

// Diffs the Shimura rows of the sweep against the golden table and
// re-checks every golden row carrying a presentation.
VerifyReport verify_table(GroupData& data, const std::vector<GoldenRow>& golden, const VerifyOptions& opt);
VerifyReport verify_against(GroupData& data, const std::vector<GoldenRow>& golden, const SweepResult& main,
                            const SweepResult& high, int max_order);
std::string verify_text(const VerifyReport& r);

// Hurwitz classes of one cell with their reports (all classes, not only Shimura).
std::vector<SweepRow> analyze_cell(GroupData& data, const CatalogEntry& e, const Signature& sig,
                                   const SearchBudget& budget = {});

struct SubcoverRow {
  std::vector<int> generators;  // a generating set of the subgroup
  int order = 0;
  bool normal = false;
  int quotient_genus = 0;
  Signature signature;
  long long N = 0;  // from the restriction of chi_rho
};

// One row per conjugacy class of subgroups, trivial and whole group excluded.
std::vector<SubcoverRow> subcovers(const GroupPtr& g, const Tuple& x, const ClassFunction& chi_rho);

}  // namespace shimura
