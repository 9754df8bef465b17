#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "shimura_c.h"

namespace {

struct Failure {
  shimura_status status;
};

void check(shimura_status s) {
  if (s != SHIMURA_OK) throw Failure{s};
}

std::string take(char* p) {
  std::string s = p ? p : "";
  shimura_free_string(p);
  return s;
}

struct CatalogHandle {
  shimura_catalog* p = nullptr;
  explicit CatalogHandle(int max_order) { check(shimura_catalog_new(max_order, &p)); }
  ~CatalogHandle() { shimura_catalog_free(p); }
};

struct GroupHandle {
  shimura_group* p = nullptr;
  GroupHandle(shimura_catalog* cat, const std::string& spec) { check(shimura_group_resolve(cat, spec.c_str(), &p)); }
  ~GroupHandle() { shimura_group_free(p); }
};

// "A..B" or "A"
std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--genus", "expected A..B, got '" + s + "'");
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galois covers of the line and the Shimura criterion N = r-3"};
  app.require_subcommand(1);
  int max_order = 24;
  app.add_option("--catalog-order", max_order, "Largest group order loaded into the catalog")->capture_default_str();

  auto* cat_cmd = app.add_subcommand("catalog", "List the group catalog as CSV");

  std::string chartab_group;
  auto* chartab_cmd = app.add_subcommand("chartab", "Print a character table");
  chartab_cmd->add_option("group", chartab_group, "Catalog id, name, table id or group file")->required();

  std::string genus = "1..7", format = "csv", config_path, output;
  int enum_max_order = -1, min_r = -1, max_r = -1, workers = -1;
  auto* enum_cmd = app.add_subcommand("enumerate", "Sweep genus x group x signature cells");
  enum_cmd->add_option("--genus", genus, "Genus range A..B");
  enum_cmd->add_option("--max-order", enum_max_order, "Largest group order");
  enum_cmd->add_option("--min-r", min_r, "Least number of branch points")->check(CLI::IsMember({3, 4}));
  enum_cmd->add_option("--max-r", max_r, "Largest number of branch points (0: none)");
  enum_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  enum_cmd->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  enum_cmd->add_option("--workers", workers, "Worker threads");
  enum_cmd->add_option("-o,--output", output, "Write to a file instead of stdout");

  std::string group, signature, ssg;
  auto* analyze_cmd = app.add_subcommand("analyze", "Reports for one group and signature");
  analyze_cmd->add_option("--group", group, "Catalog id, name, table id or group file")->required();
  analyze_cmd->add_option("--signature", signature, "Branch orders, e.g. 2,3,3,3 or (2,3^3)")->required();
  analyze_cmd->add_option("--ssg", ssg, "Element indices or words in g1,g2,..., comma separated");

  int family = 0, max_index = 0;
  auto* sub_cmd = app.add_subcommand("subcovers", "Quotients of a golden family by its subgroups");
  sub_cmd->add_option("--family", family, "Family label 1..40")->required();
  sub_cmd->add_option("--max-index", max_index, "Only subgroups of index at most this (0: all)");

  std::string golden_path, verify_genus = "1..7", empty = "8,9";
  int verify_workers = -1;
  auto* verify_cmd = app.add_subcommand("verify-table", "Check the sweep against the golden table");
  verify_cmd->add_option("--golden", golden_path, "Golden table JSON (default: built in)")->check(CLI::ExistingFile);
  verify_cmd->add_option("--genus", verify_genus, "Genus range A..B of the main sweep");
  verify_cmd->add_option("--empty-genera", empty, "Genera that must have no Shimura rows (comma separated, or none)");
  verify_cmd->add_option("--workers", verify_workers, "Worker threads");

  auto* golden_cmd = app.add_subcommand("golden", "Print the built-in golden table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (golden_cmd->parsed()) {
      char* out = nullptr;
      check(shimura_golden_table(&out));
      std::cout << take(out);
      return 0;
    }
    if (enum_cmd->parsed() && enum_max_order > max_order) max_order = enum_max_order;
    CatalogHandle cat(max_order);
    char* out = nullptr;
    if (cat_cmd->parsed()) {
      check(shimura_catalog_csv(cat.p, &out));
      std::cout << take(out);
    } else if (chartab_cmd->parsed()) {
      GroupHandle g(cat.p, chartab_group);
      check(shimura_group_chartab(g.p, &out));
      std::cout << take(out);
    } else if (enum_cmd->parsed()) {
      nlohmann::json cfg = config_path.empty() ? nlohmann::json::object() : nlohmann::json::parse(read_file(config_path));
      if (enum_cmd->count("--genus") || !cfg.contains("genus")) {
        auto [lo, hi] = parse_range(genus);
        cfg["genus"] = {lo, hi};
      }
      if (enum_max_order > 0) cfg["max_order"] = enum_max_order;
      if (min_r > 0) cfg["min_r"] = min_r;
      if (max_r >= 0) cfg["max_r"] = max_r;
      if (workers > 0) cfg["workers"] = workers;
      if (enum_cmd->count("--format") || !cfg.contains("format")) cfg["format"] = format;
      check(shimura_enumerate(cat.p, cfg.dump().c_str(), &out));
      emit(take(out), output);
    } else if (analyze_cmd->parsed()) {
      GroupHandle g(cat.p, group);
      check(shimura_analyze(g.p, signature.c_str(), analyze_cmd->count("--ssg") ? ssg.c_str() : nullptr, &out));
      std::cout << take(out);
    } else if (sub_cmd->parsed()) {
      check(shimura_subcovers(cat.p, family, max_index, &out));
      std::cout << take(out);
    } else if (verify_cmd->parsed()) {
      nlohmann::json opt = nlohmann::json::object();
      auto [lo, hi] = parse_range(verify_genus);
      opt["genus"] = {lo, hi};
      std::vector<int> genera;
      if (empty != "none") {
        std::stringstream ss(empty);
        for (std::string tok; std::getline(ss, tok, ',');) genera.push_back(std::stoi(tok));
      }
      opt["empty_genera"] = genera;
      if (verify_workers > 0) opt["workers"] = verify_workers;
      int passed = 0;
      check(shimura_verify_table(cat.p, golden_path.empty() ? nullptr : golden_path.c_str(), opt.dump().c_str(),
                                 &passed, &out));
      std::cout << take(out);
      return passed ? 0 : 1;
    }
  } catch (const Failure&) {
    std::cerr << "error: " << shimura_last_error() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
