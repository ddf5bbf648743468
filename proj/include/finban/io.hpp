#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finban/amalgam.hpp"
#include "finban/analysis.hpp"
#include "finban/budget.hpp"
#include "finban/l1.hpp"
#include "finban/tower.hpp"

namespace finban {

inline constexpr int kCatalogFormat = 1;

struct NamedOp {
  std::string domain;    // space names in the same file
  std::string codomain;
  RatMat matrix;
  bool operator==(const NamedOp&) const = default;
};

// Everything needed to rebuild a tower: the seed space, the net and the log.
// `final_space` is the stage the log produced when it was saved; replay
// compares against it.
struct TowerRecord {
  std::string seed_space;
  TripleNet net;
  std::vector<TowerLogEntry> log;
  std::uint64_t seed = 0;
  std::optional<FinSpace> final_space;
  std::string truncation;
};

struct CatalogFile {
  std::vector<CatalogEntry> spaces;  // in insertion order, names unique
  std::map<std::string, NamedOp> operators;
  std::map<std::string, IncarnatingSet> incarnations;
  std::map<std::string, TowerRecord> towers;
  std::optional<std::uint64_t> seed;
  std::optional<Budgets> budgets;

  const CatalogEntry* find(const std::string& name) const;
  // Replaces an entry of the same name, else appends.
  void put(const std::string& name, const FinSpace& space, Provenance provenance = {"base", {}, {}});
};

CatalogFile from_catalog(const SpaceCatalog& c);
SpaceCatalog to_catalog(const CatalogFile& f);

std::string catalog_to_json(const CatalogFile& f);           // pretty, trailing newline
CatalogFile catalog_from_json(const std::string& text);      // SchemaMismatch, MalformedRational

void save_catalog(const std::string& path, const CatalogFile& f);  // IoError
CatalogFile load_catalog(const std::string& path);                 // IoError + the above

// One CSV table. Rational cells expand to an exact "p/q" column and a
// %.12g decimal column named <column>_exact and <column>_float.
struct ReportCell {
  std::optional<Rat> rational;
  std::string text;
};

struct Report {
  struct Column {
    std::string name;
    bool rational = false;
  };
  std::vector<Column> columns;
  std::vector<std::vector<ReportCell>> rows;

  void add_row(std::vector<ReportCell> row);
};

inline ReportCell cell(const Rat& r) { return ReportCell{r, {}}; }
inline ReportCell cell(std::string s) { return ReportCell{std::nullopt, std::move(s)}; }

Report trend_report(const TrendReport& t);
Report defect_report(const DefectStats& s);   // one row per probe, then a summary row
Report cotype_report(const std::vector<CotypeReport>& rs);

std::string render_csv(const Report& r);
void emit_report(const std::string& path, const Report& r);  // IoError

}  // namespace finban
