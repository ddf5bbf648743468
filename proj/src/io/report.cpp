#include <cstdio>
#include <fstream>

#include "finban/errors.hpp"
#include "finban/io.hpp"

namespace finban {

namespace {

std::string fmt_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Quote only when needed; vectors like "(1, 0)" contain commas.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string exponent_text(const Exponent& e) { return e ? to_string(*e) : "inf"; }

}  // namespace

void Report::add_row(std::vector<ReportCell> row) {
  if (row.size() != columns.size()) fail(ErrorKind::DimMismatch, "report row has the wrong number of cells");
  rows.push_back(std::move(row));
}

Report trend_report(const TrendReport& t) {
  Report r{{{"rank", false}, {"lambda", true}}, {}};
  for (const auto& row : t.rows) r.add_row({cell(std::to_string(row.rank)), cell(row.lambda)});
  return r;
}

Report defect_report(const DefectStats& s) {
  Report r{{{"row", false}, {"triple", false}, {"source", false}, {"bound", true}}, {}};
  for (std::size_t i = 0; i < s.probes.size(); ++i) {
    const auto& p = s.probes[i];
    r.add_row({cell("probe" + std::to_string(i)), cell(std::to_string(p.triple)), cell(p.source),
               p.bound > 0 ? cell(p.bound) : cell(std::string())});
  }
  if (s.median) r.add_row({cell(std::string("median")), cell(std::string()), cell(std::string()), cell(*s.median)});
  if (s.max) r.add_row({cell(std::string("max")), cell(std::string()), cell(std::string()), cell(*s.max)});
  return r;
}

Report cotype_report(const std::vector<CotypeReport>& rs) {
  Report r{{{"exponent", false}, {"witnesses", false}, {"average", true}, {"bound_float", false}, {"bound_squared", true}}, {}};
  for (const auto& c : rs) {
    std::string w;
    for (const auto& v : c.witnesses) w += (w.empty() ? "" : " ") + to_string(v);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", c.bound);
    r.add_row({cell(exponent_text(c.exponent)), cell(w), cell(c.average), cell(std::string(buf)),
               c.bound_squared ? cell(*c.bound_squared) : cell(std::string())});
  }
  return r;
}

std::string render_csv(const Report& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    if (i) out += ',';
    const auto& c = r.columns[i];
    out += c.rational ? csv_field(c.name + "_exact") + "," + csv_field(c.name + "_float") : csv_field(c.name);
  }
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (r.columns[i].rational) {
        if (row[i].rational) out += to_string(*row[i].rational) + "," + fmt_float(to_double(*row[i].rational));
        else out += ",";
      } else {
        out += csv_field(row[i].text);
      }
    }
    out += '\n';
  }
  return out;
}

void emit_report(const std::string& path, const Report& r) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path);
  out << render_csv(r);
  if (!out) fail(ErrorKind::IoError, "write failed for " + path);
}

}  // namespace finban
