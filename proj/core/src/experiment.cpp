#include "ksimplex/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ksimplex/error.hpp"

namespace ksimplex {
namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_field(const std::string& s) {
  if (s.empty()) return kMissing;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ParseError("csv: bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double at(const std::vector<double>& v, Index k) {
  return k < static_cast<Index>(v.size()) ? v[static_cast<std::size_t>(k)] : kMissing;
}

const OuterRecord* outer_at(const RunResult& run, Index k) {
  for (const auto& o : run.outer)
    if (o.k == k) return &o;
  return nullptr;
}

const char* kCompareHeader =
    "k,ks_inf,ks_inf_l2,ks_l1,gm_inf,gm_l1,gm_l2,gmne_l2,ks_inf_optimal,ks_l1_optimal,"
    "bound_inf_margin,bound_l1_margin,bound_l1_ne_margin,chain_gm_inf_minus_ks_inf,"
    "chain_gm_l2_minus_gm_inf,chain_ks_l2_minus_gm_l2";

}  // namespace

double CompareRow::bound_l1_margin(Index m) const { return std::sqrt(static_cast<double>(m)) * gm_l2 - ks_l1; }
double CompareRow::bound_l1_ne_margin(Index m) const {
  return std::sqrt(static_cast<double>(m)) * gmne_l2 - ks_l1;
}

CompareResult run_compare(const LinearOperator& op, const Vector& b, const Vector& x0,
                          const CompareOptions& options) {
  CompareResult res;
  res.rows = op.rows();
  RunOptions ro;
  ro.max_outer = options.max_k;
  ro.max_inner = options.max_inner;
  ro.cap_inner = options.cap_inner;
  ro.tol = options.tol;
  res.linf = linf_run(op, b, x0, ro);
  res.l1 = l1_run(op, b, x0, ro);
  res.normal_reference = gmres_normal_equations(op, b, x0, options.max_k);
  res.reference = op.is_square() ? gmres_run(op, b, x0, options.max_k) : res.normal_reference;

  for (Index k = 1; k <= options.max_k; ++k) {
    CompareRow row;
    row.k = k;
    const OuterRecord* li = outer_at(res.linf, k);
    const OuterRecord* l1 = outer_at(res.l1, k);
    row.ks_inf = li ? li->residual_inf : kMissing;
    row.ks_inf_l2 = li ? li->residual_2 : kMissing;
    row.ks_inf_optimal = li && li->optimal;
    row.ks_l1 = l1 ? l1->residual_1 : kMissing;
    row.ks_l1_optimal = l1 && l1->optimal;
    row.gm_inf = at(res.reference.residual_infnorms, k);
    row.gm_l1 = at(res.reference.residual_1norms, k);
    row.gm_l2 = at(res.reference.residual_2norms, k);
    row.gmne_l2 = at(res.normal_reference.residual_2norms, k);
    if (!li && !l1 && std::isnan(row.gm_l2)) break;
    res.table.push_back(row);
  }
  return res;
}

void write_compare_csv(std::ostream& out, const CompareResult& result) {
  out << kCompareHeader << '\n';
  const Index m = result.rows;
  for (const auto& r : result.table) {
    out << r.k << ',' << fmt(r.ks_inf) << ',' << fmt(r.ks_inf_l2) << ',' << fmt(r.ks_l1) << ',' << fmt(r.gm_inf)
        << ',' << fmt(r.gm_l1) << ',' << fmt(r.gm_l2) << ',' << fmt(r.gmne_l2) << ',' << int(r.ks_inf_optimal)
        << ',' << int(r.ks_l1_optimal) << ',' << fmt(r.bound_inf_margin()) << ',' << fmt(r.bound_l1_margin(m))
        << ',' << fmt(r.bound_l1_ne_margin(m)) << ',' << fmt(r.gm_inf - r.ks_inf) << ','
        << fmt(r.gm_l2 - r.gm_inf) << ',' << fmt(r.ks_inf_l2 - r.gm_l2) << '\n';
  }
}

std::vector<CompareRow> read_compare_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCompareHeader) throw ParseError("compare csv: unexpected header");
  std::vector<CompareRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() < 10) throw ParseError("compare csv: short row");
    CompareRow r;
    r.k = static_cast<Index>(std::stoll(f[0]));
    r.ks_inf = parse_field(f[1]);
    r.ks_inf_l2 = parse_field(f[2]);
    r.ks_l1 = parse_field(f[3]);
    r.gm_inf = parse_field(f[4]);
    r.gm_l1 = parse_field(f[5]);
    r.gm_l2 = parse_field(f[6]);
    r.gmne_l2 = parse_field(f[7]);
    r.ks_inf_optimal = f[8] == "1";
    r.ks_l1_optimal = f[9] == "1";
    rows.push_back(r);
  }
  return rows;
}

void write_log_csv(std::ostream& out, const RunResult& run, NormKind norm) {
  out << "outer_k,inner_iter,event,obj_linf,obj_l1,obj_l2,wall_time_ms\n";
  for (const auto& rec : run.log) {
    out << rec.outer_k << ',' << rec.inner_iter << ',' << to_string(rec.event) << ',';
    out << (norm == NormKind::Linf ? fmt(rec.objective) : "") << ',';
    out << (norm == NormKind::L1 ? fmt(rec.objective) : "") << ',';
    out << (norm == NormKind::L2 ? fmt(rec.objective) : "") << ',';
    out << fmt(rec.wall_time_ms) << '\n';
  }
}

void write_gmres_csv(std::ostream& out, const GmresTrace& trace) {
  out << "outer_k,inner_iter,event,obj_linf,obj_l1,obj_l2,wall_time_ms\n";
  for (Index k = 0; k <= trace.max_k(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    out << k << ",0," << (k == 0 ? "init" : "expand") << ',' << fmt(trace.residual_infnorms[i]) << ','
        << fmt(trace.residual_1norms[i]) << ',' << fmt(trace.residual_2norms[i]) << ",\n";
  }
}

}  // namespace ksimplex
