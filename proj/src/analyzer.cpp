#include "qac/analyzer.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "qac/bounds.hpp"
#include "qac/error.hpp"
#include "qac/search.hpp"
#include "qac/sort.hpp"

namespace qac {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::pair<std::string, std::string> builder_columns(BuilderKind kind) {
  switch (kind) {
    case BuilderKind::kSearchSum: return {"search", "summation"};
    case BuilderKind::kSearchOr: return {"search", "logical_or"};
    case BuilderKind::kBounds: return {"bounds", ""};
    case BuilderKind::kSort: return {"sort", ""};
  }
  throw InvalidArgument("unknown builder kind");
}

Rat det3(const Rat m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

ResourceReport resource_report(const Program& prog) {
  const Registry& reg = prog.registry;
  ResourceReport rep;
  rep.total_vars = reg.size();
  rep.input_vars = reg.count_role(VarRole::kInput);
  rep.derived_vars = reg.count_role(VarRole::kDerived);
  rep.ancilla_vars = reg.count_role(VarRole::kAncilla);
  rep.machinery_vars = rep.total_vars - reg.count_group("A");
  rep.term_count = prog.qubo.base.term_count();

  // canonical form lists each quadratic pair once, so increments count
  // distinct partners
  std::vector<std::size_t> degree(reg.size(), 0);
  for (const auto& [m, c] : prog.qubo.base.terms()) {
    if (m.degree() != 2) continue;
    degree[m.vars()[0].value()] += 1;
    degree[m.vars()[1].value()] += 1;
  }
  for (std::size_t d : degree) {
    rep.degree_histogram[d] += 1;
    rep.max_degree = std::max(rep.max_degree, d);
  }
  return rep;
}

HistogramCompare degree_histogram_compare(const ResourceReport& left, const ResourceReport& right,
                                          std::size_t threshold) {
  HistogramCompare cmp;
  for (const auto& [deg, n] : left.degree_histogram) {
    if (deg > threshold) cmp.left_over += n;
  }
  for (const auto& [deg, n] : right.degree_histogram) {
    if (deg > threshold) cmp.right_over += n;
  }
  return cmp;
}

std::string to_string(BuilderKind kind) {
  switch (kind) {
    case BuilderKind::kSearchSum: return "search_sum";
    case BuilderKind::kSearchOr: return "search_or";
    case BuilderKind::kBounds: return "bounds";
    case BuilderKind::kSort: return "sort";
  }
  throw InvalidArgument("unknown builder kind");
}

BuilderKind parse_builder_kind(const std::string& s) {
  if (s == "search_sum") return BuilderKind::kSearchSum;
  if (s == "search_or") return BuilderKind::kSearchOr;
  if (s == "bounds") return BuilderKind::kBounds;
  if (s == "sort") return BuilderKind::kSort;
  throw InvalidArgument("unknown builder '" + s +
                        "'; expected search_sum, search_or, bounds, or sort");
}

std::vector<SweepRow> sweep(BuilderKind builder, const std::vector<std::size_t>& ns,
                            std::size_t kv) {
  std::vector<SweepRow> rows;
  rows.reserve(ns.size());
  for (std::size_t n : ns) {
    SweepRow row;
    row.builder = builder;
    row.n = n;
    row.kv = kv;
    const auto start = std::chrono::steady_clock::now();
    try {
      Program prog;
      switch (builder) {
        case BuilderKind::kSearchSum: {
          SearchBuildOptions opt;
          opt.n_elements = n;
          opt.element_width = kv;
          opt.variant = SearchVariant::kSummation;
          prog = build_search(opt);
          break;
        }
        case BuilderKind::kSearchOr: {
          SearchBuildOptions opt;
          opt.n_elements = n;
          opt.element_width = kv;
          opt.variant = SearchVariant::kLogicalOr;
          prog = build_search(opt);
          break;
        }
        case BuilderKind::kBounds: {
          BoundsBuildOptions opt;
          opt.n_elements = n;
          opt.element_width = kv;
          prog = build_bounds(opt);
          break;
        }
        case BuilderKind::kSort: {
          SortBuildOptions opt;
          opt.n_elements = n;
          opt.element_width = kv;
          prog = build_sort(opt);
          break;
        }
      }
      row.report = resource_report(prog);
    } catch (const Error& e) {
      row.error = e.what();
    }
    const auto end = std::chrono::steady_clock::now();
    row.build_millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

FitResult fit(const std::vector<std::pair<Rat, Rat>>& points, FitModel model) {
  const std::size_t need = model == FitModel::kLinear ? 3 : 4;
  if (points.size() < need) {
    throw InvalidArgument("fit needs at least " + std::to_string(need) + " points, got " +
                          std::to_string(points.size()));
  }
  {
    std::set<Rat> xs;
    for (const auto& [x, y] : points) xs.insert(x);
    if (xs.size() != points.size()) throw InvalidArgument("fit abscissae must be distinct");
  }

  // power sums S_k and mixed sums T_k over the sample
  Rat s[5] = {0, 0, 0, 0, 0};
  Rat t[3] = {0, 0, 0};
  for (const auto& [x, y] : points) {
    Rat xp = 1;
    for (int k = 0; k <= 4; ++k) {
      s[k] += xp;
      if (k <= 2) t[k] += xp * y;
      xp *= x;
    }
  }

  FitResult result;
  if (model == FitModel::kLinear) {
    const Rat det = s[0] * s[2] - s[1] * s[1];
    if (det == 0) throw InconsistentState("singular normal equations in linear fit");
    result.coeffs = {(t[0] * s[2] - t[1] * s[1]) / det, (s[0] * t[1] - s[1] * t[0]) / det};
  } else {
    const Rat m[3][3] = {{s[0], s[1], s[2]}, {s[1], s[2], s[3]}, {s[2], s[3], s[4]}};
    const Rat det = det3(m);
    if (det == 0) throw InconsistentState("singular normal equations in quadratic fit");
    result.coeffs.resize(3);
    for (int col = 0; col < 3; ++col) {
      Rat numer[3][3];
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) numer[r][c] = c == col ? t[r] : m[r][c];
      }
      result.coeffs[static_cast<std::size_t>(col)] = det3(numer) / det;
    }
  }

  const Rat mean = t[0] / s[0];
  Rat ss_tot = 0;
  Rat ss_res = 0;
  for (const auto& [x, y] : points) {
    Rat fitted = 0;
    Rat xp = 1;
    for (const Rat& c : result.coeffs) {
      fitted += c * xp;
      xp *= x;
    }
    ss_res += (y - fitted) * (y - fitted);
    ss_tot += (y - mean) * (y - mean);
  }
  result.r_squared = ss_tot == 0 ? Rat(1) : Rat(1) - ss_res / ss_tot;
  return result;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "builder,variant,n,kv,total_vars,ancilla_vars,max_degree,term_count,build_millis,error\n";
  for (const SweepRow& row : rows) {
    const auto [builder, variant] = builder_columns(row.builder);
    out << builder << ',' << variant << ',' << row.n << ',' << row.kv << ',';
    if (row.report) {
      out << row.report->total_vars << ',' << row.report->ancilla_vars << ','
          << row.report->max_degree << ',' << row.report->term_count << ',';
    } else {
      out << ",,,,";
    }
    out << row.build_millis << ',' << csv_escape(row.error) << '\n';
  }
  return out.str();
}

}  // namespace qac
