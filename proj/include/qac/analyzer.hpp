#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qac/program.hpp"

namespace qac {

/// Variable and coupling counts of a reduced program. Degrees are QUBO graph
/// degrees: distinct quadratic partners of each variable after reduction.
struct ResourceReport {
  std::size_t total_vars = 0;
  std::size_t input_vars = 0;
  std::size_t derived_vars = 0;
  std::size_t ancilla_vars = 0;
  /// Everything that is not array storage (group "A"): indices, targets,
  /// matcher flags, tree nodes, reduction ancillas.
  std::size_t machinery_vars = 0;
  std::size_t term_count = 0;
  std::size_t max_degree = 0;
  /// degree -> number of registry variables with that degree; variables
  /// absent from the QUBO land in the 0 bucket.
  std::map<std::size_t, std::size_t> degree_histogram;
};

ResourceReport resource_report(const Program& prog);

struct HistogramCompare {
  std::size_t left_over = 0;
  std::size_t right_over = 0;
};

/// How many variables sit above `threshold` QUBO degree on each side.
HistogramCompare degree_histogram_compare(const ResourceReport& left, const ResourceReport& right,
                                          std::size_t threshold = 8);

enum class BuilderKind { kSearchSum, kSearchOr, kBounds, kSort };

std::string to_string(BuilderKind kind);
BuilderKind parse_builder_kind(const std::string& s);

struct SweepRow {
  BuilderKind builder = BuilderKind::kSearchSum;
  std::size_t n = 0;
  std::size_t kv = 0;
  std::optional<ResourceReport> report;  // absent when the build failed
  std::int64_t build_millis = 0;
  std::string error;  // empty on success
};

/// Builds one symbolic program per problem size (no values, no target) and
/// reports its resources. A failing point records its error in the row
/// instead of aborting the sweep.
std::vector<SweepRow> sweep(BuilderKind builder, const std::vector<std::size_t>& ns,
                            std::size_t kv);

enum class FitModel { kLinear, kQuadratic };

struct FitResult {
  std::vector<Rat> coeffs;  // ascending power: coeffs[k] multiplies x^k
  Rat r_squared;
};

/// Exact rational least squares through the normal equations. Linear needs
/// >= 3 points, quadratic >= 4, abscissae all distinct.
FitResult fit(const std::vector<std::pair<Rat, Rat>>& points, FitModel model);

/// CSV rendering of a sweep:
/// builder,variant,n,kv,total_vars,ancilla_vars,max_degree,term_count,build_millis,error
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace qac
