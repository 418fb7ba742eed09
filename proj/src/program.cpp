#include "qac/program.hpp"

#include "qac/error.hpp"

namespace qac {

std::string to_string(ProgramKind kind) {
  switch (kind) {
    case ProgramKind::kSearch: return "search";
    case ProgramKind::kBounds: return "bounds";
    case ProgramKind::kSort: return "sort";
  }
  throw InvalidArgument("unknown program kind");
}

ProgramKind parse_program_kind(const std::string& s) {
  if (s == "search") return ProgramKind::kSearch;
  if (s == "bounds") return ProgramKind::kBounds;
  if (s == "sort") return ProgramKind::kSort;
  throw InvalidArgument("unknown program kind: '" + s + "'");
}

std::string to_string(SearchVariant v) {
  switch (v) {
    case SearchVariant::kSummation: return "summation";
    case SearchVariant::kLogicalOr: return "logical_or";
    case SearchVariant::kCount: return "count";
  }
  throw InvalidArgument("unknown search variant");
}

SearchVariant parse_search_variant(const std::string& s) {
  if (s == "summation" || s == "sum") return SearchVariant::kSummation;
  if (s == "logical_or" || s == "or") return SearchVariant::kLogicalOr;
  if (s == "count") return SearchVariant::kCount;
  throw InvalidArgument("unknown search variant: '" + s + "'");
}

}  // namespace qac
