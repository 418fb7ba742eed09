#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qac/polynomial.hpp"
#include "qac/quantum_int.hpp"
#include "qac/qubo.hpp"
#include "qac/registry.hpp"

namespace qac {

enum class ProgramKind { kSearch, kBounds, kSort };
enum class SearchVariant { kSummation, kLogicalOr, kCount };

std::string to_string(ProgramKind kind);
ProgramKind parse_program_kind(const std::string& s);
std::string to_string(SearchVariant v);
SearchVariant parse_search_variant(const std::string& s);

/// Semantic view over registry variables: how to read a solution back out.
struct DecodeInfo {
  std::map<std::string, QuantumInt> ints;              // n, x, count, A[i], B[j]
  std::map<std::string, Lit> flags;                    // not_found, found
  std::map<std::string, std::vector<Lit>> flag_lists;  // I, V, C, span
  std::vector<std::vector<VarId>> matrix;              // M (sort only), row i maps A[i]
};

/// A composed Hamiltonian with its registry, reduced QUBO, decode metadata,
/// and the constraint/objective split used for state classification.
struct Program {
  ProgramKind kind = ProgramKind::kSearch;
  SearchVariant variant = SearchVariant::kSummation;  // search only
  std::size_t n_elements = 0;
  std::size_t element_width = 0;

  Registry registry;
  Polynomial hamiltonian;  // full energy, possibly degree > 2
  Polynomial logic;        // penalty blocks; 0 exactly on logically consistent states
  Polynomial selector;     // search: number of selected matches (0/1-valued on valid states)
  /// Per-element constraint blocks (bounds: comparator block of element i),
  /// summing with coupling_block to `logic`. Lets tests minimize per element.
  std::vector<Polynomial> element_blocks;
  Polynomial coupling_block;

  Qubo qubo;  // reduce_to_quadratic(clamp(hamiltonian, build_clamp))
  DecodeInfo decode;
  Assignment build_clamp;  // values fixed at build time

  // Build parameters, kept for the varmap sidecar and program reconstruction.
  std::optional<std::vector<std::uint64_t>> values;
  std::optional<std::uint64_t> target;
  std::optional<std::string> predicate_spec;
};

}  // namespace qac
