#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qac/array.hpp"
#include "qac/gadgets.hpp"
#include "qac/program.hpp"

namespace qac {

/// Penalty scale applied to every matcher/gadget block when composing with
/// the half-unit failure term: keeps any logic violation at energy >= 2,
/// strictly above the 1/2 not-found level and the 1 no-selection level.
inline constexpr int kLogicPenaltyScale = 2;

enum class PredicateOp { kEqConst, kGtConst, kLtConst };

struct PredicateLeaf {
  std::size_t offset = 0;  // bit offset within the element
  std::size_t width = 0;
  PredicateOp op = PredicateOp::kEqConst;
  std::uint64_t constant = 0;
};

/// Conjunction of field comparisons against constants.
struct Predicate {
  std::vector<PredicateLeaf> leaves;
};

/// Parses "offset:width:op:constant[,...]" with op in {eq, gt, lt}.
Predicate parse_predicate(const std::string& spec);
std::string predicate_to_string(const Predicate& p);

/// I_i = 1 iff index == i, for i in [0, N). Requires 2^index.width >= N.
std::vector<GadgetResult> build_index_matchers(const QuantumInt& index, std::size_t n,
                                               Registry& reg);

/// V_i = 1 iff A[i] == x bitwise.
std::vector<GadgetResult> build_value_matchers(const ArraySpec& array, const QuantumInt& x,
                                               Registry& reg);

/// Per-element predicate flags, usable wherever value matchers are.
std::vector<GadgetResult> build_predicate_matchers(const ArraySpec& array, const Predicate& p,
                                                   Registry& reg);

/// (1 - sum I_i V_i)^2: minimum when exactly one selected element matches.
Polynomial h_search_basic(const std::vector<Lit>& match, const std::vector<Lit>& value);

struct FailureTerm {
  Polynomial h;  // (1 - not_found - sum I_i V_i)^2 + 1/2 not_found
  VarId not_found;
};
FailureTerm h_search_with_failure(const std::vector<Lit>& match, const std::vector<Lit>& value,
                                  Registry& reg);

struct OrVariantTerm {
  Polynomial h;         // (1 - not_found - found)^2 + 1/2 not_found
  Polynomial gadget_h;  // AND products z_i = I_i V_i plus the OR tree over them
  VarId not_found;
  Lit found = Lit::constant(false);
  std::vector<Lit> products;
  std::vector<VarId> ancillas;
};
OrVariantTerm h_search_or_variant(const std::vector<Lit>& match, const std::vector<Lit>& value,
                                  Registry& reg);

/// (value(count) - sum V_i)^2. Requires count.width >= ceil(log2(N+1)).
Polynomial h_count_matches(const std::vector<Lit>& value, const QuantumInt& count);

/// sum_i I_i * Hamming(A[i], x) plus the exactly-one constraint (1 - sum I_i)^2.
/// Ground states have A[n] == x bitwise; other elements are unconstrained.
Polynomial h_array_assign(const ArraySpec& array, const QuantumInt& index, const QuantumInt& x,
                          Registry& reg);

struct SearchBuildOptions {
  std::size_t n_elements = 0;
  std::size_t element_width = 0;
  SearchVariant variant = SearchVariant::kSummation;
  std::optional<std::vector<std::uint64_t>> values;
  std::optional<std::uint64_t> target;
  std::optional<std::string> predicate;  // replaces value matching when set
};

/// Composes matchers and the variant objective into a full program:
/// H = scale * (matcher blocks) + objective. The count variant allocates a
/// count register and no index machinery.
Program build_search(const SearchBuildOptions& opt);

}  // namespace qac
