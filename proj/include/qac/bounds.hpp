#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qac/array.hpp"
#include "qac/gadgets.hpp"
#include "qac/program.hpp"

namespace qac {

/// C_i = 1 iff A[i] > x, one comparator per element. Caller asserts the array
/// is sorted ascending; sortedness is not constrained.
std::vector<GadgetResult> build_compare_flags(const ArraySpec& array, const QuantumInt& x,
                                              Registry& reg);

/// span_i = (NOT C_i) AND C_{i+1} for i in [0, N-1). Requires N >= 2.
std::vector<GadgetResult> build_span_flags(const std::vector<Lit>& compare, Registry& reg);

struct BoundsDecode {
  enum class Kind { kInSpan, kBelowRange, kAboveRange };
  Kind kind = Kind::kInSpan;
  std::size_t span_index = 0;  // meaningful for kInSpan: A[i] <= x < A[i+1]
};

/// Reads a ground state back: the unique span, else below-range when C_0 = 1,
/// else above-range when C_{N-1} = 0. Anything else (multiple spans, no case)
/// signals a non-ground state or unsorted input.
BoundsDecode decode_bounds(const Assignment& a, const Program& prog);

struct BoundsBuildOptions {
  std::size_t n_elements = 0;
  std::size_t element_width = 0;
  std::optional<std::vector<std::uint64_t>> values;  // sorted ascending
  std::optional<std::uint64_t> target;
};

/// Comparator blocks plus span gadgets; ground energy 0 with all flags
/// consistent. element_blocks[i] holds element i's comparator block.
Program build_bounds(const BoundsBuildOptions& opt);

}  // namespace qac
