#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qac/array.hpp"
#include "qac/gadgets.hpp"
#include "qac/program.hpp"

namespace qac {

/// Exactly-one constraints over a square 0/1 matrix: zero precisely on
/// permutation matrices. M[i][j] = 1 means "A[i] lands at B[j]".
Polynomial h_mapping(const std::vector<std::vector<VarId>>& mapping);

struct AssignTerm {
  Polynomial h;
  /// copy[i][j][l] substitutes A[i]_l * B[j]_l, one ancilla per matrix cell
  /// and bit: K_v * N^2 in total.
  std::vector<std::vector<std::vector<VarId>>> copy;
};

/// Conditional bitwise copy: M_ij * Hamming(A[i], B[j]) summed over cells,
/// with the cubic M*A*B terms already substituted through copy ancillas
/// (z = A_l * B_l at penalty weight 3), so the result is 2-local.
AssignTerm h_assign(const std::vector<std::vector<VarId>>& mapping, const ArraySpec& a,
                    const ArraySpec& b, Registry& reg);

/// B[i] <= B[i+1] for consecutive pairs. Requires N >= 2.
Polynomial h_ordering(const ArraySpec& b, Registry& reg);

struct PermutationDecode {
  std::vector<std::size_t> perm;  // perm[j] = i: B[j] copies A[i]
  std::vector<std::uint64_t> source_values;
  std::vector<std::uint64_t> sorted_values;
};

/// Reads the mapping matrix out of a ground state; errors if it is not a
/// permutation matrix.
PermutationDecode decode_permutation(const Assignment& a, const Program& prog);

struct SortBuildOptions {
  std::size_t n_elements = 0;
  std::size_t element_width = 0;
  std::optional<std::vector<std::uint64_t>> values;
};

/// Composes mapping + assignment + ordering, each block scaled past the
/// maximum attainable energy of the blocks it must dominate, so the ground
/// set is exactly {M a permutation, B the M-image of A, B non-decreasing}.
Program build_sort(const SortBuildOptions& opt);

}  // namespace qac
