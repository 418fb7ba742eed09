#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qac/quantum_int.hpp"
#include "qac/registry.hpp"

namespace qac {

/// Fixed-size array of N quantum integers of equal width.
struct ArraySpec {
  std::size_t n_elements = 0;
  std::size_t element_width = 0;
  std::vector<QuantumInt> elements;
  /// Element values known at build time, for clamping.
  std::map<std::size_t, std::uint64_t> known_values;

  /// Allocates n * width input bits labeled "<name>[i].b<j>", grouped by name.
  static ArraySpec alloc(Registry& reg, std::size_t n, std::size_t width,
                         const std::string& name = "A");

  /// Assignment fixing every known element's bits.
  Assignment clamp_known() const;
};

}  // namespace qac
