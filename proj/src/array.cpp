#include "qac/array.hpp"

#include "qac/error.hpp"

namespace qac {

ArraySpec ArraySpec::alloc(Registry& reg, std::size_t n, std::size_t width,
                           const std::string& name) {
  if (n < 1) throw InvalidArgument("array needs at least one element");
  ArraySpec spec;
  spec.n_elements = n;
  spec.element_width = width;
  spec.elements.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    spec.elements.push_back(QuantumInt::alloc(reg, name + "[" + std::to_string(i) + "]", width,
                                              VarRole::kInput, name));
  }
  return spec;
}

Assignment ArraySpec::clamp_known() const {
  Assignment a;
  for (const auto& [index, value] : known_values) {
    if (index >= n_elements) {
      throw InvalidArgument("known value index " + std::to_string(index) + " out of range");
    }
    Assignment bits = elements[index].clamp_to(value);
    for (const auto& [v, bit] : bits.bits()) a.set(v, bit);
  }
  return a;
}

}  // namespace qac
