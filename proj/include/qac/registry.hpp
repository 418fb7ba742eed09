#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qac {

/// Identity of one binary variable. Ids are dense, 0-based, and never reused
/// within a registry.
class VarId {
 public:
  VarId() = default;
  explicit constexpr VarId(std::uint32_t v) : value_(v) {}
  constexpr std::uint32_t value() const { return value_; }
  friend constexpr bool operator==(VarId a, VarId b) { return a.value_ == b.value_; }
  friend constexpr bool operator!=(VarId a, VarId b) { return a.value_ != b.value_; }
  friend constexpr bool operator<(VarId a, VarId b) { return a.value_ < b.value_; }
  friend constexpr bool operator<=(VarId a, VarId b) { return a.value_ <= b.value_; }
  friend constexpr bool operator>(VarId a, VarId b) { return a.value_ > b.value_; }

 private:
  std::uint32_t value_ = 0;
};

enum class VarRole : std::uint8_t {
  kInput,    // logical problem data: array bits, index bits, target bits, ...
  kDerived,  // flags computed from inputs by gadgets (matchers, tree nodes)
  kAncilla,  // pure order-reduction variables
};

const char* to_string(VarRole role);
VarRole parse_var_role(const std::string& text);

struct VarEntry {
  VarId id;
  std::string label;  // unique within the registry
  VarRole role;
  std::string group;  // family tag, e.g. "A", "I", "reduction"
};

/// Allocation table for every variable of one program. Labels are unique;
/// ids are handed out densely in allocation order.
class Registry {
 public:
  /// Allocates a new variable. Throws InvalidArgument on a duplicate label.
  VarId fresh_var(const std::string& label, VarRole role, const std::string& group);

  /// Allocates with a label of the form "<prefix>.<id>", which cannot collide.
  VarId fresh_auto(const std::string& prefix, VarRole role, const std::string& group);

  std::size_t size() const { return entries_.size(); }
  const VarEntry& entry(VarId id) const;
  const std::vector<VarEntry>& entries() const { return entries_; }
  bool has_label(const std::string& label) const;

  std::size_t count_role(VarRole role) const;
  std::size_t count_group(const std::string& group) const;

 private:
  std::vector<VarEntry> entries_;
  std::unordered_map<std::string, std::uint32_t> by_label_;
};

}  // namespace qac

template <>
struct std::hash<qac::VarId> {
  std::size_t operator()(qac::VarId v) const noexcept {
    return std::hash<std::uint32_t>{}(v.value());
  }
};
