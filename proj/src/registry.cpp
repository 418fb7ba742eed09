#include "qac/registry.hpp"

#include "qac/error.hpp"

namespace qac {

const char* to_string(VarRole role) {
  switch (role) {
    case VarRole::kInput: return "input";
    case VarRole::kDerived: return "derived";
    case VarRole::kAncilla: return "ancilla";
  }
  return "?";
}

VarRole parse_var_role(const std::string& text) {
  if (text == "input") return VarRole::kInput;
  if (text == "derived") return VarRole::kDerived;
  if (text == "ancilla") return VarRole::kAncilla;
  throw InvalidArgument("unknown variable role: '" + text + "'");
}

VarId Registry::fresh_var(const std::string& label, VarRole role, const std::string& group) {
  if (by_label_.count(label)) {
    throw InvalidArgument("duplicate variable label: '" + label + "'");
  }
  VarId id(static_cast<std::uint32_t>(entries_.size()));
  by_label_.emplace(label, id.value());
  entries_.push_back(VarEntry{id, label, role, group});
  return id;
}

VarId Registry::fresh_auto(const std::string& prefix, VarRole role, const std::string& group) {
  return fresh_var(prefix + "." + std::to_string(entries_.size()), role, group);
}

const VarEntry& Registry::entry(VarId id) const {
  if (id.value() >= entries_.size()) {
    throw InvalidArgument("unknown VarId " + std::to_string(id.value()));
  }
  return entries_[id.value()];
}

bool Registry::has_label(const std::string& label) const { return by_label_.count(label) > 0; }

std::size_t Registry::count_role(VarRole role) const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += (e.role == role);
  return n;
}

std::size_t Registry::count_group(const std::string& group) const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += (e.group == group);
  return n;
}

}  // namespace qac
