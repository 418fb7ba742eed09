#include "qac/bounds.hpp"

#include "qac/error.hpp"

namespace qac {

std::vector<GadgetResult> build_compare_flags(const ArraySpec& array, const QuantumInt& x,
                                              Registry& reg) {
  if (x.width() != array.element_width) {
    throw InvalidArgument("target width " + std::to_string(x.width()) +
                          " differs from element width " + std::to_string(array.element_width));
  }
  std::vector<GadgetResult> out;
  out.reserve(array.n_elements);
  for (const QuantumInt& element : array.elements) {
    out.push_back(int_greater_than(element, x, reg, "C"));
  }
  return out;
}

std::vector<GadgetResult> build_span_flags(const std::vector<Lit>& compare, Registry& reg) {
  if (compare.size() < 2) {
    throw InvalidArgument("span flags need at least two compare flags");
  }
  std::vector<GadgetResult> out;
  out.reserve(compare.size() - 1);
  for (std::size_t i = 0; i + 1 < compare.size(); ++i) {
    out.push_back(and_pair(!compare[i], compare[i + 1], reg, "span"));
  }
  return out;
}

BoundsDecode decode_bounds(const Assignment& a, const Program& prog) {
  const auto& spans = prog.decode.flag_lists.at("span");
  const auto& compare = prog.decode.flag_lists.at("C");
  std::vector<std::size_t> set_spans;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].eval(a)) set_spans.push_back(i);
  }
  if (set_spans.size() > 1) {
    throw InconsistentState("multiple span flags set; state is not a ground state of a sorted "
                            "array");
  }
  BoundsDecode result;
  if (set_spans.size() == 1) {
    result.kind = BoundsDecode::Kind::kInSpan;
    result.span_index = set_spans[0];
    return result;
  }
  if (compare.front().eval(a)) {
    result.kind = BoundsDecode::Kind::kBelowRange;
    return result;
  }
  if (!compare.back().eval(a)) {
    result.kind = BoundsDecode::Kind::kAboveRange;
    return result;
  }
  throw InconsistentState("no span set yet target is inside the range; state is not a ground "
                          "state of a sorted array");
}

Program build_bounds(const BoundsBuildOptions& opt) {
  if (opt.n_elements < 2) throw InvalidArgument("bounding needs at least two elements");
  if (opt.element_width < 1) throw InvalidArgument("element width must be >= 1");

  Program prog;
  prog.kind = ProgramKind::kBounds;
  prog.n_elements = opt.n_elements;
  prog.element_width = opt.element_width;
  prog.values = opt.values;
  prog.target = opt.target;
  Registry& reg = prog.registry;

  ArraySpec array = ArraySpec::alloc(reg, opt.n_elements, opt.element_width, "A");
  if (opt.values) {
    if (opt.values->size() != opt.n_elements) {
      throw InvalidArgument("expected " + std::to_string(opt.n_elements) + " values, got " +
                            std::to_string(opt.values->size()));
    }
    for (std::size_t i = 0; i < opt.values->size(); ++i) array.known_values[i] = (*opt.values)[i];
  }
  QuantumInt x = QuantumInt::alloc(reg, "x", opt.element_width, VarRole::kInput, "x");

  std::vector<GadgetResult> compare = build_compare_flags(array, x, reg);
  std::vector<Lit> compare_flags;
  for (GadgetResult& g : compare) {
    prog.element_blocks.push_back(g.hamiltonian);
    prog.logic += g.hamiltonian;
    compare_flags.push_back(g.output);
  }
  std::vector<GadgetResult> spans = build_span_flags(compare_flags, reg);
  std::vector<Lit> span_flags;
  for (GadgetResult& g : spans) {
    prog.coupling_block += g.hamiltonian;
    span_flags.push_back(g.output);
  }
  prog.logic += prog.coupling_block;
  prog.hamiltonian = prog.logic;

  prog.decode.flag_lists["C"] = compare_flags;
  prog.decode.flag_lists["span"] = span_flags;
  prog.decode.ints["x"] = x;
  for (std::size_t i = 0; i < array.n_elements; ++i) {
    prog.decode.ints["A[" + std::to_string(i) + "]"] = array.elements[i];
  }

  prog.build_clamp = array.clamp_known();
  if (opt.target) {
    Assignment bits = x.clamp_to(*opt.target);
    for (const auto& [v, bit] : bits.bits()) prog.build_clamp.set(v, bit);
  }
  prog.qubo = reduce_to_quadratic(prog.hamiltonian.clamp(prog.build_clamp), reg);
  return prog;
}

}  // namespace qac
