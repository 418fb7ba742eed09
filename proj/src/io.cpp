#include "qac/io.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "qac/bounds.hpp"
#include "qac/error.hpp"
#include "qac/search.hpp"
#include "qac/sort.hpp"

namespace qac {

namespace {

struct QuboShape {
  std::size_t nodes = 0;  // max term variable index + 1, 0 when no terms
  std::size_t n_diag = 0;
  std::size_t n_offdiag = 0;
};

QuboShape qubo_shape(const Polynomial& base) {
  QuboShape shape;
  for (const auto& [m, c] : base.terms()) {
    if (m.degree() == 1) {
      ++shape.n_diag;
    } else if (m.degree() == 2) {
      ++shape.n_offdiag;
    } else {
      throw InconsistentState("QUBO polynomial has a degree " + std::to_string(m.degree()) +
                              " term");
    }
    const std::size_t top = m.vars().back().value();
    shape.nodes = std::max(shape.nodes, top + 1);
  }
  return shape;
}

std::string build_summary(const Program& prog) {
  std::string s = "c qac " + to_string(prog.kind);
  if (prog.kind == ProgramKind::kSearch) s += " variant=" + to_string(prog.variant);
  s += " n=" + std::to_string(prog.n_elements) + " kv=" + std::to_string(prog.element_width);
  return s;
}

nlohmann::json lit_json(const Lit& lit) {
  nlohmann::json j;
  if (lit.is_constant()) {
    j["const"] = lit.constant_value() ? 1 : 0;
  } else {
    j["id"] = lit.var().value();
    j["neg"] = lit.is_negated();
  }
  return j;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& why) {
  throw IoError("QUBO line " + std::to_string(line_no) + ": " + why);
}

VarId find_label(const Registry& reg, const std::string& label) {
  for (const VarEntry& e : reg.entries()) {
    if (e.label == label) return e.id;
  }
  throw InvalidArgument("no variable labeled '" + label + "'");
}

bool json_bit(const nlohmann::json& v, const std::string& what) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_unsigned() && v.get<std::uint64_t>() <= 1) return v.get<std::uint64_t>() == 1;
  throw InvalidArgument(what + " must be 0 or 1");
}

}  // namespace

std::string qubo_text(const Program& prog) {
  const Polynomial& base = prog.qubo.base;
  const QuboShape shape = qubo_shape(base);
  std::ostringstream out;
  out << build_summary(prog) << '\n';
  out << "p qubo 0 " << shape.nodes << ' ' << shape.n_diag << ' ' << shape.n_offdiag << '\n';
  out << "c offset " << to_decimal_string(base.constant()) << '\n';
  // map order over canonical monomials is exactly ascending (i, j)
  for (const auto& [m, c] : base.terms()) {
    const std::uint32_t i = m.vars().front().value();
    const std::uint32_t j = m.vars().back().value();
    out << i << ' ' << j << ' ' << to_decimal_string(c) << '\n';
  }
  return out.str();
}

ParsedQubo parse_qubo(const std::string& text) {
  ParsedQubo parsed;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool seen_p = false;
  bool seen_offset = false;
  std::size_t n_diag = 0, n_offdiag = 0;
  std::size_t want_diag = 0, want_offdiag = 0;
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen_terms;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank
    if (tok == "c") {
      std::string key;
      if (ls >> key && key == "offset") {
        if (seen_offset) parse_fail(line_no, "duplicate offset");
        std::string value, extra;
        if (!(ls >> value) || (ls >> extra)) parse_fail(line_no, "malformed offset comment");
        try {
          parsed.poly += Polynomial(parse_rational(value));
        } catch (const InvalidArgument& e) {
          parse_fail(line_no, e.what());
        }
        seen_offset = true;
      }
      continue;
    }
    if (tok == "p") {
      if (seen_p) parse_fail(line_no, "duplicate p line");
      std::string fmt;
      std::size_t topology = 0;
      std::string extra;
      if (!(ls >> fmt >> topology >> parsed.declared_nodes >> want_diag >> want_offdiag) ||
          fmt != "qubo" || topology != 0 || (ls >> extra)) {
        parse_fail(line_no, "malformed p line; expected 'p qubo 0 <nodes> <diag> <offdiag>'");
      }
      seen_p = true;
      continue;
    }
    if (!seen_p) parse_fail(line_no, "term before p line");
    std::uint64_t i64 = 0, j64 = 0;
    std::string coeff_text, extra;
    {
      std::istringstream ts(line);
      if (!(ts >> i64 >> j64 >> coeff_text) || (ts >> extra)) {
        parse_fail(line_no, "malformed term; expected '<i> <j> <coefficient>'");
      }
    }
    if (i64 > j64) parse_fail(line_no, "term indices must satisfy i <= j");
    if (j64 >= parsed.declared_nodes) parse_fail(line_no, "term index past declared node count");
    const auto i = static_cast<std::uint32_t>(i64);
    const auto j = static_cast<std::uint32_t>(j64);
    if (!seen_terms.emplace(i, j).second) parse_fail(line_no, "duplicate term");
    Rat coeff;
    try {
      coeff = parse_rational(coeff_text);
    } catch (const InvalidArgument& e) {
      parse_fail(line_no, e.what());
    }
    if (coeff == 0) parse_fail(line_no, "zero coefficient");
    if (i == j) {
      ++n_diag;
      parsed.poly.add_term(Monomial(VarId(i)), coeff);
    } else {
      ++n_offdiag;
      parsed.poly.add_term(Monomial({VarId(i), VarId(j)}), coeff);
    }
  }
  if (!seen_p) throw IoError("QUBO text has no p line");
  if (n_diag != want_diag || n_offdiag != want_offdiag) {
    throw IoError("QUBO term counts disagree with p line: found " + std::to_string(n_diag) + "+" +
                  std::to_string(n_offdiag) + ", declared " + std::to_string(want_diag) + "+" +
                  std::to_string(want_offdiag));
  }
  return parsed;
}

std::string varmap_json(const Program& prog) {
  nlohmann::json j;

  nlohmann::json build;
  build["kind"] = to_string(prog.kind);
  build["n"] = prog.n_elements;
  build["kv"] = prog.element_width;
  if (prog.kind == ProgramKind::kSearch) build["variant"] = to_string(prog.variant);
  if (prog.values) build["values"] = *prog.values;
  if (prog.target) build["target"] = *prog.target;
  if (prog.predicate_spec) build["predicate"] = *prog.predicate_spec;
  j["build"] = std::move(build);

  j["clamped"] = nlohmann::json::object();
  for (const auto& [v, bit] : prog.build_clamp.bits()) {
    j["clamped"][std::to_string(v.value())] = bit ? 1 : 0;
  }

  nlohmann::json decode;
  decode["ints"] = nlohmann::json::object();
  for (const auto& [name, qint] : prog.decode.ints) {
    nlohmann::json bits = nlohmann::json::array();
    for (VarId v : qint.bits) bits.push_back(v.value());
    decode["ints"][name] = std::move(bits);
  }
  decode["flags"] = nlohmann::json::object();
  for (const auto& [name, lit] : prog.decode.flags) decode["flags"][name] = lit_json(lit);
  decode["flag_lists"] = nlohmann::json::object();
  for (const auto& [name, lits] : prog.decode.flag_lists) {
    nlohmann::json list = nlohmann::json::array();
    for (const Lit& lit : lits) list.push_back(lit_json(lit));
    decode["flag_lists"][name] = std::move(list);
  }
  decode["matrix"] = nlohmann::json::array();
  for (const auto& row : prog.decode.matrix) {
    nlohmann::json r = nlohmann::json::array();
    for (VarId v : row) r.push_back(v.value());
    decode["matrix"].push_back(std::move(r));
  }
  j["decode"] = std::move(decode);

  j["reductions"] = nlohmann::json::array();
  for (const ReductionStep& step : prog.qubo.ledger) {
    nlohmann::json s;
    s["a"] = step.a.value();
    s["ancilla"] = step.ancilla.value();
    s["b"] = step.b.value();
    s["penalty"] = to_fraction_string(step.penalty_weight);
    j["reductions"].push_back(std::move(s));
  }

  j["vars"] = nlohmann::json::array();
  for (const VarEntry& e : prog.registry.entries()) {
    nlohmann::json v;
    v["group"] = e.group;
    v["id"] = e.id.value();
    v["label"] = e.label;
    v["role"] = to_string(e.role);
    j["vars"].push_back(std::move(v));
  }

  return j.dump(2) + "\n";
}

Program load_program(const std::string& qubo_text_in, const std::string& varmap_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(varmap_text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("varmap is not valid JSON: ") + e.what());
  }

  Program prog;
  try {
    const nlohmann::json& build = j.at("build");
    const ProgramKind kind = parse_program_kind(build.at("kind").get<std::string>());
    const auto n = build.at("n").get<std::size_t>();
    const auto kv = build.at("kv").get<std::size_t>();
    std::optional<std::vector<std::uint64_t>> values;
    if (build.contains("values")) values = build["values"].get<std::vector<std::uint64_t>>();
    std::optional<std::uint64_t> target;
    if (build.contains("target")) target = build["target"].get<std::uint64_t>();

    switch (kind) {
      case ProgramKind::kSearch: {
        SearchBuildOptions opt;
        opt.n_elements = n;
        opt.element_width = kv;
        opt.variant = parse_search_variant(build.at("variant").get<std::string>());
        opt.values = values;
        opt.target = target;
        if (build.contains("predicate")) opt.predicate = build["predicate"].get<std::string>();
        prog = build_search(opt);
        break;
      }
      case ProgramKind::kBounds: {
        BoundsBuildOptions opt;
        opt.n_elements = n;
        opt.element_width = kv;
        opt.values = values;
        opt.target = target;
        prog = build_bounds(opt);
        break;
      }
      case ProgramKind::kSort: {
        SortBuildOptions opt;
        opt.n_elements = n;
        opt.element_width = kv;
        opt.values = values;
        prog = build_sort(opt);
        break;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("varmap missing or mistyped field: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("varmap build parameters rejected: ") + e.what());
  }

  // The stored tables must match the rebuild bit for bit; any drift means
  // the file pair does not describe this library's output.
  try {
    const nlohmann::json& vars = j.at("vars");
    if (vars.size() != prog.registry.size()) {
      throw InconsistentState("varmap lists " + std::to_string(vars.size()) +
                              " variables, rebuild has " + std::to_string(prog.registry.size()));
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const VarEntry& e = prog.registry.entries()[i];
      const nlohmann::json& v = vars[i];
      if (v.at("id").get<std::uint32_t>() != e.id.value() ||
          v.at("label").get<std::string>() != e.label ||
          v.at("role").get<std::string>() != to_string(e.role) ||
          v.at("group").get<std::string>() != e.group) {
        throw InconsistentState("varmap variable " + std::to_string(i) +
                                " disagrees with the rebuilt registry");
      }
    }

    const nlohmann::json& clamped = j.at("clamped");
    if (clamped.size() != prog.build_clamp.size()) {
      throw InconsistentState("varmap clamp table size disagrees with the rebuild");
    }
    for (const auto& [key, value] : clamped.items()) {
      const VarId v(static_cast<std::uint32_t>(std::stoul(key)));
      const auto bit = prog.build_clamp.get(v);
      if (!bit || (value.get<int>() != 0) != *bit) {
        throw InconsistentState("varmap clamp for variable " + key +
                                " disagrees with the rebuild");
      }
    }

    const nlohmann::json& reductions = j.at("reductions");
    if (reductions.size() != prog.qubo.ledger.size()) {
      throw InconsistentState("varmap lists " + std::to_string(reductions.size()) +
                              " reductions, rebuild has " +
                              std::to_string(prog.qubo.ledger.size()));
    }
    for (std::size_t i = 0; i < reductions.size(); ++i) {
      const ReductionStep& step = prog.qubo.ledger[i];
      const nlohmann::json& s = reductions[i];
      if (s.at("ancilla").get<std::uint32_t>() != step.ancilla.value() ||
          s.at("a").get<std::uint32_t>() != step.a.value() ||
          s.at("b").get<std::uint32_t>() != step.b.value() ||
          parse_rational(s.at("penalty").get<std::string>()) != step.penalty_weight) {
        throw InconsistentState("varmap reduction " + std::to_string(i) +
                                " disagrees with the rebuild");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("varmap missing or mistyped field: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw IoError("varmap clamp table has a non-numeric variable id");
  } catch (const std::out_of_range&) {
    throw IoError("varmap clamp table has an out-of-range variable id");
  }

  const ParsedQubo parsed = parse_qubo(qubo_text_in);
  if (!(parsed.poly == prog.qubo.base)) {
    throw InconsistentState("stored QUBO differs from the program rebuilt from its varmap");
  }
  if (parsed.declared_nodes != qubo_shape(prog.qubo.base).nodes) {
    throw InconsistentState("stored QUBO node count differs from the rebuilt program");
  }
  return prog;
}

nlohmann::json energy_json(const Rat& e) {
  nlohmann::json j;
  j["decimal"] = to_double(e);
  j["fraction"] = to_fraction_string(e);
  return j;
}

nlohmann::json decode_state(const Program& prog, const Assignment& a) {
  nlohmann::json j;
  switch (prog.kind) {
    case ProgramKind::kSearch: {
      if (prog.variant == SearchVariant::kCount) {
        j["count"] = prog.decode.ints.at("count").decode(a);
      } else {
        j["n"] = prog.decode.ints.at("n").decode(a);
        j["not_found"] = prog.decode.flags.at("not_found").eval(a) ? 1 : 0;
        if (prog.variant == SearchVariant::kLogicalOr) {
          j["found"] = prog.decode.flags.at("found").eval(a) ? 1 : 0;
        }
      }
      if (const auto it = prog.decode.ints.find("x"); it != prog.decode.ints.end()) {
        j["x"] = it->second.decode(a);
      }
      break;
    }
    case ProgramKind::kBounds: {
      const BoundsDecode d = decode_bounds(a, prog);
      switch (d.kind) {
        case BoundsDecode::Kind::kInSpan:
          j["result"] = "in_span";
          j["span"] = d.span_index;
          break;
        case BoundsDecode::Kind::kBelowRange: j["result"] = "below_range"; break;
        case BoundsDecode::Kind::kAboveRange: j["result"] = "above_range"; break;
      }
      j["x"] = prog.decode.ints.at("x").decode(a);
      break;
    }
    case ProgramKind::kSort: {
      const PermutationDecode d = decode_permutation(a, prog);
      j["perm"] = d.perm;
      j["source"] = d.source_values;
      j["sorted"] = d.sorted_values;
      break;
    }
  }
  return j;
}

std::string solve_report(const Program& prog, const SolveResult& result) {
  nlohmann::json rep;
  rep["energy"] = energy_json(result.ground_energy);
  rep["exhausted"] = result.exhausted;
  rep["ground_count"] = result.ground_count;
  rep["method"] = result.method == SolveMethod::kExhaustive ? "exhaustive" : "anneal";

  rep["states"] = nlohmann::json::array();
  for (const Assignment& a : result.ground_states) {
    nlohmann::json state;
    state["bits"] = nlohmann::json::object();
    for (const auto& [v, bit] : a.bits()) {
      state["bits"][prog.registry.entry(v).label] = bit ? 1 : 0;
    }
    try {
      state["decode"] = decode_state(prog, a);
    } catch (const Error& e) {
      state["decode_error"] = e.what();
    }
    rep["states"].push_back(std::move(state));
  }

  rep["samples"] = nlohmann::json::array();
  for (const Sample& s : result.samples) {
    nlohmann::json row;
    row["count"] = s.count;
    row["energy"] = energy_json(s.energy);
    rep["samples"].push_back(std::move(row));
  }
  return rep.dump(2) + "\n";
}

Assignment parse_clamp_spec(const Program& prog, const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("clamp spec is not valid JSON: ") + e.what());
  }
  for (const char* section : {"vars", "ints", "flags"}) {
    if (j.contains(section) && !j[section].is_object()) {
      throw IoError(std::string("clamp spec '") + section + "' must be an object");
    }
  }
  Assignment clamp;
  try {
    if (j.contains("vars")) {
      for (const auto& [label, value] : j["vars"].items()) {
        clamp.set(find_label(prog.registry, label), json_bit(value, "clamp for '" + label + "'"));
      }
    }
    if (j.contains("ints")) {
      for (const auto& [name, value] : j["ints"].items()) {
        const auto it = prog.decode.ints.find(name);
        if (it == prog.decode.ints.end()) {
          throw InvalidArgument("program has no integer named '" + name + "'");
        }
        const Assignment bits = it->second.clamp_to(value.get<std::uint64_t>());
        for (const auto& [v, bit] : bits.bits()) clamp.set(v, bit);
      }
    }
    if (j.contains("flags")) {
      for (const auto& [name, value] : j["flags"].items()) {
        const auto it = prog.decode.flags.find(name);
        if (it == prog.decode.flags.end()) {
          throw InvalidArgument("program has no flag named '" + name + "'");
        }
        if (it->second.is_constant()) {
          throw InvalidArgument("flag '" + name + "' is a build-time constant");
        }
        const bool bit = json_bit(value, "clamp for '" + name + "'");
        clamp.set(it->second.var(), it->second.is_negated() ? !bit : bit);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("clamp spec is mistyped: ") + e.what());
  }
  return clamp;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed on '" + path + "'");
  return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp + "'");
    out << content;
    out.flush();
    if (!out.good()) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed on '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move '" + tmp + "' onto '" + path + "'");
  }
}

void write_program(const Program& prog, const std::string& out_prefix) {
  write_file_atomic(out_prefix + ".qubo", qubo_text(prog));
  write_file_atomic(out_prefix + ".varmap.json", varmap_json(prog));
}

}  // namespace qac
