#pragma once

#include <string>

#include "json.hpp"
#include "qac/program.hpp"
#include "qac/solver.hpp"

namespace qac {

/// Text rendering of a program's reduced QUBO:
///   c <build summary>
///   p qubo 0 <max_var_index+1> <n_diagonal> <n_offdiagonal>
///   c offset <exact decimal>
///   <i> <j> <coefficient>   one term per line, ascending (i, j), i == j linear
/// Coefficients are exact dyadic decimals, so parse(emit(q)) == q.
std::string qubo_text(const Program& prog);

struct ParsedQubo {
  Polynomial poly;  // offset folded into the constant
  std::size_t declared_nodes = 0;
};

/// Strict parser for the format above; malformed input throws IoError.
ParsedQubo parse_qubo(const std::string& text);

/// JSON sidecar holding everything the QUBO file cannot: build parameters,
/// the variable table, build-time clamps, reduction ledger, decode metadata.
std::string varmap_json(const Program& prog);

/// Rebuilds the program from the sidecar's build parameters and verifies the
/// pair of files against it: variable table, clamps, and reduction ledger
/// must match the rebuild exactly, and the parsed QUBO must equal the rebuilt
/// one. Unparseable input throws IoError; a mismatch throws
/// InconsistentState.
Program load_program(const std::string& qubo_text, const std::string& varmap_text);

/// {"decimal": nearest double, "fraction": exact "p/q"}.
nlohmann::json energy_json(const Rat& e);

/// Semantic read-out of one state: search reports n / not_found (plus found
/// for the logical_or variant) or count; bounds reports the span result;
/// sort reports perm / source / sorted.
nlohmann::json decode_state(const Program& prog, const Assignment& a);

/// Full solve report: ground energy, counts, per-state bits + decode,
/// anneal samples when present.
std::string solve_report(const Program& prog, const SolveResult& result);

/// Clamp spec: {"vars": {label: bit}, "ints": {name: value},
/// "flags": {name: bit}}, resolved against the program's registry and
/// decode table.
Assignment parse_clamp_spec(const Program& prog, const std::string& json_text);

std::string read_file(const std::string& path);
/// Writes via a sibling temp file and rename, so readers never see a torn
/// file.
void write_file_atomic(const std::string& path, const std::string& content);
/// Writes <prefix>.qubo and <prefix>.varmap.json.
void write_program(const Program& prog, const std::string& out_prefix);

}  // namespace qac
