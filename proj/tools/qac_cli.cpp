#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qac.h"

namespace {

int exit_code(qac_status s) {
  switch (s) {
    case QAC_OK: return 0;
    case QAC_ERR_CAPACITY: return 3;
    case QAC_ERR_INCONSISTENT: return 4;
    default: return 2;  // invalid arguments and file errors
  }
}

int fail(qac_status s) {
  std::cerr << "error: " << qac_last_error() << "\n";
  return exit_code(s);
}

int fail_io(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return exit_code(QAC_ERR_IO);
}

struct StringDeleter {
  void operator()(char* s) const { qac_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct ProgramDeleter {
  void operator()(qac_program* p) const { qac_program_free(p); }
};
using ProgramHandle = std::unique_ptr<qac_program, ProgramDeleter>;

/// Relative output paths land in $QAC_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
  const char* dir = std::getenv("QAC_OUT_DIR");
  if (dir == nullptr || *dir == '\0' || path.empty() || path.front() == '/') return path;
  std::string out(dir);
  if (out.back() != '/') out += '/';
  return out + path;
}

bool write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << content;
    out.flush();
    if (!out.good()) return false;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    return false;
  }
  return true;
}

int emit_result(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty() && !write_file_atomic(resolve_out(out_path), text)) {
    return fail_io("cannot write '" + resolve_out(out_path) + "'");
  }
  return 0;
}

struct BuildArgs {
  std::size_t n = 0;
  std::size_t bits = 0;
  std::string variant = "summation";
  std::string values;
  std::uint64_t target = 0;
  CLI::Option* target_opt = nullptr;
  std::string predicate;
  CLI::Option* predicate_opt = nullptr;
  std::string out_prefix;
};

int run_build(const std::string& kind, const BuildArgs& args) {
  const char* values_csv = args.values.empty() ? nullptr : args.values.c_str();
  const std::uint64_t* target =
      (args.target_opt != nullptr && args.target_opt->count() > 0) ? &args.target : nullptr;
  const char* predicate = (args.predicate_opt != nullptr && args.predicate_opt->count() > 0)
                              ? args.predicate.c_str()
                              : nullptr;

  qac_program* raw = nullptr;
  qac_status s = QAC_OK;
  if (kind == "search") {
    s = qac_build_search(args.n, args.bits, args.variant.c_str(), values_csv, target, predicate,
                         &raw);
  } else if (kind == "bounds") {
    s = qac_build_bounds(args.n, args.bits, values_csv, target, &raw);
  } else {
    s = qac_build_sort(args.n, args.bits, values_csv, &raw);
  }
  if (s != QAC_OK) return fail(s);
  ProgramHandle prog(raw);

  const std::string prefix = resolve_out(args.out_prefix);
  if (qac_status ws = qac_program_write(prog.get(), prefix.c_str()); ws != QAC_OK) {
    return fail(ws);
  }

  char* report_raw = nullptr;
  if (qac_status rs = qac_resource_report(prog.get(), &report_raw); rs != QAC_OK) {
    return fail(rs);
  }
  CString report(report_raw);
  std::cerr << "wrote " << prefix << ".qubo and " << prefix << ".varmap.json\n";
  std::cout << report.get();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QUBO toolkit for annealing-style array search, bounds, and sort"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qac_version()));

  // build
  auto* build = app.add_subcommand("build", "Build a program and write .qubo/.varmap.json");
  build->require_subcommand(1);
  BuildArgs search_args, bounds_args, sort_args;

  auto* search = build->add_subcommand("search", "Array search for a target or predicate");
  search->add_option("--n", search_args.n, "Number of elements")->required();
  search->add_option("--bits", search_args.bits, "Bits per element")->required();
  search->add_option("--variant", search_args.variant, "summation, logical_or, or count")
      ->default_val("summation");
  search->add_option("--values", search_args.values, "Comma-separated element values");
  search_args.target_opt = search->add_option("--target", search_args.target, "Value to find");
  search_args.predicate_opt = search->add_option(
      "--predicate", search_args.predicate,
      "Field comparisons 'offset:width:op:constant[,...]', op in {eq,gt,lt}");
  search->add_option("--out-prefix", search_args.out_prefix, "Output path prefix")->required();

  auto* bounds = build->add_subcommand("bounds", "Bounding indices in a sorted array");
  bounds->add_option("--n", bounds_args.n, "Number of elements")->required();
  bounds->add_option("--bits", bounds_args.bits, "Bits per element")->required();
  bounds->add_option("--values", bounds_args.values, "Comma-separated element values");
  bounds_args.target_opt = bounds->add_option("--target", bounds_args.target, "Value to bracket");
  bounds->add_option("--out-prefix", bounds_args.out_prefix, "Output path prefix")->required();

  auto* sort = build->add_subcommand("sort", "Sort an array ascending");
  sort->add_option("--n", sort_args.n, "Number of elements")->required();
  sort->add_option("--bits", sort_args.bits, "Bits per element")->required();
  sort->add_option("--values", sort_args.values, "Comma-separated element values");
  sort->add_option("--out-prefix", sort_args.out_prefix, "Output path prefix")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Load a .qubo/.varmap.json pair and solve it");
  std::string qubo_path, varmap_path, mode = "exhaustive", clamp_path, solve_out;
  std::uint64_t seed = 1;
  std::size_t sweeps = 1000, reads = 100, cap = 64, max_free = 24;
  double beta_start = 0.05, beta_end = 12.0;
  bool classify = false;
  solve->add_option("--qubo", qubo_path, "QUBO file")->required();
  solve->add_option("--varmap", varmap_path, "Varmap sidecar")->required();
  solve->add_option("--mode", mode, "exhaustive or sa")->default_val("exhaustive");
  solve->add_option("--seed", seed, "Anneal seed");
  solve->add_option("--sweeps", sweeps, "Anneal sweeps per read");
  solve->add_option("--reads", reads, "Anneal restarts");
  solve->add_option("--beta-start", beta_start, "Initial inverse temperature");
  solve->add_option("--beta-end", beta_end, "Final inverse temperature");
  solve->add_option("--cap", cap, "Ground states to retain (exhaustive)");
  solve->add_option("--max-free", max_free, "Free-variable limit (exhaustive)");
  solve->add_option("--clamp", clamp_path, "JSON clamp file: vars/ints/flags");
  solve->add_flag("--classify", classify, "Add per-class minimum energies (search)");
  solve->add_option("--out", solve_out, "Also write the report here");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Resource scaling across problem sizes");
  std::string builder;
  std::size_t n_start = 0, n_end = 0, n_step = 1, sweep_bits = 0;
  std::string sweep_out;
  sweep->add_option("--builder", builder, "search_sum, search_or, bounds, or sort")->required();
  sweep->add_option("--n-start", n_start, "First size")->required();
  sweep->add_option("--n-end", n_end, "Last size (inclusive)")->required();
  sweep->add_option("--n-step", n_step, "Size increment")->default_val(1);
  sweep->add_option("--bits", sweep_bits, "Bits per element")->required();
  sweep->add_option("--out", sweep_out, "Also write the CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }

  if (search->parsed()) return run_build("search", search_args);
  if (bounds->parsed()) return run_build("bounds", bounds_args);
  if (sort->parsed()) return run_build("sort", sort_args);

  if (solve->parsed()) {
    qac_program* raw = nullptr;
    if (qac_status s = qac_program_load(qubo_path.c_str(), varmap_path.c_str(), &raw);
        s != QAC_OK) {
      return fail(s);
    }
    ProgramHandle prog(raw);

    nlohmann::json opts;
    opts["mode"] = mode == "sa" ? "sa" : mode;
    opts["seed"] = seed;
    opts["sweeps"] = sweeps;
    opts["reads"] = reads;
    opts["beta_start"] = beta_start;
    opts["beta_end"] = beta_end;
    opts["cap"] = cap;
    opts["max_free"] = max_free;
    opts["classify"] = classify;
    if (!clamp_path.empty()) {
      std::ifstream in(clamp_path, std::ios::binary);
      if (!in) return fail_io("cannot read '" + clamp_path + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      try {
        opts["clamp"] = nlohmann::json::parse(buf.str());
      } catch (const nlohmann::json::exception& e) {
        return fail_io("clamp file is not valid JSON: " + std::string(e.what()));
      }
    }

    char* report_raw = nullptr;
    const std::string opts_text = opts.dump();
    if (qac_status s = qac_solve(prog.get(), opts_text.c_str(), &report_raw); s != QAC_OK) {
      return fail(s);
    }
    CString report(report_raw);
    return emit_result(report.get(), solve_out);
  }

  if (sweep->parsed()) {
    if (n_end < n_start || n_step == 0) {
      std::cerr << "error: empty size range\n";
      return 2;
    }
    std::vector<std::size_t> ns;
    for (std::size_t n = n_start; n <= n_end; n += n_step) ns.push_back(n);
    char* csv_raw = nullptr;
    if (qac_status s = qac_sweep_csv(builder.c_str(), ns.data(), ns.size(), sweep_bits, &csv_raw);
        s != QAC_OK) {
      return fail(s);
    }
    CString csv(csv_raw);
    return emit_result(csv.get(), sweep_out);
  }

  return 2;
}
