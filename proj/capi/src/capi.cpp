#include "qac.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qac/analyzer.hpp"
#include "qac/bounds.hpp"
#include "qac/error.hpp"
#include "qac/io.hpp"
#include "qac/search.hpp"
#include "qac/solver.hpp"
#include "qac/sort.hpp"

struct qac_program {
  qac::Program prog;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qac_status set_error(qac_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
qac_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return QAC_OK;
  } catch (const qac::InvalidArgument& e) {
    return set_error(QAC_ERR_INVALID, e.what());
  } catch (const qac::CapacityError& e) {
    return set_error(QAC_ERR_CAPACITY, e.what());
  } catch (const qac::InconsistentState& e) {
    return set_error(QAC_ERR_INCONSISTENT, e.what());
  } catch (const qac::IoError& e) {
    return set_error(QAC_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return set_error(QAC_ERR_INVALID, e.what());
  }
}

std::optional<std::vector<std::uint64_t>> parse_values_csv(const char* csv) {
  if (csv == nullptr) return std::nullopt;
  std::vector<std::uint64_t> values;
  const std::string text(csv);
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string field = text.substr(start, comma - start);
    try {
      std::size_t pos = 0;
      values.push_back(std::stoull(field, &pos, 10));
      if (pos != field.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw qac::InvalidArgument("malformed value '" + field + "' in values list");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

qac_status emit_string(char** out, const std::string& s) {
  char* dup = dup_string(s);
  if (dup == nullptr) return set_error(QAC_ERR_CAPACITY, "out of memory");
  *out = dup;
  g_last_error.clear();
  return QAC_OK;
}

qac_status store_program(qac_program** out, qac::Program&& prog) {
  *out = new qac_program{std::move(prog)};
  g_last_error.clear();
  return QAC_OK;
}

qac_status require(bool ok, const char* what) {
  return ok ? QAC_OK : set_error(QAC_ERR_INVALID, what);
}

nlohmann::json class_json(const std::optional<qac::Rat>& e) {
  return e ? qac::energy_json(*e) : nlohmann::json(nullptr);
}

}  // namespace

extern "C" {

const char* qac_version(void) { return "0.1.0"; }

const char* qac_last_error(void) { return g_last_error.c_str(); }

qac_status qac_build_search(size_t n, size_t kv, const char* variant, const char* values_csv,
                            const uint64_t* target, const char* predicate, qac_program** out) {
  if (qac_status s = require(out != nullptr, "out pointer is null"); s != QAC_OK) return s;
  if (qac_status s = require(variant != nullptr, "variant is null"); s != QAC_OK) return s;
  *out = nullptr;
  return guarded([&] {
    qac::SearchBuildOptions opt;
    opt.n_elements = n;
    opt.element_width = kv;
    opt.variant = qac::parse_search_variant(variant);
    opt.values = parse_values_csv(values_csv);
    if (target != nullptr) opt.target = *target;
    if (predicate != nullptr) opt.predicate = std::string(predicate);
    store_program(out, qac::build_search(opt));
  });
}

qac_status qac_build_bounds(size_t n, size_t kv, const char* values_csv, const uint64_t* target,
                            qac_program** out) {
  if (qac_status s = require(out != nullptr, "out pointer is null"); s != QAC_OK) return s;
  *out = nullptr;
  return guarded([&] {
    qac::BoundsBuildOptions opt;
    opt.n_elements = n;
    opt.element_width = kv;
    opt.values = parse_values_csv(values_csv);
    if (target != nullptr) opt.target = *target;
    store_program(out, qac::build_bounds(opt));
  });
}

qac_status qac_build_sort(size_t n, size_t kv, const char* values_csv, qac_program** out) {
  if (qac_status s = require(out != nullptr, "out pointer is null"); s != QAC_OK) return s;
  *out = nullptr;
  return guarded([&] {
    qac::SortBuildOptions opt;
    opt.n_elements = n;
    opt.element_width = kv;
    opt.values = parse_values_csv(values_csv);
    store_program(out, qac::build_sort(opt));
  });
}

qac_status qac_program_load(const char* qubo_path, const char* varmap_path, qac_program** out) {
  if (qac_status s = require(out != nullptr, "out pointer is null"); s != QAC_OK) return s;
  if (qac_status s = require(qubo_path != nullptr && varmap_path != nullptr, "path is null");
      s != QAC_OK) {
    return s;
  }
  *out = nullptr;
  return guarded([&] {
    const std::string qubo = qac::read_file(qubo_path);
    const std::string varmap = qac::read_file(varmap_path);
    store_program(out, qac::load_program(qubo, varmap));
  });
}

qac_status qac_program_write(const qac_program* prog, const char* out_prefix) {
  if (qac_status s = require(prog != nullptr, "program is null"); s != QAC_OK) return s;
  if (qac_status s = require(out_prefix != nullptr, "out_prefix is null"); s != QAC_OK) return s;
  return guarded([&] { qac::write_program(prog->prog, out_prefix); });
}

qac_status qac_program_qubo_text(const qac_program* prog, char** out) {
  if (qac_status s = require(prog != nullptr && out != nullptr, "null argument"); s != QAC_OK) {
    return s;
  }
  std::string text;
  if (qac_status s = guarded([&] { text = qac::qubo_text(prog->prog); }); s != QAC_OK) return s;
  return emit_string(out, text);
}

qac_status qac_program_varmap_json(const qac_program* prog, char** out) {
  if (qac_status s = require(prog != nullptr && out != nullptr, "null argument"); s != QAC_OK) {
    return s;
  }
  std::string text;
  if (qac_status s = guarded([&] { text = qac::varmap_json(prog->prog); }); s != QAC_OK) return s;
  return emit_string(out, text);
}

qac_status qac_resource_report(const qac_program* prog, char** out_json) {
  if (qac_status s = require(prog != nullptr && out_json != nullptr, "null argument");
      s != QAC_OK) {
    return s;
  }
  std::string text;
  const qac_status s = guarded([&] {
    const qac::ResourceReport rep = qac::resource_report(prog->prog);
    nlohmann::json j;
    j["total_vars"] = rep.total_vars;
    j["input_vars"] = rep.input_vars;
    j["derived_vars"] = rep.derived_vars;
    j["ancilla_vars"] = rep.ancilla_vars;
    j["machinery_vars"] = rep.machinery_vars;
    j["term_count"] = rep.term_count;
    j["max_degree"] = rep.max_degree;
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [deg, count] : rep.degree_histogram) hist[std::to_string(deg)] = count;
    j["degree_histogram"] = std::move(hist);
    text = j.dump(2) + "\n";
  });
  if (s != QAC_OK) return s;
  return emit_string(out_json, text);
}

qac_status qac_solve(const qac_program* prog, const char* options_json, char** out_report_json) {
  if (qac_status s = require(prog != nullptr && out_report_json != nullptr, "null argument");
      s != QAC_OK) {
    return s;
  }
  std::string text;
  const qac_status s = guarded([&] {
    nlohmann::json opts = nlohmann::json::object();
    if (options_json != nullptr) {
      try {
        opts = nlohmann::json::parse(options_json);
      } catch (const nlohmann::json::exception& e) {
        throw qac::InvalidArgument(std::string("options are not valid JSON: ") + e.what());
      }
    }
    std::string mode = "exhaustive";
    qac::Assignment user_clamp;
    bool classify = false;
    std::size_t cap = qac::kDefaultGroundCap;
    std::size_t max_free = qac::kDefaultExhaustiveLimit;
    qac::AnnealSchedule schedule;
    try {
      if (opts.contains("mode")) mode = opts["mode"].get<std::string>();
      if (opts.contains("clamp")) {
        user_clamp = qac::parse_clamp_spec(prog->prog, opts["clamp"].dump());
      }
      if (opts.contains("classify")) classify = opts["classify"].get<bool>();
      if (opts.contains("cap")) cap = opts["cap"].get<std::size_t>();
      if (opts.contains("max_free")) max_free = opts["max_free"].get<std::size_t>();
      if (opts.contains("seed")) schedule.seed = opts["seed"].get<std::uint64_t>();
      if (opts.contains("sweeps")) schedule.sweeps = opts["sweeps"].get<std::size_t>();
      if (opts.contains("reads")) schedule.reads = opts["reads"].get<std::size_t>();
      if (opts.contains("beta_start")) schedule.beta_start = opts["beta_start"].get<double>();
      if (opts.contains("beta_end")) schedule.beta_end = opts["beta_end"].get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw qac::InvalidArgument(std::string("mistyped solve option: ") + e.what());
    }

    qac::Assignment merged = prog->prog.build_clamp;
    for (const auto& [v, bit] : user_clamp.bits()) merged.set(v, bit);

    qac::SolveResult result;
    if (mode == "exhaustive") {
      result = qac::enumerate_ground_states(prog->prog.hamiltonian, merged, cap, max_free);
    } else if (mode == "sa") {
      result = qac::simulated_anneal(prog->prog.hamiltonian, schedule, merged);
    } else {
      throw qac::InvalidArgument("unknown solve mode '" + mode + "'; expected exhaustive or sa");
    }

    nlohmann::json rep = nlohmann::json::parse(qac::solve_report(prog->prog, result));
    if (classify) {
      const qac::ClassMinima minima = qac::classify_states(prog->prog, user_clamp, max_free);
      nlohmann::json classes;
      classes["found"] = class_json(minima.found);
      classes["not_found"] = class_json(minima.not_found);
      classes["invalid"] = class_json(minima.invalid);
      rep["classes"] = std::move(classes);
    }
    text = rep.dump(2) + "\n";
  });
  if (s != QAC_OK) return s;
  return emit_string(out_report_json, text);
}

qac_status qac_sweep_csv(const char* builder, const size_t* ns, size_t ns_len, size_t kv,
                         char** out_csv) {
  if (qac_status s = require(builder != nullptr && out_csv != nullptr, "null argument");
      s != QAC_OK) {
    return s;
  }
  if (qac_status s = require(ns != nullptr && ns_len > 0, "empty size list"); s != QAC_OK) {
    return s;
  }
  std::string text;
  const qac_status s = guarded([&] {
    const qac::BuilderKind kind = qac::parse_builder_kind(builder);
    const std::vector<std::size_t> sizes(ns, ns + ns_len);
    text = qac::sweep_csv(qac::sweep(kind, sizes, kv));
  });
  if (s != QAC_OK) return s;
  return emit_string(out_csv, text);
}

void qac_string_free(char* s) { std::free(s); }

void qac_program_free(qac_program* prog) { delete prog; }

}  // extern "C"
