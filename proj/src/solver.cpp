#include "qac/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qac/error.hpp"

namespace qac {

namespace {

/// Fixed-point compilation of a multilinear polynomial against an explicit
/// variable list. All coefficients are brought over a single positive
/// denominator (`scale`) so state energies and flip deltas are exact int64.
struct Kernel {
  std::vector<VarId> vars;  // ascending; positions into this list index terms
  std::int64_t scale = 1;
  std::int64_t offset = 0;  // scaled constant
  std::vector<std::int64_t> coeff;
  std::vector<std::vector<std::uint32_t>> term_vars;
  std::vector<std::vector<std::uint32_t>> var_terms;
};

constexpr std::int64_t kMagnitudeLimit = std::int64_t{1} << 61;

Kernel compile_kernel(const Polynomial& p, const std::vector<VarId>& vars) {
  Kernel k;
  k.vars = vars;
  std::map<VarId, std::uint32_t> pos;
  for (std::uint32_t i = 0; i < vars.size(); ++i) pos[vars[i]] = i;

  BigInt scale = denominator(p.constant());
  for (const auto& [m, c] : p.terms()) {
    scale = boost::multiprecision::lcm(scale, denominator(c));
  }
  BigInt bound = abs(numerator(p.constant())) * (scale / denominator(p.constant()));
  for (const auto& [m, c] : p.terms()) bound += abs(numerator(c)) * (scale / denominator(c));
  if (scale > kMagnitudeLimit || bound > kMagnitudeLimit) {
    throw CapacityError("coefficient magnitudes overflow the fixed-point solver range");
  }
  k.scale = scale.convert_to<std::int64_t>();
  k.offset =
      (numerator(p.constant()) * (scale / denominator(p.constant()))).convert_to<std::int64_t>();

  k.var_terms.resize(vars.size());
  for (const auto& [m, c] : p.terms()) {
    const auto t = static_cast<std::uint32_t>(k.coeff.size());
    k.coeff.push_back((numerator(c) * (scale / denominator(c))).convert_to<std::int64_t>());
    std::vector<std::uint32_t> positions;
    positions.reserve(m.vars().size());
    for (VarId v : m.vars()) {
      auto it = pos.find(v);
      if (it == pos.end()) {
        throw InconsistentState("kernel variable list does not cover the polynomial support");
      }
      positions.push_back(it->second);
      k.var_terms[it->second].push_back(t);
    }
    k.term_vars.push_back(std::move(positions));
  }
  return k;
}

/// Mutable evaluation state over a kernel: per-term count of variables at 0,
/// so a term is active exactly when its counter hits 0 and flips are O(terms
/// touching the variable).
struct KernelState {
  const Kernel* k;
  std::vector<std::uint32_t> zeros;
  std::int64_t energy = 0;

  explicit KernelState(const Kernel& kernel) : k(&kernel) { reset(); }

  void reset() {  // all variables 0
    zeros.assign(k->term_vars.size(), 0);
    for (std::size_t t = 0; t < zeros.size(); ++t) {
      zeros[t] = static_cast<std::uint32_t>(k->term_vars[t].size());
    }
    energy = k->offset;
  }

  void flip(std::uint32_t p, bool now_one) {
    if (now_one) {
      for (std::uint32_t t : k->var_terms[p]) {
        if (--zeros[t] == 0) energy += k->coeff[t];
      }
    } else {
      for (std::uint32_t t : k->var_terms[p]) {
        if (zeros[t]++ == 0) energy -= k->coeff[t];
      }
    }
  }

  std::int64_t flip_delta(std::uint32_t p, bool currently_one) const {
    std::int64_t d = 0;
    if (currently_one) {
      for (std::uint32_t t : k->var_terms[p]) {
        if (zeros[t] == 0) d -= k->coeff[t];
      }
    } else {
      // p itself holds the term's only remaining zero
      for (std::uint32_t t : k->var_terms[p]) {
        if (zeros[t] == 1) d += k->coeff[t];
      }
    }
    return d;
  }
};

/// Visits all 2^n states in lexicographic counting order: position 0 is the
/// most significant bit. Binary-counter increments make the flip work O(1)
/// amortized per state.
template <typename Flip, typename Visit>
void enumerate_lex(std::size_t n, Flip&& flip, Visit&& visit) {
  visit();
  if (n == 0) return;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t prev = 0; prev + 1 < total; ++prev) {
    const int ones = std::countr_one(prev);
    for (int b = 0; b < ones; ++b) flip(static_cast<std::uint32_t>(n - 1 - b));
    flip(static_cast<std::uint32_t>(n - 1 - ones));
    visit();
  }
}

std::vector<VarId> free_support(const Polynomial& p) {
  std::set<VarId> sup = p.support();
  return {sup.begin(), sup.end()};
}

void check_free_count(std::size_t n_free, std::size_t max_free) {
  if (n_free > max_free) {
    throw CapacityError("exhaustive solve over " + std::to_string(n_free) +
                        " free variables exceeds the limit of " + std::to_string(max_free) +
                        "; anneal instead, or clamp more variables");
  }
  if (n_free > 62) {
    throw CapacityError("exhaustive solve cannot enumerate " + std::to_string(n_free) +
                        " free variables");
  }
}

Assignment merge_state(const Assignment& clamp, const std::vector<VarId>& vars,
                       const std::vector<std::uint8_t>& bits) {
  Assignment a = clamp;
  for (std::size_t i = 0; i < vars.size(); ++i) a.set(vars[i], bits[i] != 0);
  return a;
}

std::uint64_t mix64(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SolveResult enumerate_ground_states(const Polynomial& p, const Assignment& clamp, std::size_t cap,
                                    std::size_t max_free) {
  const Polynomial clamped = p.clamp(clamp);
  const std::vector<VarId> vars = free_support(clamped);
  check_free_count(vars.size(), max_free);

  const Kernel kernel = compile_kernel(clamped, vars);
  KernelState ks(kernel);
  std::vector<std::uint8_t> s(vars.size(), 0);

  bool any = false;
  std::int64_t best = 0;
  std::uint64_t count = 0;
  std::vector<std::vector<std::uint8_t>> kept;

  enumerate_lex(
      vars.size(),
      [&](std::uint32_t pos) {
        s[pos] ^= 1;
        ks.flip(pos, s[pos] != 0);
      },
      [&]() {
        if (!any || ks.energy < best) {
          any = true;
          best = ks.energy;
          count = 1;
          kept.clear();
          if (cap > 0) kept.push_back(s);
        } else if (ks.energy == best) {
          ++count;
          if (kept.size() < cap) kept.push_back(s);
        }
      });

  SolveResult res;
  res.method = SolveMethod::kExhaustive;
  res.exhausted = true;
  res.ground_energy = Rat(BigInt(best), BigInt(kernel.scale));
  res.ground_count = count;
  res.ground_states.reserve(kept.size());
  for (const auto& bits : kept) res.ground_states.push_back(merge_state(clamp, vars, bits));
  return res;
}

SolveResult simulated_anneal(const Polynomial& p, const AnnealSchedule& schedule,
                             const Assignment& clamp) {
  if (schedule.sweeps < 1) throw InvalidArgument("anneal needs at least one sweep");
  if (schedule.reads < 1) throw InvalidArgument("anneal needs at least one read");
  if (!(schedule.beta_start > 0)) throw InvalidArgument("beta_start must be positive");
  if (!(schedule.beta_end >= schedule.beta_start)) {
    throw InvalidArgument("beta_end must be >= beta_start");
  }

  const Polynomial clamped = p.clamp(clamp);
  const std::vector<VarId> vars = free_support(clamped);
  const std::size_t n = vars.size();
  const Kernel kernel = compile_kernel(clamped, vars);
  KernelState ks(kernel);
  std::vector<std::uint8_t> s(n, 0);

  const double ratio = schedule.beta_end / schedule.beta_start;
  const double denom = static_cast<double>(kernel.scale);

  // distinct best-of-read states, keyed by bits for deterministic merging
  std::map<std::vector<std::uint8_t>, std::pair<std::int64_t, std::uint64_t>> endpoints;

  for (std::size_t read = 0; read < schedule.reads; ++read) {
    std::mt19937_64 rng(mix64(schedule.seed, read));
    ks.reset();
    std::fill(s.begin(), s.end(), 0);
    for (std::uint32_t pos = 0; pos < n; ++pos) {
      if ((rng() & 1) != 0) {
        s[pos] = 1;
        ks.flip(pos, true);
      }
    }
    std::int64_t read_best = ks.energy;
    std::vector<std::uint8_t> read_best_state = s;

    for (std::size_t sweep = 0; sweep < schedule.sweeps; ++sweep) {
      const double beta =
          schedule.sweeps == 1
              ? schedule.beta_end
              : schedule.beta_start *
                    std::pow(ratio, static_cast<double>(sweep) /
                                        static_cast<double>(schedule.sweeps - 1));
      for (std::uint32_t pos = 0; pos < n; ++pos) {
        const bool one = s[pos] != 0;
        const std::int64_t d = ks.flip_delta(pos, one);
        if (d > 0) {
          const double p_accept = std::exp(-beta * static_cast<double>(d) / denom);
          if (uniform01(rng) >= p_accept) continue;
        }
        s[pos] ^= 1;
        ks.flip(pos, !one);
        if (ks.energy < read_best) {
          read_best = ks.energy;
          read_best_state = s;
        }
      }
    }
    ++endpoints
          .try_emplace(std::move(read_best_state),
                       std::pair<std::int64_t, std::uint64_t>{read_best, 0})
          .first->second.second;
  }

  std::vector<std::pair<std::vector<std::uint8_t>, std::pair<std::int64_t, std::uint64_t>>> rows(
      endpoints.begin(), endpoints.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second.first != b.second.first) return a.second.first < b.second.first;
    return a.first < b.first;
  });

  SolveResult res;
  res.method = SolveMethod::kAnneal;
  res.exhausted = false;
  for (const auto& [bits, info] : rows) {
    Sample sample;
    sample.state = merge_state(clamp, vars, bits);
    sample.energy = Rat(BigInt(info.first), BigInt(kernel.scale));
    sample.count = info.second;
    res.samples.push_back(std::move(sample));
  }
  const std::int64_t best = rows.front().second.first;
  res.ground_energy = Rat(BigInt(best), BigInt(kernel.scale));
  for (const auto& [bits, info] : rows) {
    if (info.first != best) break;
    res.ground_states.push_back(merge_state(clamp, vars, bits));
    ++res.ground_count;
  }
  return res;
}

ClassMinima classify_states(const Program& prog, const Assignment& extra_clamp,
                            std::size_t max_free) {
  if (prog.kind != ProgramKind::kSearch ||
      (prog.variant != SearchVariant::kSummation && prog.variant != SearchVariant::kLogicalOr)) {
    throw InvalidArgument("state classification needs a summation or logical_or search program");
  }
  Assignment clamp = prog.build_clamp;
  for (const auto& [v, bit] : extra_clamp.bits()) clamp.set(v, bit);

  const Polynomial h = prog.hamiltonian.clamp(clamp);
  const Polynomial logic = prog.logic.clamp(clamp);
  const Polynomial sel = prog.selector.clamp(clamp);

  std::set<VarId> sup = h.support();
  {
    const std::set<VarId> s2 = logic.support();
    sup.insert(s2.begin(), s2.end());
    const std::set<VarId> s3 = sel.support();
    sup.insert(s3.begin(), s3.end());
  }
  const VarId nf = prog.decode.flags.at("not_found").var();
  std::optional<bool> nf_fixed;
  if (const auto bit = clamp.get(nf)) {
    nf_fixed = *bit;
  } else {
    sup.insert(nf);
  }

  const std::vector<VarId> vars(sup.begin(), sup.end());
  check_free_count(vars.size(), max_free);
  std::size_t nf_pos = 0;
  if (!nf_fixed) {
    nf_pos = static_cast<std::size_t>(
        std::lower_bound(vars.begin(), vars.end(), nf) - vars.begin());
  }

  const Kernel hk = compile_kernel(h, vars);
  const Kernel lk = compile_kernel(logic, vars);
  const Kernel sk = compile_kernel(sel, vars);
  KernelState hs(hk), ls(lk), ss(sk);
  std::vector<std::uint8_t> s(vars.size(), 0);

  std::optional<std::int64_t> found_min, not_found_min, invalid_min;
  enumerate_lex(
      vars.size(),
      [&](std::uint32_t pos) {
        s[pos] ^= 1;
        const bool now = s[pos] != 0;
        hs.flip(pos, now);
        ls.flip(pos, now);
        ss.flip(pos, now);
      },
      [&]() {
        const bool logic_ok = ls.energy == 0;
        const bool nf_bit = nf_fixed ? *nf_fixed : s[nf_pos] != 0;
        std::optional<std::int64_t>* slot = &invalid_min;
        if (logic_ok && !nf_bit && ss.energy == sk.scale) {
          slot = &found_min;
        } else if (logic_ok && nf_bit && ss.energy == 0) {
          slot = &not_found_min;
        }
        if (!*slot || hs.energy < **slot) *slot = hs.energy;
      });

  ClassMinima out;
  if (found_min) out.found = Rat(BigInt(*found_min), BigInt(hk.scale));
  if (not_found_min) out.not_found = Rat(BigInt(*not_found_min), BigInt(hk.scale));
  if (invalid_min) out.invalid = Rat(BigInt(*invalid_min), BigInt(hk.scale));
  return out;
}

}  // namespace qac
