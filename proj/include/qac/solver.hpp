#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qac/polynomial.hpp"
#include "qac/program.hpp"

namespace qac {

/// Exhaustive enumeration refuses above this many free variables by default.
inline constexpr std::size_t kDefaultExhaustiveLimit = 24;
/// Default cap on how many ground states a solve retains.
inline constexpr std::size_t kDefaultGroundCap = 64;

enum class SolveMethod { kExhaustive, kAnneal };

struct AnnealSchedule {
  std::size_t sweeps = 1000;
  std::size_t reads = 100;
  double beta_start = 0.05;
  double beta_end = 12.0;
  std::uint64_t seed = 1;
};

/// One distinct final state of an anneal, with how many reads ended there.
struct Sample {
  Assignment state;
  Rat energy;
  std::uint64_t count = 0;
};

struct SolveResult {
  Rat ground_energy;
  /// Minimum-energy states, clamp merged in. Exhaustive: the first `cap`
  /// minimizers in lexicographic counting order (free variables ascending by
  /// id, first variable most significant). Anneal: every distinct best state
  /// observed, in that same order.
  std::vector<Assignment> ground_states;
  /// Exhaustive: exact number of minimizers, even past the cap. Anneal:
  /// distinct best states observed.
  std::uint64_t ground_count = 0;
  /// Anneal only: distinct read endpoints, ascending (energy, state).
  std::vector<Sample> samples;
  SolveMethod method = SolveMethod::kExhaustive;
  /// True when the whole state space was enumerated, so ground_energy and
  /// ground_count are certificates rather than best-effort observations.
  bool exhausted = false;
};

/// Exact ground-state enumeration of a clamped polynomial. Throws
/// CapacityError when more than max_free variables remain free (anneal
/// instead, or clamp more variables).
SolveResult enumerate_ground_states(const Polynomial& p, const Assignment& clamp = {},
                                    std::size_t cap = kDefaultGroundCap,
                                    std::size_t max_free = kDefaultExhaustiveLimit);

/// Deterministic simulated annealing: `reads` independent restarts, each
/// sweeping every free variable `sweeps` times under a geometric beta ramp.
/// Energies are evaluated exactly; results are best-effort (exhausted=false).
SolveResult simulated_anneal(const Polynomial& p, const AnnealSchedule& schedule,
                             const Assignment& clamp = {});

/// Minimum energies of the three semantic state classes of a search program.
/// A class absent from the (clamped) state space stays nullopt.
struct ClassMinima {
  std::optional<Rat> found;      // consistent logic, not_found=0, one match selected
  std::optional<Rat> not_found;  // consistent logic, not_found=1, nothing selected
  std::optional<Rat> invalid;    // everything else
};

/// Exhaustive classification for summation and logical_or search programs.
/// extra_clamp stacks on top of the program's build-time clamp.
ClassMinima classify_states(const Program& prog, const Assignment& extra_clamp = {},
                            std::size_t max_free = kDefaultExhaustiveLimit);

}  // namespace qac
