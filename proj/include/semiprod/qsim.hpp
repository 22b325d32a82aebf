#pragma once

// Classical stand-ins for quantum enumeration and quantum extremum finding.
//
// Outputs are exact (the simulated search never misses a solution unless
// failure injection is switched on); what the simulation adds is a ledger
// that charges each call its model cost:
//   enumeration over N items returning t solutions   ceil(sqrt(N * (t + 1)))
//   extremum over N items                              ceil(sqrt(N))
// Polylog factors are dropped, so the charges are integers and reproducible.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semiprod/core.hpp"

namespace semiprod {

enum class Engine { QuantumSim, Classical };

std::string_view to_string(Engine e);
Engine engine_from_string(std::string_view s);

// Smallest integer c with c * c >= x.
std::uint64_t ceil_sqrt(std::uint64_t x);
std::uint64_t enumeration_charge(std::uint64_t space_size, std::uint64_t solutions);
std::uint64_t extremum_charge(std::uint64_t space_size);

struct PhaseTotals {
  std::uint64_t classical_steps = 0;
  std::uint64_t quantum_steps = 0;
  // n^omega(...) charges of algebraic multiplications, kept apart from
  // executed steps.
  double model_multiply_cost = 0.0;
  // Item and predicate evaluations the simulator performed (one step each).
  std::uint64_t simulated_evaluations = 0;
};

enum class ChargeKind { Enumeration, Extremum };

struct ChargeRecord {
  std::string phase;
  ChargeKind kind = ChargeKind::Enumeration;
  std::uint64_t space_size = 0;
  std::uint64_t solutions = 0;  // enumeration only
  std::uint64_t charge = 0;
};

struct LedgerReport {
  std::map<std::string, PhaseTotals> phases;
  PhaseTotals totals;
  std::uint64_t seed = 0;
  std::uint64_t quantum_calls = 0;
  // Each predicate evaluation inside a simulated search costs one step.
  std::string predicate_cost_note = "predicate evaluation charged 1 step";
};

class CostLedger {
 public:
  explicit CostLedger(std::uint64_t seed = 0) : seed_(seed), rng_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::mt19937_64& rng() { return rng_; }

  void charge_classical(std::string_view phase, std::uint64_t steps) { phase_ref(phase).classical_steps += steps; }
  void charge_model_multiply(std::string_view phase, double cost) { phase_ref(phase).model_multiply_cost += cost; }
  void charge_evaluations(std::string_view phase, std::uint64_t n) { phase_ref(phase).simulated_evaluations += n; }

  // Records one quantum call and adds its charge to the phase.
  void record(std::string_view phase, ChargeKind kind, std::uint64_t space_size, std::uint64_t solutions);

  // Probability that a successful simulated search round reports "not found"
  // and ends the enumeration early. Zero unless a robustness test sets it.
  void set_failure_rate(double p) { failure_rate_ = p; }
  double failure_rate() const { return failure_rate_; }

  const std::vector<ChargeRecord>& log() const { return log_; }
  const std::map<std::string, PhaseTotals>& phases() const { return phases_; }

  LedgerReport report() const;

 private:
  PhaseTotals& phase_ref(std::string_view phase) { return phases_[std::string(phase)]; }

  std::uint64_t seed_;
  std::mt19937_64 rng_;
  double failure_rate_ = 0.0;
  std::map<std::string, PhaseTotals> phases_;
  std::vector<ChargeRecord> log_;
};

LedgerReport ledger_report(const CostLedger& ledger);

// An indexable search space: items are item(0) .. item(size - 1).
template <class Access>
struct SearchSpace {
  std::uint64_t size;
  Access item;
};
template <class Access>
SearchSpace(std::uint64_t, Access) -> SearchSpace<Access>;

struct NoOp {
  template <class... T>
  void operator()(T&&...) const {}
};

namespace detail {

// Seeded permutation of {0..n-1}: i -> (offset + i * stride) mod n with
// gcd(stride, n) = 1.
class ScanOrder {
 public:
  ScanOrder(std::uint64_t n, std::mt19937_64& rng);
  std::uint64_t operator()(std::uint64_t i) const {
    return static_cast<std::uint64_t>((offset_ + static_cast<unsigned __int128>(i) * stride_) % n_);
  }

 private:
  std::uint64_t n_;
  std::uint64_t offset_ = 0;
  std::uint64_t stride_ = 1;
};

bool draw_failure(CostLedger& ledger);

}  // namespace detail

// Quantum enumeration. Repeated searches for an index whose item satisfies
// `pred`, calling on_found(item) as soon as one is found (the caller may
// strike it out so `pred` turns false for related items). Stops when no
// solution is left. `pred` may only go from true to false as a result of
// on_found, never the other way.
template <class Access, class Pred, class OnFound = NoOp>
auto q_enumerate(const SearchSpace<Access>& space, Pred&& pred, CostLedger& ledger, std::string_view phase,
                 OnFound&& on_found = {}) {
  using Item = decltype(space.item(std::uint64_t{0}));
  std::vector<std::decay_t<Item>> found;
  const std::uint64_t n = space.size;
  std::uint64_t evaluations = 0;
  if (n > 0) {
    const detail::ScanOrder order(n, ledger.rng());
    const bool inject = ledger.failure_rate() > 0.0;
    for (std::uint64_t s = 0; s < n; ++s) {
      auto item = space.item(order(s));
      evaluations += 2;
      if (!pred(item)) continue;
      if (inject && detail::draw_failure(ledger)) break;
      on_found(item);
      found.push_back(std::move(item));
    }
  }
  ledger.charge_evaluations(phase, evaluations);
  ledger.record(phase, ChargeKind::Enumeration, n, found.size());
  return found;
}

// Classical counterpart: exhaustive scan in index order, N classical steps.
template <class Access, class Pred, class OnFound = NoOp>
auto c_enumerate(const SearchSpace<Access>& space, Pred&& pred, CostLedger& ledger, std::string_view phase,
                 OnFound&& on_found = {}) {
  using Item = decltype(space.item(std::uint64_t{0}));
  std::vector<std::decay_t<Item>> found;
  for (std::uint64_t z = 0; z < space.size; ++z) {
    auto item = space.item(z);
    if (!pred(item)) continue;
    on_found(item);
    found.push_back(std::move(item));
  }
  ledger.charge_classical(phase, space.size);
  return found;
}

template <class Access, class Pred, class OnFound = NoOp>
auto enumerate(Engine engine, const SearchSpace<Access>& space, Pred&& pred, CostLedger& ledger,
               std::string_view phase, OnFound&& on_found = {}) {
  if (engine == Engine::QuantumSim) {
    return q_enumerate(space, std::forward<Pred>(pred), ledger, phase, std::forward<OnFound>(on_found));
  }
  return c_enumerate(space, std::forward<Pred>(pred), ledger, phase, std::forward<OnFound>(on_found));
}

enum class Extremum { Max, Min };

// Index (0-based) of an item with maximal (or minimal) key; ties resolve to
// the smallest index. std::nullopt for an empty space.
template <class Access, class Key>
std::optional<std::uint64_t> q_extremum(const SearchSpace<Access>& space, Key&& key, Extremum mode,
                                        CostLedger& ledger, std::string_view phase) {
  std::optional<std::uint64_t> best;
  ExtInt best_key;
  for (std::uint64_t z = 0; z < space.size; ++z) {
    const ExtInt k = key(space.item(z));
    const bool better = !best || (mode == Extremum::Max ? best_key < k : k < best_key);
    if (better) {
      best = z;
      best_key = k;
    }
  }
  ledger.charge_evaluations(phase, 2 * space.size);
  ledger.record(phase, ChargeKind::Extremum, space.size, 0);
  return best;
}

template <class Access, class Key>
std::optional<std::uint64_t> c_extremum(const SearchSpace<Access>& space, Key&& key, Extremum mode,
                                        CostLedger& ledger, std::string_view phase) {
  std::optional<std::uint64_t> best;
  ExtInt best_key;
  for (std::uint64_t z = 0; z < space.size; ++z) {
    const ExtInt k = key(space.item(z));
    if (!best || (mode == Extremum::Max ? best_key < k : k < best_key)) {
      best = z;
      best_key = k;
    }
  }
  ledger.charge_classical(phase, space.size);
  return best;
}

template <class Access, class Key>
std::optional<std::uint64_t> extremum(Engine engine, const SearchSpace<Access>& space, Key&& key, Extremum mode,
                                      CostLedger& ledger, std::string_view phase) {
  if (engine == Engine::QuantumSim) return q_extremum(space, std::forward<Key>(key), mode, ledger, phase);
  return c_extremum(space, std::forward<Key>(key), mode, ledger, phase);
}

}  // namespace semiprod
