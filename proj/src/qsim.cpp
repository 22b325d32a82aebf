#include "semiprod/qsim.hpp"

#include <numeric>
#include <stdexcept>

namespace semiprod {

std::string_view to_string(Engine e) { return e == Engine::QuantumSim ? "quantum-sim" : "classical"; }

Engine engine_from_string(std::string_view s) {
  if (s == "quantum-sim") return Engine::QuantumSim;
  if (s == "classical") return Engine::Classical;
  throw std::invalid_argument("unknown engine '" + std::string(s) + "'");
}

std::uint64_t ceil_sqrt(std::uint64_t x) {
  if (x == 0) return 0;
  // Newton iteration on integers gives floor(sqrt(x)).
  unsigned __int128 r = x;
  unsigned __int128 y = (r + 1) / 2;
  while (y < r) {
    r = y;
    y = (r + x / r) / 2;
  }
  auto f = static_cast<std::uint64_t>(r);
  return static_cast<unsigned __int128>(f) * f == x ? f : f + 1;
}

std::uint64_t enumeration_charge(std::uint64_t space_size, std::uint64_t solutions) {
  unsigned __int128 prod = static_cast<unsigned __int128>(space_size) * (solutions + 1);
  if (prod >> 64) throw OverflowError("enumeration charge");
  return ceil_sqrt(static_cast<std::uint64_t>(prod));
}

std::uint64_t extremum_charge(std::uint64_t space_size) { return ceil_sqrt(space_size); }

void CostLedger::record(std::string_view phase, ChargeKind kind, std::uint64_t space_size,
                        std::uint64_t solutions) {
  const std::uint64_t charge =
      kind == ChargeKind::Enumeration ? enumeration_charge(space_size, solutions) : extremum_charge(space_size);
  phase_ref(phase).quantum_steps += charge;
  log_.push_back(ChargeRecord{std::string(phase), kind, space_size, solutions, charge});
}

LedgerReport CostLedger::report() const {
  LedgerReport r;
  r.phases = phases_;
  r.seed = seed_;
  r.quantum_calls = log_.size();
  for (const auto& [name, p] : phases_) {
    r.totals.classical_steps += p.classical_steps;
    r.totals.quantum_steps += p.quantum_steps;
    r.totals.model_multiply_cost += p.model_multiply_cost;
    r.totals.simulated_evaluations += p.simulated_evaluations;
  }
  return r;
}

LedgerReport ledger_report(const CostLedger& ledger) { return ledger.report(); }

namespace detail {

ScanOrder::ScanOrder(std::uint64_t n, std::mt19937_64& rng) : n_(n) {
  if (n_ <= 1) return;
  offset_ = rng() % n_;
  stride_ = rng() % n_;
  while (stride_ == 0 || std::gcd(stride_, n_) != 1) stride_ = (stride_ + 1) % n_;
}

bool draw_failure(CostLedger& ledger) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(ledger.rng()) < ledger.failure_rate();
}

}  // namespace detail

}  // namespace semiprod
