#pragma once

// Brute-force 2^n-amplitude Grover simulation, the independent check on the
// reduced two-dimensional engine.

#include <cstdint>
#include <span>
#include <vector>

#include "dgrover/bloch.hpp"
#include "dgrover/schedules.hpp"

namespace dgrover {

inline constexpr int kMaxQubits = 20;

struct FullState {
  int qubits = 0;
  std::vector<Complex> amplitudes;
  std::vector<std::uint64_t> marked;  // sorted, distinct

  /// Uniform state 2^{−n/2} Σ|x>. Throws DomainError on n ∉ [1, 20] or a bad
  /// marked set (empty, duplicates, out of range, or all states).
  static FullState uniform(int qubits, std::vector<std::uint64_t> marked);

  [[nodiscard]] std::uint64_t dimension() const { return amplitudes.size(); }
  [[nodiscard]] double marked_probability() const;
  [[nodiscard]] double norm() const;
};

/// Multiplies marked amplitudes by e^{i(π+δα)}.
void apply_oracle(FullState& state, double delta_alpha);

/// ψ ← −(e^{iβ} ψ + (1 − e^{iβ}) <ψ0|ψ> |ψ0>), the full-space form of −S_r(β).
void apply_reflection(FullState& state, double beta);

/// Same kernels without OpenMP.
void apply_oracle_serial(FullState& state, double delta_alpha);
void apply_reflection_serial(FullState& state, double beta);

/// Success probability after the schedule. Requires schedule.lambda to equal
/// |marked| / 2^n exactly (DomainError otherwise) and offsets to match the
/// schedule length (LengthMismatchError).
double full_simulate(int qubits, std::span<const std::uint64_t> marked, const PhaseSchedule& schedule,
                     std::span<const PhaseOffset> offsets);
double full_simulate_serial(int qubits, std::span<const std::uint64_t> marked,
                            const PhaseSchedule& schedule, std::span<const PhaseOffset> offsets);

/// |full − reduced| success probability.
double compare_reduced(int qubits, std::span<const std::uint64_t> marked, const PhaseSchedule& schedule,
                       std::span<const PhaseOffset> offsets);

}  // namespace dgrover
