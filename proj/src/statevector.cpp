#include "dgrover/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgrover/errors.hpp"

namespace dgrover {

namespace {

// Fixed block count for the inner product: partial sums do not depend on the
// OpenMP team size, so the parallel kernel is bit-reproducible.
constexpr std::int64_t kReductionBlocks = 64;

Complex sum_parallel(const std::vector<Complex>& v) {
  const auto size = static_cast<std::int64_t>(v.size());
  const std::int64_t block = (size + kReductionBlocks - 1) / kReductionBlocks;
  std::vector<Complex> partial(kReductionBlocks);
#pragma omp parallel for schedule(static) if (size >= 4096)
  for (std::int64_t b = 0; b < kReductionBlocks; ++b) {
    Complex acc{};
    const std::int64_t end = std::min(size, (b + 1) * block);
    for (std::int64_t i = b * block; i < end; ++i) acc += v[static_cast<std::size_t>(i)];
    partial[static_cast<std::size_t>(b)] = acc;
  }
  Complex total{};
  for (const Complex& p : partial) total += p;
  return total;
}

void check_inputs(int qubits, std::span<const std::uint64_t> marked, const PhaseSchedule& schedule,
                  std::span<const PhaseOffset> offsets) {
  if (qubits < 1 || qubits > kMaxQubits) throw DomainError("qubit count must lie in [1, 20]");
  const double lambda = static_cast<double>(marked.size()) / std::ldexp(1.0, qubits);
  if (schedule.lambda.value() != lambda) {
    throw DomainError("schedule lambda " + std::to_string(schedule.lambda.value()) +
                      " differs from M/N = " + std::to_string(lambda));
  }
  if (offsets.size() != schedule.size()) {
    throw LengthMismatchError("offset list length does not match the schedule");
  }
}

template <class Oracle, class Reflection>
double simulate(int qubits, std::span<const std::uint64_t> marked, const PhaseSchedule& schedule,
                std::span<const PhaseOffset> offsets, Oracle&& apply_o, Reflection&& apply_r) {
  check_inputs(qubits, marked, schedule, offsets);
  FullState state = FullState::uniform(qubits, {marked.begin(), marked.end()});
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    apply_o(state, offsets[i].oracle);
    apply_r(state, schedule.betas[i] + offsets[i].reflection);
  }
  return state.marked_probability();
}

}  // namespace

FullState FullState::uniform(int qubits, std::vector<std::uint64_t> marked) {
  if (qubits < 1 || qubits > kMaxQubits) throw DomainError("qubit count must lie in [1, 20]");
  const std::uint64_t dim = std::uint64_t{1} << qubits;
  std::sort(marked.begin(), marked.end());
  if (marked.empty() || marked.size() >= dim) throw DomainError("need 1 <= M < 2^n marked states");
  if (std::adjacent_find(marked.begin(), marked.end()) != marked.end()) {
    throw DomainError("marked states must be distinct");
  }
  if (marked.back() >= dim) throw DomainError("marked index out of range");

  FullState s;
  s.qubits = qubits;
  s.amplitudes.assign(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim))});
  s.marked = std::move(marked);
  return s;
}

double FullState::marked_probability() const {
  double p = 0.0;
  for (const auto idx : marked) p += std::norm(amplitudes[idx]);
  return p;
}

double FullState::norm() const {
  double n = 0.0;
  for (const Complex& a : amplitudes) n += std::norm(a);
  return std::sqrt(n);
}

void apply_oracle(FullState& state, double delta_alpha) {
  const Complex phase = std::polar(1.0, kPi + delta_alpha);
  const auto count = static_cast<std::int64_t>(state.marked.size());
#pragma omp parallel for schedule(static) if (count >= 4096)
  for (std::int64_t j = 0; j < count; ++j) state.amplitudes[state.marked[static_cast<std::size_t>(j)]] *= phase;
}

void apply_reflection(FullState& state, double beta) {
  const auto size = static_cast<std::int64_t>(state.amplitudes.size());
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(size));
  const Complex phase = std::polar(1.0, beta);
  // (1 − e^{iβ}) <ψ0|ψ> <x|ψ0>, identical for every x.
  const Complex shift = (1.0 - phase) * sum_parallel(state.amplitudes) * inv_sqrt_n * inv_sqrt_n;
#pragma omp parallel for schedule(static) if (size >= 4096)
  for (std::int64_t i = 0; i < size; ++i) {
    Complex& a = state.amplitudes[static_cast<std::size_t>(i)];
    a = -(phase * a + shift);
  }
}

void apply_oracle_serial(FullState& state, double delta_alpha) {
  const Complex phase = std::polar(1.0, kPi + delta_alpha);
  for (const auto idx : state.marked) state.amplitudes[idx] *= phase;
}

void apply_reflection_serial(FullState& state, double beta) {
  const double n = static_cast<double>(state.amplitudes.size());
  const Complex phase = std::polar(1.0, beta);
  Complex overlap{};
  for (const Complex& a : state.amplitudes) overlap += a;
  const Complex shift = (1.0 - phase) * overlap / n;
  for (Complex& a : state.amplitudes) a = -(phase * a + shift);
}

double full_simulate(int qubits, std::span<const std::uint64_t> marked, const PhaseSchedule& schedule,
                     std::span<const PhaseOffset> offsets) {
  return simulate(qubits, marked, schedule, offsets, apply_oracle, apply_reflection);
}

double full_simulate_serial(int qubits, std::span<const std::uint64_t> marked,
                            const PhaseSchedule& schedule, std::span<const PhaseOffset> offsets) {
  return simulate(qubits, marked, schedule, offsets, apply_oracle_serial, apply_reflection_serial);
}

double compare_reduced(int qubits, std::span<const std::uint64_t> marked, const PhaseSchedule& schedule,
                       std::span<const PhaseOffset> offsets) {
  const double full = full_simulate(qubits, marked, schedule, offsets);
  const double reduced =
      success_probability(apply_schedule(schedule, make_initial_state(schedule.lambda), offsets));
  return std::abs(full - reduced);
}

}  // namespace dgrover
