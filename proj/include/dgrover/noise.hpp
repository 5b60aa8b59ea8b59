#pragma once

// Coherent phase-noise models.
//
// Every random draw comes from a SplitMix64 engine whose state is derived
// from (master seed, trial index, step index, channel). Draws are therefore
// independent of evaluation order and thread count.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dgrover/bloch.hpp"
#include "dgrover/schedules.hpp"

namespace dgrover {

enum class DistributionKind { none, gaussian, poisson, uniform };

std::string_view to_string(DistributionKind kind);

struct Distribution {
  DistributionKind kind = DistributionKind::none;
  double mu = 0.0;
  double variance = 0.0;
  double rate = 0.0;
  double a = 0.0;
  double b = 0.0;

  static Distribution none() { return {}; }
  static Distribution gaussian(double mu, double variance);
  static Distribution poisson(double rate);
  static Distribution uniform(double a, double b);

  /// Throws DomainError: variance < 0, rate ∉ [0, 700], a > b, non-finite values.
  void validate() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;
};

enum class NoiseTarget { none, reflection, oracle, both };

std::string_view to_string(NoiseTarget target);

/// Per-channel laws. A channel whose law is `none` is untargeted.
struct NoiseSpec {
  Distribution reflection;
  Distribution oracle;

  [[nodiscard]] NoiseTarget target() const;
  void validate() const;

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

/// Grammar:
///   none
///   <law>@reflection | <law>@oracle | <law>@both
///   oracle=<law>;reflection=<law>            (either order, both channels)
/// where <law> is gaussian:mu=M,var=V | poisson:rate=R | uniform:a=A,b=B.
/// Throws ParseError.
NoiseSpec parse_noise_spec(std::string_view text);

/// Canonical text form; parse_noise_spec(format_noise_spec(s)) == s.
std::string format_noise_spec(const NoiseSpec& spec);

enum class NoiseChannel : std::uint32_t { reflection = 0, oracle = 1 };

/// SplitMix64 (Steele, Lea & Flood 2014). Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  /// The SplitMix64 output finalizer, usable as a 64-bit hash.
  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t state_;
};

/// (master seed, stream index) pair; one stream per Monte Carlo trial.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;

  /// Engine for one (step, channel) cell of this stream.
  [[nodiscard]] SplitMix64 engine(std::uint64_t step, NoiseChannel channel) const;
};

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(SplitMix64& engine);

/// One draw in radians. Gaussian by Box–Muller; Poisson by inversion (the
/// integer count is used directly as radians); uniform on [a, b).
double sample(const Distribution& law, SplitMix64& engine);

/// Convenience: draw for step 0 of the reflection channel.
double sample(const Distribution& law, const RngStream& stream);

/// Independent per-step offsets; untargeted channels are zero.
std::vector<PhaseOffset> perturb(std::size_t steps, const NoiseSpec& spec, const RngStream& stream);
std::vector<PhaseOffset> perturb(const PhaseSchedule& schedule, const NoiseSpec& spec,
                                 const RngStream& stream);

}  // namespace dgrover
