#include "dgrover/noise.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <string>

#include "dgrover/errors.hpp"
#include "dgrover/text.hpp"

namespace dgrover {

namespace {

constexpr double kMaxPoissonRate = 700.0;  // exp(−rate) underflows past ~745
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::map<std::string, double> parse_params(std::string_view text) {
  std::map<std::string, double> params;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(item) + "'");
    const std::string key(trim(item.substr(0, eq)));
    if (!params.emplace(key, parse_double(trim(item.substr(eq + 1)))).second) {
      throw ParseError("duplicate parameter '" + key + "'");
    }
  }
  return params;
}

double take(std::map<std::string, double>& params, const std::string& key, std::string_view law) {
  const auto it = params.find(key);
  if (it == params.end()) throw ParseError(std::string(law) + " needs parameter '" + key + "'");
  const double v = it->second;
  params.erase(it);
  return v;
}

Distribution parse_law(std::string_view text) {
  text = trim(text);
  if (text == "none") return Distribution::none();
  const auto colon = text.find(':');
  const std::string_view name = trim(text.substr(0, colon));
  auto params = parse_params(colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1));

  Distribution law;
  if (name == "gaussian") {
    const double mu = take(params, "mu", name);
    law = Distribution::gaussian(mu, take(params, "var", name));
  } else if (name == "poisson") {
    law = Distribution::poisson(take(params, "rate", name));
  } else if (name == "uniform") {
    const double a = take(params, "a", name);
    law = Distribution::uniform(a, take(params, "b", name));
  } else {
    throw ParseError("unknown distribution '" + std::string(name) + "'");
  }
  if (!params.empty()) {
    throw ParseError("unexpected parameter '" + params.begin()->first + "' for " + std::string(name));
  }
  try {
    law.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return law;
}

std::string format_law(const Distribution& law) {
  switch (law.kind) {
    case DistributionKind::none: return "none";
    case DistributionKind::gaussian:
      return "gaussian:mu=" + format_double(law.mu) + ",var=" + format_double(law.variance);
    case DistributionKind::poisson: return "poisson:rate=" + format_double(law.rate);
    case DistributionKind::uniform:
      return "uniform:a=" + format_double(law.a) + ",b=" + format_double(law.b);
  }
  return "none";
}

}  // namespace

std::string_view to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::none: return "none";
    case DistributionKind::gaussian: return "gaussian";
    case DistributionKind::poisson: return "poisson";
    case DistributionKind::uniform: return "uniform";
  }
  return "none";
}

std::string_view to_string(NoiseTarget target) {
  switch (target) {
    case NoiseTarget::none: return "none";
    case NoiseTarget::reflection: return "reflection";
    case NoiseTarget::oracle: return "oracle";
    case NoiseTarget::both: return "both";
  }
  return "none";
}

Distribution Distribution::gaussian(double mu, double variance) {
  Distribution d;
  d.kind = DistributionKind::gaussian;
  d.mu = mu;
  d.variance = variance;
  return d;
}

Distribution Distribution::poisson(double rate) {
  Distribution d;
  d.kind = DistributionKind::poisson;
  d.rate = rate;
  return d;
}

Distribution Distribution::uniform(double a, double b) {
  Distribution d;
  d.kind = DistributionKind::uniform;
  d.a = a;
  d.b = b;
  return d;
}

void Distribution::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(variance) || !std::isfinite(rate) || !std::isfinite(a) ||
      !std::isfinite(b)) {
    throw DomainError("noise parameters must be finite");
  }
  if (variance < 0.0) throw DomainError("gaussian variance must be >= 0");
  if (rate < 0.0 || rate > kMaxPoissonRate) throw DomainError("poisson rate must lie in [0, 700]");
  if (a > b) throw DomainError("uniform bounds need a <= b");
}

NoiseTarget NoiseSpec::target() const {
  const bool refl = reflection.kind != DistributionKind::none;
  const bool orc = oracle.kind != DistributionKind::none;
  if (refl && orc) return NoiseTarget::both;
  if (refl) return NoiseTarget::reflection;
  if (orc) return NoiseTarget::oracle;
  return NoiseTarget::none;
}

void NoiseSpec::validate() const {
  reflection.validate();
  oracle.validate();
}

NoiseSpec parse_noise_spec(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty noise spec");
  if (text == "none") return {};

  NoiseSpec spec;
  if (text.find(';') != std::string_view::npos || text.starts_with("oracle=") ||
      text.starts_with("reflection=")) {
    bool seen_oracle = false;
    bool seen_reflection = false;
    while (!text.empty()) {
      const auto semi = text.find(';');
      const std::string_view part = trim(text.substr(0, semi));
      text = semi == std::string_view::npos ? std::string_view{} : text.substr(semi + 1);
      const auto eq = part.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected channel=law in '" + std::string(part) + "'");
      const std::string_view channel = trim(part.substr(0, eq));
      if (channel == "oracle" && !seen_oracle) {
        spec.oracle = parse_law(part.substr(eq + 1));
        seen_oracle = true;
      } else if (channel == "reflection" && !seen_reflection) {
        spec.reflection = parse_law(part.substr(eq + 1));
        seen_reflection = true;
      } else {
        throw ParseError("unknown or repeated channel '" + std::string(channel) + "'");
      }
    }
    return spec;
  }

  const auto at = text.rfind('@');
  const Distribution law = parse_law(text.substr(0, at));
  const std::string_view target = at == std::string_view::npos ? "reflection" : trim(text.substr(at + 1));
  if (target == "reflection") {
    spec.reflection = law;
  } else if (target == "oracle") {
    spec.oracle = law;
  } else if (target == "both") {
    spec.reflection = law;
    spec.oracle = law;
  } else {
    throw ParseError("unknown noise target '" + std::string(target) + "'");
  }
  return spec;
}

std::string format_noise_spec(const NoiseSpec& spec) {
  switch (spec.target()) {
    case NoiseTarget::none: return "none";
    case NoiseTarget::reflection: return format_law(spec.reflection) + "@reflection";
    case NoiseTarget::oracle: return format_law(spec.oracle) + "@oracle";
    case NoiseTarget::both:
      if (spec.reflection == spec.oracle) return format_law(spec.reflection) + "@both";
      return "oracle=" + format_law(spec.oracle) + ";reflection=" + format_law(spec.reflection);
  }
  return "none";
}

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += kGolden;
  return mix(state_);
}

SplitMix64 RngStream::engine(std::uint64_t step, NoiseChannel channel) const {
  std::uint64_t h = SplitMix64::mix(seed + kGolden);
  h = SplitMix64::mix(h ^ index);
  h = SplitMix64::mix(h ^ ((step << 1) | static_cast<std::uint64_t>(channel)));
  return SplitMix64(h);
}

double uniform01(SplitMix64& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

double sample(const Distribution& law, SplitMix64& engine) {
  switch (law.kind) {
    case DistributionKind::none: return 0.0;
    case DistributionKind::gaussian: {
      const double u1 = static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
      const double u2 = uniform01(engine);
      const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
      return law.mu + std::sqrt(law.variance) * z;
    }
    case DistributionKind::poisson: {
      if (law.rate == 0.0) return 0.0;
      const double u = uniform01(engine);
      double p = std::exp(-law.rate);
      double cdf = p;
      int count = 0;
      while (u > cdf && count < 100000) {
        ++count;
        p *= law.rate / count;
        cdf += p;
        if (p == 0.0) break;
      }
      return static_cast<double>(count);
    }
    case DistributionKind::uniform: return law.a + (law.b - law.a) * uniform01(engine);
  }
  return 0.0;
}

double sample(const Distribution& law, const RngStream& stream) {
  SplitMix64 engine = stream.engine(0, NoiseChannel::reflection);
  return sample(law, engine);
}

std::vector<PhaseOffset> perturb(std::size_t steps, const NoiseSpec& spec, const RngStream& stream) {
  std::vector<PhaseOffset> offsets(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    if (spec.reflection.kind != DistributionKind::none) {
      SplitMix64 engine = stream.engine(i, NoiseChannel::reflection);
      offsets[i].reflection = sample(spec.reflection, engine);
    }
    if (spec.oracle.kind != DistributionKind::none) {
      SplitMix64 engine = stream.engine(i, NoiseChannel::oracle);
      offsets[i].oracle = sample(spec.oracle, engine);
    }
  }
  return offsets;
}

std::vector<PhaseOffset> perturb(const PhaseSchedule& schedule, const NoiseSpec& spec,
                                 const RngStream& stream) {
  return perturb(schedule.size(), spec, stream);
}

}  // namespace dgrover
