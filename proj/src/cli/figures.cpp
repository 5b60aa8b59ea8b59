#include <string>

#include "dgrover/cli.hpp"
#include "dgrover/errors.hpp"
#include "dgrover/text.hpp"

namespace dgrover::cli {

namespace {

constexpr std::int64_t kDefaultSamples = 10000;
constexpr std::int64_t kPositionSamples = 50000;

FigureDefinition lambda_figure(std::string id, NoiseSpec noise, std::int64_t samples,
                               const FigureOptions& options) {
  FigureDefinition def{std::move(id), {}};
  def.sweep.axis = SweepAxis::lambda;
  def.sweep.values = linspace(options.lambda_min, options.lambda_max, options.grid_points);
  def.sweep.base.noise = noise;
  def.sweep.base.samples = options.samples.value_or(samples);
  def.sweep.base.seed = options.seed;
  return def;
}

FigureDefinition variance_figure(std::string id, double lambda, const FigureOptions& options) {
  FigureDefinition def{std::move(id), {}};
  def.sweep.axis = SweepAxis::variance;
  def.sweep.values = linspace(0.0, 0.1, 11);
  def.sweep.base.lambda = lambda;
  def.sweep.base.noise.reflection = Distribution::gaussian(0.05, 0.0);
  def.sweep.base.samples = options.samples.value_or(kDefaultSamples);
  def.sweep.base.seed = options.seed;
  return def;
}

FigureDefinition position_figure(std::string id, double mu, const FigureOptions& options) {
  constexpr double lambda = 0.01;
  FigureDefinition def{std::move(id), {}};
  def.sweep.axis = SweepAxis::position;
  const int k = critical_steps(Fraction(lambda)).k;
  for (int n = 1; n <= k - 1; ++n) def.sweep.values.push_back(n);
  def.sweep.algorithms = {ScheduleKind::positioned};
  def.sweep.base.lambda = lambda;
  def.sweep.base.noise.reflection = Distribution::gaussian(mu, 0.04);
  def.sweep.base.samples = options.samples.value_or(kPositionSamples);
  def.sweep.base.seed = options.seed;
  return def;
}

std::string csv_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }

}  // namespace

std::vector<std::string> figure_ids() {
  return {"1c", "3b", "3c", "4a", "4b", "5a", "5b", "6a", "6b", "7a", "7b"};
}

FigureDefinition figure_definition(std::string_view id, const FigureOptions& options) {
  if (options.grid_points < 1) throw ParseError("grid needs at least one point");
  const auto refl = [](Distribution d) { return NoiseSpec{d, Distribution::none()}; };
  if (id == "1c") return lambda_figure("1c", NoiseSpec{}, 1, options);
  if (id == "3b") return lambda_figure("3b", refl(Distribution::gaussian(0.0, 0.04)), kDefaultSamples, options);
  if (id == "3c") return lambda_figure("3c", refl(Distribution::gaussian(0.05, 0.04)), kDefaultSamples, options);
  if (id == "4a") return variance_figure("4a", 0.040, options);
  if (id == "4b") return variance_figure("4b", 0.027, options);
  if (id == "5a") return lambda_figure("5a", refl(Distribution::poisson(0.04)), kDefaultSamples, options);
  if (id == "5b") return lambda_figure("5b", refl(Distribution::uniform(-0.1, 0.2)), kDefaultSamples, options);
  if (id == "6a") {
    const Distribution law = Distribution::gaussian(0.03, 0.01);
    return lambda_figure("6a", NoiseSpec{law, law}, kDefaultSamples, options);
  }
  if (id == "6b") {
    return lambda_figure("6b", NoiseSpec{Distribution::gaussian(0.03, 0.01), Distribution::gaussian(0.0, 0.04)},
                         kDefaultSamples, options);
  }
  if (id == "7a") return position_figure("7a", 0.0, options);
  if (id == "7b") return position_figure("7b", 0.05, options);
  throw ParseError("unknown figure '" + std::string(id) + "'");
}

std::string csv_header() {
  return "figure,algorithm,lambda,position,dist,mu,var,rate,a,b,samples,seed,mean_success,stderr";
}

std::string csv_row(std::string_view figure, const SweepRow& row) {
  const ExperimentConfig& c = row.config;
  const NoiseTarget target = c.noise.target();

  // dist names the law kind and its channel; numeric columns describe that law.
  std::string dist = "none";
  std::optional<double> mu, var, rate, a, b;
  const Distribution* law = nullptr;
  if (target == NoiseTarget::both && !(c.noise.reflection == c.noise.oracle)) {
    dist = "mixed@both";
  } else if (target != NoiseTarget::none) {
    law = target == NoiseTarget::oracle ? &c.noise.oracle : &c.noise.reflection;
    dist = std::string(to_string(law->kind)) + "@" + std::string(to_string(target));
  }
  if (law != nullptr) {
    switch (law->kind) {
      case DistributionKind::gaussian: mu = law->mu; var = law->variance; break;
      case DistributionKind::poisson: rate = law->rate; break;
      case DistributionKind::uniform: a = law->a; b = law->b; break;
      case DistributionKind::none: break;
    }
  }

  std::string out;
  out += std::string(figure) + ",";
  out += std::string(to_string(c.algorithm)) + ",";
  out += format_double(c.lambda) + ",";
  out += (c.algorithm == ScheduleKind::positioned && c.position ? std::to_string(*c.position) : "") + ",";
  out += dist + ",";
  out += csv_field(mu) + "," + csv_field(var) + "," + csv_field(rate) + "," + csv_field(a) + "," +
         csv_field(b) + ",";
  out += std::to_string(c.samples) + "," + std::to_string(c.seed) + ",";
  if (row.stats) {
    out += format_double(row.stats->mean) + "," + format_double(row.stats->std_error);
  } else {
    out += ",";
  }
  return out;
}

}  // namespace dgrover::cli
