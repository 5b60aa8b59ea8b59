#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dgrover/errors.hpp"
#include "dgrover/noise.hpp"

using namespace dgrover;

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(const Distribution& law, int n, std::uint64_t seed) {
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample(law, RngStream{seed, static_cast<std::uint64_t>(i)});
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  return {mean, sq / n - mean * mean};
}

}  // namespace

TEST(SplitMix64, ReferenceSequence) {
  // Published reference outputs for state 1234567.
  SplitMix64 g(1234567);
  EXPECT_EQ(g(), 6457827717110365317ULL);
  EXPECT_EQ(g(), 3203168211198807973ULL);
  EXPECT_EQ(g(), 9817491932198370423ULL);
}

TEST(Uniform01, InUnitInterval) {
  SplitMix64 g(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(g);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Sample, NoneIsZero) {
  for (std::uint64_t i = 0; i < 100; ++i) EXPECT_EQ(sample(Distribution::none(), RngStream{1, i}), 0.0);
}

TEST(Sample, PoissonMean) {
  const Moments m = moments(Distribution::poisson(0.04), 1000000, 5);
  EXPECT_NEAR(m.mean, 0.04, 0.0006);
  EXPECT_NEAR(m.variance, 0.04, 5 * std::sqrt((0.04 + 2 * 0.04 * 0.04) / 1e6));
}

TEST(Sample, PoissonIsIntegral) {
  SplitMix64 g(9);
  for (int i = 0; i < 10000; ++i) {
    const double x = sample(Distribution::poisson(3.0), g);
    EXPECT_EQ(x, std::floor(x));
    EXPECT_GE(x, 0.0);
  }
}

TEST(Sample, UniformMoments) {
  const Moments m = moments(Distribution::uniform(-0.1, 0.2), 1000000, 6);
  EXPECT_NEAR(m.mean, 0.05, 0.0003);
  const double var = 0.09 / 12;
  EXPECT_NEAR(m.variance, var, 5 * var * std::sqrt(0.8 / 1e6));
}

TEST(Sample, GaussianMoments) {
  const Moments m = moments(Distribution::gaussian(0.05, 0.04), 1000000, 7);
  EXPECT_NEAR(m.mean, 0.05, 5 * 0.2 / 1000);
  EXPECT_NEAR(m.variance, 0.04, 5 * 0.04 * std::sqrt(2.0 / 1e6));
}

TEST(Sample, ZeroVarianceGaussianIsConstant) {
  for (std::uint64_t i = 0; i < 100; ++i) EXPECT_EQ(sample(Distribution::gaussian(0.3, 0.0), RngStream{2, i}), 0.3);
}

TEST(Distribution, Validation) {
  EXPECT_THROW(Distribution::gaussian(0, -1).validate(), DomainError);
  EXPECT_THROW(Distribution::poisson(-0.1).validate(), DomainError);
  EXPECT_THROW(Distribution::poisson(701).validate(), DomainError);
  EXPECT_THROW(Distribution::uniform(1, 0).validate(), DomainError);
  EXPECT_THROW(Distribution::gaussian(INFINITY, 1).validate(), DomainError);
  EXPECT_NO_THROW(Distribution::uniform(0.1, 0.1).validate());
}

TEST(NoiseSpecText, ParsesTargets) {
  const NoiseSpec r = parse_noise_spec("gaussian:mu=0,var=0.04@reflection");
  EXPECT_EQ(r.reflection, Distribution::gaussian(0, 0.04));
  EXPECT_EQ(r.oracle, Distribution::none());
  EXPECT_EQ(r.target(), NoiseTarget::reflection);

  const NoiseSpec b = parse_noise_spec("gaussian:mu=0.03,var=0.01@both");
  EXPECT_EQ(b.reflection, b.oracle);
  EXPECT_EQ(b.target(), NoiseTarget::both);

  const NoiseSpec o = parse_noise_spec("uniform:a=-0.1,b=0.2@oracle");
  EXPECT_EQ(o.oracle, Distribution::uniform(-0.1, 0.2));
  EXPECT_EQ(o.target(), NoiseTarget::oracle);

  EXPECT_EQ(parse_noise_spec("poisson:rate=0.04").reflection, Distribution::poisson(0.04));
  EXPECT_EQ(parse_noise_spec("none").target(), NoiseTarget::none);
}

TEST(NoiseSpecText, MixedChannels) {
  const NoiseSpec s = parse_noise_spec("oracle=gaussian:mu=0,var=0.04;reflection=gaussian:mu=0.03,var=0.01");
  EXPECT_EQ(s.oracle, Distribution::gaussian(0, 0.04));
  EXPECT_EQ(s.reflection, Distribution::gaussian(0.03, 0.01));
  EXPECT_EQ(parse_noise_spec(format_noise_spec(s)), s);
}

TEST(NoiseSpecText, RoundTrip) {
  for (const char* text : {"none", "gaussian:mu=0.05,var=0.04@reflection", "poisson:rate=0.04@oracle",
                           "uniform:a=-0.1,b=0.2@both"}) {
    const NoiseSpec s = parse_noise_spec(text);
    EXPECT_EQ(parse_noise_spec(format_noise_spec(s)), s) << text;
  }
}

TEST(NoiseSpecText, Rejects) {
  EXPECT_THROW(parse_noise_spec(""), ParseError);
  EXPECT_THROW(parse_noise_spec("cauchy:x=1"), ParseError);
  EXPECT_THROW(parse_noise_spec("gaussian:mu=0"), ParseError);
  EXPECT_THROW(parse_noise_spec("gaussian:mu=0,var=0.1,rate=2"), ParseError);
  EXPECT_THROW(parse_noise_spec("gaussian:mu=0,var=abc"), ParseError);
  EXPECT_THROW(parse_noise_spec("gaussian:mu=0,var=0.1@sideways"), ParseError);
  EXPECT_THROW(parse_noise_spec("gaussian:mu=0,var=-1"), ParseError);
}

TEST(Perturb, ReflectionTargetOnly) {
  const auto offsets = perturb(8, parse_noise_spec("gaussian:mu=0,var=0.04@reflection"), RngStream{1, 2});
  ASSERT_EQ(offsets.size(), 8u);
  for (const auto& o : offsets) {
    EXPECT_NE(o.reflection, 0.0);
    EXPECT_EQ(o.oracle, 0.0);
  }
}

TEST(Perturb, NoneIsAllZero) {
  for (const auto& o : perturb(12, NoiseSpec{}, RngStream{3, 4})) {
    EXPECT_EQ(o.reflection, 0.0);
    EXPECT_EQ(o.oracle, 0.0);
  }
}

TEST(Perturb, Reproducible) {
  const NoiseSpec s = parse_noise_spec("gaussian:mu=0.03,var=0.01@both");
  const auto a = perturb(10, s, RngStream{42, 17});
  const auto b = perturb(10, s, RngStream{42, 17});
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].reflection, b[i].reflection);
    EXPECT_EQ(a[i].oracle, b[i].oracle);
  }
  const auto c = perturb(10, s, RngStream{42, 18});
  EXPECT_NE(a[0].reflection, c[0].reflection);
}

TEST(Perturb, ChannelsDrawFromTheirOwnLaws) {
  const NoiseSpec s{Distribution::gaussian(0.03, 0.01), Distribution::gaussian(0.0, 0.04)};
  constexpr int n = 200000;
  double sr = 0, sr2 = 0, so = 0, so2 = 0, cross = 0;
  for (int i = 0; i < n; ++i) {
    const auto o = perturb(2, s, RngStream{8, static_cast<std::uint64_t>(i)});
    sr += o[0].reflection;
    sr2 += o[0].reflection * o[0].reflection;
    so += o[0].oracle;
    so2 += o[0].oracle * o[0].oracle;
    cross += (o[0].reflection - 0.03) * o[0].oracle;
  }
  EXPECT_NEAR(sr / n, 0.03, 5 * 0.1 / std::sqrt(n));
  EXPECT_NEAR(so / n, 0.0, 5 * 0.2 / std::sqrt(n));
  EXPECT_NEAR(sr2 / n - std::pow(sr / n, 2), 0.01, 5 * 0.01 * std::sqrt(2.0 / n));
  EXPECT_NEAR(so2 / n - std::pow(so / n, 2), 0.04, 5 * 0.04 * std::sqrt(2.0 / n));
  EXPECT_NEAR(cross / n / std::sqrt(0.01 * 0.04), 0.0, 5 / std::sqrt(n));
}

TEST(Perturb, StepsAreUncorrelated) {
  const NoiseSpec s = parse_noise_spec("gaussian:mu=0,var=1@reflection");
  constexpr int n = 100000;
  constexpr std::size_t steps = 6;
  std::vector<std::vector<double>> x(steps, std::vector<double>(n));
  for (int t = 0; t < n; ++t) {
    const auto o = perturb(steps, s, RngStream{77, static_cast<std::uint64_t>(t)});
    for (std::size_t i = 0; i < steps; ++i) x[i][t] = o[i].reflection;
  }
  auto corr = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double ma = 0, mb = 0;
    for (int i = 0; i < n; ++i) {
      ma += a[i];
      mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (int i = 0; i < n; ++i) {
      sab += (a[i] - ma) * (b[i] - mb);
      saa += (a[i] - ma) * (a[i] - ma);
      sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
  };
  for (std::size_t i = 0; i < steps; ++i) {
    for (std::size_t j = i + 1; j < steps; ++j) {
      EXPECT_LT(std::abs(corr(x[i], x[j])), 5 / std::sqrt(double(n))) << i << "," << j;
    }
  }
}
