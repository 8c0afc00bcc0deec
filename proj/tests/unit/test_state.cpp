#include "qes/state.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qes/errors.hpp"

namespace qes {
namespace {

using std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

TwoQubitPureState phi1() { return make_state(kInvSqrt2, 0.0, 0.0, kInvSqrt2); }
TwoQubitPureState phi2() { return make_state(0.0, kInvSqrt2, -kInvSqrt2, 0.0); }
TwoQubitPureState phi3() { return make_state(0.5, 0.5, -0.5, 0.5); }
TwoQubitPureState product00() { return make_state(1.0, 0.0, 0.0, 0.0); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected qes::Error";
  return ErrorKind::Io;
}

// Random complex state from an independent generator.
TwoQubitPureState random_state(std::mt19937_64& gen, bool real) {
  std::normal_distribution<double> n;
  std::array<Amplitude, 4> a;
  for (auto& z : a) z = real ? Amplitude(n(gen), 0.0) : Amplitude(n(gen), n(gen));
  return make_state(a[0], a[1], a[2], a[3], Normalize::Yes);
}

TEST(MakeState, AcceptsNormalizedInputs) {
  EXPECT_NEAR(phi1().squared_norm(), 1.0, 1e-15);
  EXPECT_EQ(product00().a(), Amplitude(1.0));
  EXPECT_TRUE(phi1().is_real());
}

TEST(MakeState, RejectsUnnormalizedWithoutFlag) {
  EXPECT_EQ(kind_of([] { make_state(2.0, 0.0, 0.0, 0.0); }), ErrorKind::NotNormalized);
  EXPECT_EQ(kind_of([] { make_state(1.0 + 1e-11, 0.0, 0.0, 0.0); }), ErrorKind::NotNormalized);
}

TEST(MakeState, RejectsZeroVector) {
  EXPECT_EQ(kind_of([] { make_state(0.0, 0.0, 0.0, 0.0, Normalize::Yes); }), ErrorKind::ZeroVector);
}

TEST(MakeState, RejectsNonFinite) {
  EXPECT_EQ(kind_of([] { make_state(std::nan(""), 0.0, 0.0, 1.0, Normalize::Yes); }), ErrorKind::DomainError);
}

TEST(MakeState, NormalizesOnRequest) {
  const auto s = make_state(2.0, 0.0, 0.0, 0.0, Normalize::Yes);
  EXPECT_DOUBLE_EQ(s.a().real(), 1.0);
  const auto t = make_state({1.0, 1.0}, 1.0, -1.0, {0.0, 3.0}, Normalize::Yes);
  EXPECT_NEAR(t.squared_norm(), 1.0, 1e-15);
  EXPECT_FALSE(t.is_real());
}

TEST(FromParams, SuperpositionState) {
  const auto s = from_params({0.5, pi / 4, 3 * pi / 4});
  EXPECT_NEAR(s.a().real(), 0.5, 1e-15);
  EXPECT_NEAR(s.b().real(), 0.5, 1e-15);
  EXPECT_NEAR(s.c().real(), -0.5, 1e-15);
  EXPECT_NEAR(s.d().real(), 0.5, 1e-15);
  EXPECT_TRUE(s.is_real());
  EXPECT_NEAR(concurrence(s).value, 1.0, 1e-15);
}

TEST(FromParams, YOneIsBasisState) {
  const auto s = from_params({1.0, 0.0, 1.234});
  EXPECT_EQ(s.a(), Amplitude(1.0));
  EXPECT_EQ(s.b(), Amplitude(0.0));
  EXPECT_EQ(s.c(), Amplitude(0.0));
  EXPECT_EQ(s.d(), Amplitude(0.0));
}

TEST(FromParams, ConcurrenceIsAbsSinDelta) {
  for (double delta : {0.1, 0.3 * pi, 1.0, 2.5, 4.0, -0.7}) {
    const auto s = from_params({0.5, delta / 2, -delta / 2});
    EXPECT_NEAR(concurrence(s).value, std::abs(std::sin(delta)), 1e-14) << delta;
  }
}

TEST(FromParams, RejectsYOutsideUnitInterval) {
  EXPECT_EQ(kind_of([] { from_params({1.5, 0.0, 0.0}); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { from_params({-0.1, 0.0, 0.0}); }), ErrorKind::DomainError);
}

TEST(Measure, WorkedExamples) {
  const auto d1 = measure(phi1());
  EXPECT_NEAR(d1.p[0], 0.5, 1e-15);
  EXPECT_EQ(d1.p[1], 0.0);
  EXPECT_EQ(d1.p[2], 0.0);
  EXPECT_NEAR(d1.p[3], 0.5, 1e-15);

  EXPECT_EQ(measure(product00()).p, (std::array<double, 4>{1.0, 0.0, 0.0, 0.0}));

  for (double p : measure(phi3()).p) EXPECT_DOUBLE_EQ(p, 0.25);
}

TEST(Shannon, Total) {
  EXPECT_DOUBLE_EQ(shannon_total(make_distribution({0.5, 0, 0, 0.5})).value, 1.0);
  EXPECT_DOUBLE_EQ(shannon_total(make_distribution({0.25, 0.25, 0.25, 0.25})).value, 2.0);
  EXPECT_EQ(shannon_total(make_distribution({1, 0, 0, 0})).value, 0.0);
}

TEST(Shannon, Marginals) {
  auto m = shannon_marginals(make_distribution({0.5, 0, 0, 0.5}));
  EXPECT_DOUBLE_EQ(m.left.value, 1.0);
  EXPECT_DOUBLE_EQ(m.right.value, 1.0);
  m = shannon_marginals(make_distribution({1, 0, 0, 0}));
  EXPECT_EQ(m.left.value, 0.0);
  EXPECT_EQ(m.right.value, 0.0);
  // Left qubit deterministic, right qubit uniform.
  m = shannon_marginals(make_distribution({0.5, 0.5, 0, 0}));
  EXPECT_EQ(m.left.value, 0.0);
  EXPECT_DOUBLE_EQ(m.right.value, 1.0);
}

TEST(Distribution, ValidatingConstructor) {
  EXPECT_EQ(kind_of([] { make_distribution({0.5, 0.6, 0, 0}); }), ErrorKind::NotNormalized);
  EXPECT_EQ(kind_of([] { make_distribution({-0.1, 1.1, 0, 0}); }), ErrorKind::DomainError);
}

TEST(MutualInformation, WorkedExamples) {
  EXPECT_NEAR(mutual_information(measure(phi1())).value, 1.0, 1e-15);
  EXPECT_NEAR(mutual_information(measure(phi2())).value, 1.0, 1e-15);
  EXPECT_EQ(mutual_information(measure(phi3())).value, 0.0);
  EXPECT_EQ(mutual_information(make_distribution({1, 0, 0, 0})).value, 0.0);
}

TEST(Concurrence, WorkedExamples) {
  EXPECT_NEAR(concurrence(phi1()).value, 1.0, 1e-15);
  EXPECT_EQ(concurrence(product00()).value, 0.0);
  EXPECT_DOUBLE_EQ(concurrence(phi3()).value, 1.0);
}

TEST(ConcurrencePolar, PhaseExtremes) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int k = 0; k < 100; ++k) {
    std::array<double, 4> m{u(gen), u(gen), u(gen), u(gen)};
    const double n = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3]);
    for (auto& v : m) v /= n;
    const double ad = m[0] * m[3], bc = m[1] * m[2];
    EXPECT_NEAR(concurrence_polar(m, pi).value, 2 * (ad + bc), 1e-14);
    EXPECT_NEAR(concurrence_polar(m, 0.0).value, 2 * std::abs(ad - bc), 1e-14);
  }
  EXPECT_NEAR(concurrence_polar({kInvSqrt2, 0, 0, kInvSqrt2}, 0.0).value, 1.0, 1e-15);
}

TEST(ConcurrencePolar, RejectsUnnormalizedModuli) {
  EXPECT_EQ(kind_of([] { concurrence_polar({1, 1, 0, 0}, 0.0); }), ErrorKind::NotNormalized);
  EXPECT_EQ(kind_of([] { concurrence_polar({-1, 0, 0, 0}, 0.0); }), ErrorKind::DomainError);
}

TEST(EntanglementFromConcurrence, Endpoints) {
  EXPECT_EQ(entanglement_from_concurrence(Concurrence{0.0}).value, 0.0);
  EXPECT_DOUBLE_EQ(entanglement_from_concurrence(Concurrence{1.0}).value, 1.0);
}

TEST(EntanglementFromConcurrence, MatchesHighPrecisionOracle) {
  // C = 0.8 gives x = 0.8 exactly in real arithmetic.
  const double expected = oracle::entropy_of_concurrence_hp(0.8);
  EXPECT_NEAR(expected, 0.7219280948873623, 1e-15);
  EXPECT_NEAR(entanglement_from_concurrence(Concurrence{0.8}).value, expected, 1e-15);
  for (double c = 0.0; c <= 1.0; c += 0.01) {
    EXPECT_NEAR(entanglement_from_concurrence(Concurrence{c}).value, oracle::entropy_of_concurrence_hp(c), 1e-14)
        << c;
  }
}

TEST(EntanglementFromConcurrence, RejectsOutOfDomain) {
  EXPECT_EQ(kind_of([] { entanglement_from_concurrence(Concurrence{1.1}); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { entanglement_from_concurrence(Concurrence{-0.01}); }), ErrorKind::DomainError);
}

TEST(EntanglementFromConcurrence, StrictlyIncreasingOnGrid) {
  double prev = entanglement_from_concurrence(Concurrence{0.0}).value;
  for (int k = 1; k <= 1000; ++k) {
    const double e = entanglement_from_concurrence(Concurrence{k * 1e-3}).value;
    EXPECT_GT(e, prev) << k;
    prev = e;
  }
}

TEST(EntanglementPartialTrace, WorkedExamples) {
  EXPECT_NEAR(entanglement_partial_trace(phi1()).value, 1.0, 1e-15);
  EXPECT_NEAR(entanglement_partial_trace(phi2()).value, 1.0, 1e-15);
  EXPECT_NEAR(entanglement_partial_trace(phi3()).value, 1.0, 1e-15);
  EXPECT_EQ(entanglement_partial_trace(product00()).value, 0.0);
}

TEST(EntanglementPartialTrace, AgreesWithEigenSolver) {
  std::mt19937_64 gen(5);
  for (int k = 0; k < 2000; ++k) {
    const auto s = random_state(gen, k % 2 == 0);
    EXPECT_NEAR(entanglement_partial_trace(s).value, oracle::entanglement_eigen(s.amplitudes()), 1e-12);
  }
}

// Properties over random states from an independent generator.
class StateProperties : public ::testing::TestWithParam<bool> {};

TEST_P(StateProperties, RangesBoundAndRoutes) {
  std::mt19937_64 gen(GetParam() ? 101 : 202);
  std::uniform_real_distribution<double> phase(0.0, 2 * pi);
  for (int k = 0; k < 20000; ++k) {
    const auto s = random_state(gen, GetParam());
    ASSERT_NEAR(s.squared_norm(), 1.0, kNormTolerance);

    const auto dist = measure(s);
    const double sum = dist.p[0] + dist.p[1] + dist.p[2] + dist.p[3];
    ASSERT_NEAR(sum, 1.0, 1e-12);

    const double i = mutual_information(dist).value;
    const double c = concurrence(s).value;
    const double h = shannon_total(dist).value;
    ASSERT_GE(i, 0.0);
    ASSERT_LE(i, 1.0);
    ASSERT_GE(c, 0.0);
    ASSERT_LE(c, 1.0);
    ASSERT_GE(h, 0.0);
    ASSERT_LE(h, 2.0);

    const double e = entanglement_from_concurrence(Concurrence{c}).value;
    ASSERT_LE(i, e + 1e-9);
    ASSERT_NEAR(entanglement_partial_trace(s).value, e, 1e-10);
    ASSERT_NEAR(i, oracle::mutual_information_kl(dist.p), 1e-12);

    // Unit-modulus phases leave the outcome probabilities bit-identical.
    const auto& a = s.amplitudes();
    const auto rotated = make_state(a[0] * std::polar(1.0, phase(gen)), a[1], a[2] * std::polar(1.0, phase(gen)),
                                    a[3], Normalize::No);
    const auto d2 = measure(rotated);
    for (int m = 0; m < 4; ++m) {
      // |z e^{i phi}|^2 may differ from |z|^2 by one rounding; compare in ulps.
      ASSERT_NEAR(d2.p[m], dist.p[m], 4 * std::numeric_limits<double>::epsilon());
    }
    ASSERT_EQ(measure(make_state(a[0], a[1] * Amplitude(-1.0), a[2], a[3] * Amplitude(0.0, 1.0), Normalize::No)).p,
              dist.p);
  }
}

TEST_P(StateProperties, PolarFormMatchesComplexConcurrence) {
  if (GetParam()) GTEST_SKIP() << "polar form needs complex phases";
  std::mt19937_64 gen(303);
  for (int k = 0; k < 20000; ++k) {
    const auto s = random_state(gen, false);
    const double theta = std::arg(s.a()) + std::arg(s.d()) - std::arg(s.b()) - std::arg(s.c());
    const double polar =
        concurrence_polar({std::abs(s.a()), std::abs(s.b()), std::abs(s.c()), std::abs(s.d())}, theta).value;
    ASSERT_NEAR(polar, concurrence(s).value, 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(RealAndComplex, StateProperties, ::testing::Bool(),
                         [](const auto& info) { return info.param ? "Real" : "Complex"; });

TEST(Observe, MatchesSeparateCalls) {
  const auto o = observe(phi1());
  EXPECT_EQ(o.c.value, concurrence(phi1()).value);
  EXPECT_EQ(o.i.value, mutual_information(measure(phi1())).value);
}

}  // namespace
}  // namespace qes
