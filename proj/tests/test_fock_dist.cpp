#include <doctest.h>

#include <cmath>
#include <random>

#include "error.hpp"
#include "fock_dist.hpp"
#include "support.hpp"

using namespace gclone;

TEST_CASE("thermal parameter domain") {
  CHECK(ThermalParams(0.0).beta() == std::numeric_limits<double>::infinity());
  CHECK(ThermalParams(0.5).beta() == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(ThermalParams(1.0), ParameterError);
  CHECK_THROWS_AS(ThermalParams(-0.1), ParameterError);
  CHECK_THROWS_AS(ThermalParams(std::nan("")), ParameterError);
}

TEST_CASE("thermal_distribution examples") {
  const auto vac = thermal_distribution(ThermalParams(0.0), 3);
  CHECK(vac.probs()[0] == 1.0);
  CHECK(vac.probs()[3] == 0.0);
  CHECK(vac.tail_mass() == 0.0);
  CHECK(vac.is_vacuum());

  const auto half = thermal_distribution(ThermalParams(0.5), 3);
  const double expect[] = {0.5, 0.25, 0.125, 0.0625};
  for (std::size_t l = 0; l < 4; ++l) CHECK(half.probs()[l] == expect[l]);
  CHECK(half.tail_mass() == 0.0625);

  const auto long_half = thermal_distribution(ThermalParams(0.5), 60);
  CHECK(long_half.tail_mass() < 1e-18);
  CHECK(long_half.cutoff() == 60);
}

TEST_CASE("thermal_distribution normalization grid") {
  for (int i = 0; i <= 20; ++i) {
    const double s = i == 20 ? 0.99 : 0.05 * i;
    for (std::size_t cutoff : {0u, 5u, 50u, 2000u}) {
      const auto p = thermal_distribution(ThermalParams(s), cutoff);
      double sum = 0.0;
      for (double x : p.probs()) sum += x;
      CHECK(std::abs(sum + p.tail_mass() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("number_state") {
  const auto a = number_state(0, 2);
  CHECK(a.size() == 3);
  CHECK(a.probs()[0] == 1.0);
  const auto b = number_state(2, 4);
  CHECK(b.probs()[2] == 1.0);
  CHECK(b.probs()[0] + b.probs()[1] + b.probs()[3] + b.probs()[4] == 0.0);
  CHECK_THROWS_AS(number_state(3, 2), IndexError);
}

TEST_CASE("DiagonalState invariants") {
  CHECK_THROWS_AS(DiagonalState({0.5, -0.1}), ParameterError);
  CHECK_THROWS_AS(DiagonalState({0.7, 0.7}), ParameterError);
  CHECK_THROWS_AS(DiagonalState({0.5}, -0.1), ParameterError);
  CHECK_THROWS_AS(DiagonalState(std::vector<double>{}), ParameterError);
  CHECK(DiagonalState({0.25, 0.25}).tail_mass() == 0.5);
  CHECK(DiagonalState({0.5, 0.5 + 5e-13}).tail_mass() == 0.0);
}

TEST_CASE("default_cutoff follows the geometric tail") {
  CHECK(default_cutoff(0.0) == 16);
  CHECK(default_cutoff(0.5) >= 16);
  const std::size_t c = default_cutoff(0.99, 1e-12);
  CHECK(std::pow(0.99, static_cast<double>(c + 1)) < 1e-12);
  CHECK(std::pow(0.99, static_cast<double>(c - 1)) >= 1e-12);
}

TEST_CASE("l1_distance examples") {
  const auto p = thermal_distribution(ThermalParams(0.3), 40);
  const auto self = l1_distance(p, p);
  CHECK(self.value == 0.0);
  CHECK(self.uncertainty == 2.0 * p.tail_mass());

  const auto d = l1_distance(number_state(0, 0), thermal_distribution(ThermalParams(0.5), 60));
  CHECK(std::abs(d.value - 1.0) < 1e-17);
  CHECK(d.uncertainty < 1e-18);

  const auto g = l1_distance(thermal_distribution(ThermalParams(0.5), 200), thermal_distribution(ThermalParams(0.75), 200));
  CHECK(std::abs(g.value - 0.625) < 1e-14);
}

TEST_CASE("l1_distance is a metric on random triples") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 1000; ++t) {
    const auto a = test_support::random_law(rng, 1 + t % 9);
    const auto b = test_support::random_law(rng, 1 + (t * 7) % 11);
    const auto c = test_support::random_law(rng, 1 + (t * 3) % 5);
    CHECK(l1_distance(a, b).value == l1_distance(b, a).value);
    CHECK(l1_distance(a, c).value <= l1_distance(a, b).value + l1_distance(b, c).value + 1e-12);
    CHECK(l1_distance(a, a).value == 0.0);
  }
}

// Crossing point found by scanning the two laws rather than by formula.
static double geometric_l1_closed_form(double s, double t) {
  if (s > t) std::swap(s, t);
  int m0 = -1;
  for (int l = 0; l < 100000; ++l) {
    if ((1 - s) * std::pow(s, l) >= (1 - t) * std::pow(t, l)) m0 = l;
    else break;
  }
  return 2.0 * (std::pow(t, m0 + 1) - std::pow(s, m0 + 1));
}

TEST_CASE("geometric l1 matches the crossing closed form") {
  const double pairs[][2] = {{0.0, 0.5}, {0.1, 0.2}, {0.5, 0.75}, {0.3, 0.9}, {0.9, 0.95}, {0.95, 0.6}, {0.2, 0.21}};
  for (const auto& pr : pairs) {
    const std::size_t cutoff =
        static_cast<std::size_t>(std::ceil(50.0 / (1.0 - std::max(pr[0], pr[1])))) * 4;
    const auto d = l1_distance(thermal_distribution(ThermalParams(pr[0]), cutoff),
                               thermal_distribution(ThermalParams(pr[1]), cutoff));
    CAPTURE(pr[0]);
    CAPTURE(pr[1]);
    CHECK(std::abs(d.value - geometric_l1_closed_form(pr[0], pr[1])) < 1e-10);
  }
}

TEST_CASE("cdf examples") {
  const auto g = thermal_distribution(ThermalParams(0.5), 10);
  CHECK(cdf(g, 1) == 0.75);
  CHECK(cdf(number_state(2, 4), 1) == 0.0);
  CHECK(std::abs(cdf(g, 10) - (1.0 - g.tail_mass())) < 1e-15);
  CHECK_THROWS_AS(cdf(g, 11), IndexError);
}

TEST_CASE("stochastic dominance examples") {
  const auto a = thermal_distribution(ThermalParams(0.3), 80);
  const auto b = thermal_distribution(ThermalParams(0.5), 80);
  CHECK(stochastically_dominated(a, b));
  CHECK_FALSE(stochastically_dominated(b, a));
  CHECK(stochastically_dominated(a, a, 0.0));
  CHECK(stochastically_dominated(number_state(0, 3), number_state(3, 3)));
  CHECK_THROWS_AS(stochastically_dominated(a, b, -1.0), ParameterError);
}

TEST_CASE("stochastic dominance is reflexive and transitive on random triples") {
  std::mt19937_64 rng(11);
  int chains = 0;
  for (int t = 0; t < 3000; ++t) {
    // Short supports make comparable pairs common enough to exercise transitivity.
    const auto a = test_support::random_law(rng, 3);
    const auto b = test_support::random_law(rng, 3);
    const auto c = test_support::random_law(rng, 3);
    CHECK(stochastically_dominated(a, a, 0.0));
    if (stochastically_dominated(a, b, 0.0) && stochastically_dominated(b, c, 0.0)) {
      ++chains;
      CHECK(stochastically_dominated(a, c, 0.0));
    }
  }
  CHECK(chains > 50);
}

TEST_CASE("mixture") {
  const DiagonalState parts[] = {number_state(0, 1), number_state(2, 2)};
  const double w[] = {0.25, 0.75};
  const auto m = mixture(w, parts);
  CHECK(m.size() == 3);
  CHECK(m.probs()[0] == 0.25);
  CHECK(m.probs()[2] == 0.75);
}
