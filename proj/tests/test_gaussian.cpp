#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "error.hpp"
#include "gaussian.hpp"
#include "merit.hpp"

using namespace gclone;
using cd = std::complex<double>;

namespace {

const double kSqrt2 = std::sqrt(2.0);

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("displaced_thermal examples") {
  const auto vac = displaced_thermal(0.0, ThermalParams(0.0));
  CHECK(vac.mean().isZero(0));
  CHECK(vac.cov() == 0.5 * Eigen::MatrixXd::Identity(2, 2));

  const auto a = displaced_thermal(cd(1, 0), ThermalParams(0.5));
  CHECK(a.mean()(0) == kSqrt2);
  CHECK(a.mean()(1) == 0.0);
  CHECK(a.cov() == 1.5 * Eigen::MatrixXd::Identity(2, 2));

  const auto b = displaced_thermal(cd(0, 1), ThermalParams(0.0));
  CHECK(b.mean()(1) == kSqrt2);
  CHECK(b.cov() == 0.5 * Eigen::MatrixXd::Identity(2, 2));
}

TEST_CASE("GaussianState validation") {
  CHECK_THROWS_AS(GaussianState(Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Identity(3, 3)), ParameterError);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(2, 2);
  asym(0, 1) = 0.1;
  CHECK_THROWS_AS(GaussianState(Eigen::VectorXd::Zero(2), asym), ParameterError);
  const GaussianState squeezed_too_far(Eigen::VectorXd::Zero(2), 0.1 * Eigen::MatrixXd::Identity(2, 2));
  CHECK_FALSE(squeezed_too_far.is_physical());
  Eigen::MatrixXd sq(2, 2);
  sq << 0.125, 0, 0, 2.0;
  CHECK(GaussianState(Eigen::VectorXd::Zero(2), sq).is_physical());
}

TEST_CASE("fourier maps are orthogonal symplectic") {
  for (std::size_t n = 1; n <= 9; ++n) {
    const auto f = fourier_map(n);
    const Eigen::MatrixXd& s = f.matrix();
    const auto omega = symplectic_form(n);
    CHECK(max_abs(s.transpose() * omega * s - omega) < 1e-12);
    CHECK(max_abs(s.transpose() * s - Eigen::MatrixXd::Identity(2 * n, 2 * n)) < 1e-12);
  }
  CHECK(fourier_map(1).matrix() == Eigen::MatrixXd::Identity(2, 2));
}

TEST_CASE("fourier_map(2) concentrates two equal displacements in mode 0") {
  const cd alpha(0.7, -1.2);
  const GaussianState parts[] = {displaced_thermal(alpha, ThermalParams(0.3)), displaced_thermal(alpha, ThermalParams(0.3))};
  const auto out = fourier_map(2).apply(tensor(parts));
  CHECK(std::abs(out.mean()(0) - kSqrt2 * parts[0].mean()(0)) < 1e-14);
  CHECK(std::abs(out.mean()(1) - kSqrt2 * parts[0].mean()(1)) < 1e-14);
  CHECK(std::abs(out.mean()(2)) < 1e-14);
  CHECK(std::abs(out.mean()(3)) < 1e-14);
  CHECK(max_abs(out.cov() - parts[0].cov()(0, 0) * Eigen::MatrixXd::Identity(4, 4)) < 1e-14);
}

TEST_CASE("symplectic maps") {
  CHECK(beamsplitter().symplectic_residual() < 1e-15);
  for (double g : {1.0, 1.5, 2.0, 7.0}) CHECK(two_mode_squeezer(g).symplectic_residual() < 1e-12);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(SymplecticMap{bad}, ParameterError);
  CHECK_THROWS_AS(two_mode_squeezer(0.5), ParameterError);
}

TEST_CASE("beamsplitter recombination") {
  // Two copies of the same state: the difference port carries vacuum displacement.
  const cd alpha(1.0, 0.5);
  const GaussianState parts[] = {displaced_thermal(alpha, ThermalParams(0.0)), displaced_thermal(alpha, ThermalParams(0.0))};
  const auto out = beamsplitter().apply(tensor(parts));
  CHECK(std::abs(out.mean()(0)) < 1e-15);
  CHECK(std::abs(out.mean()(1)) < 1e-15);
  CHECK(std::abs(out.mean()(2) - 2.0 * alpha.real()) < 1e-14);
  // Applying the inverse recovers the input.
  const SymplecticMap inv(beamsplitter().matrix().transpose());
  const auto back = inv.apply(out);
  CHECK((back.mean() - tensor(parts).mean()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("amplifier_channel examples") {
  const auto amp = amplifier_channel(2.0);
  const auto vac = amp.apply(displaced_thermal(0.0, ThermalParams(0.0)));
  CHECK(max_abs(vac.cov() - 1.5 * Eigen::MatrixXd::Identity(2, 2)) == 0.0);
  CHECK(vac.cov()(0, 0) == wigner_variances(ThermalParams(0.0)).amplified);

  for (double s : {0.1, 0.5, 0.9}) {
    const auto in = displaced_thermal(cd(0.3, 0.4), ThermalParams(s));
    const auto out = amp.apply(in);
    CHECK(out.cov()(0, 0) == 2 * in.cov()(0, 0) + 0.5);
    CHECK(std::abs(out.mean()(0) - kSqrt2 * in.mean()(0)) < 1e-15);
  }

  const auto id = amplifier_channel(1.0);
  const auto in = displaced_thermal(cd(-1, 2), ThermalParams(0.4));
  const auto same = id.apply(in);
  CHECK(same.mean() == in.mean());
  CHECK(same.cov() == in.cov());

  CHECK_THROWS_AS(amplifier_channel(0.9), ParameterError);
  CHECK(amp.complete_positivity_margin() >= -1e-12);
  CHECK(amplifier_channel(3.0, ThermalParams(0.5)).complete_positivity_margin() >= -1e-12);
}

TEST_CASE("channel complete positivity check rejects noiseless amplification") {
  const Eigen::MatrixXd x = kSqrt2 * Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(GaussianChannel(x, Eigen::MatrixXd::Zero(2, 2)), ParameterError);
}

TEST_CASE("squeezer dilation reproduces the amplifier channel") {
  for (double g : {1.5, 2.0, 4.0}) {
    for (double idler_s : {0.0, 0.3}) {
      const auto in = displaced_thermal(cd(0.8, -0.1), ThermalParams(0.6));
      const GaussianState parts[] = {in, displaced_thermal(0.0, ThermalParams(idler_s))};
      const auto joint = two_mode_squeezer(g).apply(tensor(parts));
      const auto dilated = marginal(joint, 0);
      const auto direct = amplifier_channel(g, ThermalParams(idler_s)).apply(in);
      CHECK((dilated.mean() - direct.mean()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(max_abs(dilated.cov() - direct.cov()) < 1e-12);
    }
  }
}

TEST_CASE("marginal") {
  const GaussianState parts[] = {displaced_thermal(cd(1, 0), ThermalParams(0.2)), displaced_thermal(cd(0, 3), ThermalParams(0.7))};
  const auto prod = tensor(parts);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto m = marginal(prod, k);
    CHECK(m.mean() == parts[k].mean());
    CHECK(m.cov() == parts[k].cov());
    CHECK(m.is_physical());
  }
  CHECK_THROWS_AS(marginal(prod, 2), IndexError);
}

TEST_CASE("clone pipeline examples") {
  const cd alpha(0.4, -0.9);
  const auto one = clone_pipeline(1, 1, alpha, ThermalParams(0.35));
  const auto ref = displaced_thermal(alpha, ThermalParams(0.35));
  CHECK((one.mean() - ref.mean()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(max_abs(one.cov() - ref.cov()) < 1e-15);

  const auto two = clone_pipeline(1, 2, cd(1, 0), ThermalParams(0.5));
  for (std::size_t k = 0; k < 2; ++k) {
    const auto m = marginal(two, k);
    CHECK(std::abs(m.mean()(0) - kSqrt2) < 1e-14);
    CHECK(std::abs(m.mean()(1)) < 1e-14);
    CHECK(std::abs(m.cov()(0, 0) - 2.5) < 1e-14);
    CHECK(std::abs(m.cov()(1, 1) - 2.5) < 1e-14);
  }

  const auto four = clone_pipeline(2, 4, 0.0, ThermalParams(0.3));
  const auto first = marginal(four, 0);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto m = marginal(four, k);
    CHECK(m.mean().cwiseAbs().maxCoeff() < 1e-14);
    CHECK(max_abs(m.cov() - first.cov()) < 1e-12);
  }

  CHECK_THROWS_AS(clone_pipeline(3, 2, 0.0, ThermalParams(0.3)), ParameterError);
  CHECK_THROWS_AS(clone_pipeline(0, 2, 0.0, ThermalParams(0.3)), ParameterError);
}

TEST_CASE("clone marginals are identical and physical") {
  const std::pair<std::size_t, std::size_t> shapes[] = {{1, 2}, {2, 3}, {1, 4}, {2, 2}, {3, 7}, {4, 5}};
  for (auto [n, m] : shapes) {
    for (double s : {0.0, 0.45, 0.9}) {
      const auto out = clone_pipeline(n, m, cd(0.6, 1.1), ThermalParams(s));
      CHECK(out.is_physical());
      const auto ref = marginal(out, 0);
      for (std::size_t k = 0; k < m; ++k) {
        const auto mk = marginal(out, k);
        CHECK((mk.mean() - ref.mean()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(max_abs(mk.cov() - ref.cov()) < 1e-12);
        CHECK(std::abs(mk.mean()(0) - kSqrt2 * 0.6) < 1e-12);
        CHECK(std::abs(mk.mean()(1) - kSqrt2 * 1.1) < 1e-12);
      }
    }
  }
}

TEST_CASE("pipeline stages match the manual composition") {
  const cd alpha(1.3, 0.2);
  const ThermalParams s(0.4);
  const auto amplified = amplifier_channel(2.0).apply(displaced_thermal(alpha, s));
  const GaussianState parts[] = {amplified, displaced_thermal(0.0, s)};
  const auto manual = fourier_map(2).apply(tensor(parts));
  const auto piped = clone_pipeline(1, 2, alpha, s);
  CHECK(piped.mean() == manual.mean());
  CHECK(piped.cov() == manual.cov());

  const auto stages = clone_pipeline_stages(1, 2, alpha, s);
  CHECK(stages.amplified.cov() == amplified.cov());
}

TEST_CASE("amplified stage matches the Fock-space output parameter") {
  for (double s : {0.0, 0.25, 0.5, 0.75}) {
    const auto stages = clone_pipeline_stages(1, 2, cd(0.5, 0.5), ThermalParams(s));
    const auto fit = williamson_thermal_parameter(stages.amplified);
    CHECK(std::abs(fit.s_eff - (1 + s) / 2) < 1e-10);
  }
  // General n -> m: the amplified mode carries thermal parameter (G - 1 + s)/G, G = m/n.
  const auto stages = clone_pipeline_stages(2, 3, 0.0, ThermalParams(0.3));
  CHECK(std::abs(williamson_thermal_parameter(stages.amplified).s_eff - (0.5 + 0.3) / 1.5) < 1e-10);
}

TEST_CASE("williamson_thermal_parameter") {
  CHECK(williamson_thermal_parameter(displaced_thermal(0.0, ThermalParams(0.0))).s_eff == 0.0);
  const GaussianState amp(Eigen::VectorXd::Zero(2), 1.5 * Eigen::MatrixXd::Identity(2, 2));
  CHECK(williamson_thermal_parameter(amp).s_eff == doctest::Approx(0.5).epsilon(1e-15));
  for (double s : {0.1, 0.6, 0.95}) {
    const cd alpha(-0.7, 2.2);
    const auto fit = williamson_thermal_parameter(displaced_thermal(alpha, ThermalParams(s)));
    CHECK(std::abs(fit.s_eff - s) < 1e-14);
    CHECK(std::abs(fit.alpha_eff - alpha) < 1e-15);
  }
  Eigen::MatrixXd sq(2, 2);
  sq << 0.25, 0, 0, 1.0;
  CHECK_THROWS_AS(williamson_thermal_parameter(GaussianState(Eigen::VectorXd::Zero(2), sq)), UnsupportedStateError);
  CHECK_THROWS_AS(williamson_thermal_parameter(clone_pipeline(1, 2, 0.0, ThermalParams(0.1))), UnsupportedStateError);
}

TEST_CASE("symplectic eigenvalues") {
  const auto st = clone_pipeline(1, 3, cd(1, 1), ThermalParams(0.2));
  const auto nu = st.symplectic_eigenvalues();
  CHECK(nu.size() == 3);
  CHECK(nu.minCoeff() >= 0.5 - 1e-9);
  const auto th = displaced_thermal(0.0, ThermalParams(0.5)).symplectic_eigenvalues();
  CHECK(th(0) == doctest::Approx(1.5));
}

TEST_CASE("covariance_check") {
  std::vector<cd> ring;
  for (int k = 0; k < 16; ++k) ring.push_back(std::polar(1.0, 2 * M_PI * k / 16));

  const auto amp = amplifier_channel(2.0);
  const auto r1 = covariance_check([&](cd a) { return amp.apply(displaced_thermal(a, ThermalParams(0.3))); }, kSqrt2, ring);
  CHECK(r1.max_mean_residual < 1e-12);
  CHECK(r1.max_cov_residual < 1e-12);
  CHECK(r1.passed());

  const auto r2 = covariance_check([](cd a) { return clone_pipeline(1, 2, a, ThermalParams(0.3)); }, 1.0, ring);
  CHECK(r2.passed());

  const auto r3 = covariance_check([](cd a) { return displaced_thermal(a, ThermalParams(0.6)); }, 1.0, ring);
  CHECK(r3.max_mean_residual == 0.0);
  CHECK(r3.max_cov_residual == 0.0);

  // A channel that forgets the displacement fails.
  const auto r4 = covariance_check([](cd) { return displaced_thermal(0.0, ThermalParams(0.6)); }, 1.0, ring);
  CHECK_FALSE(r4.passed());
}
