#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hessian_oracle.hpp"
#include "radeig/operators.hpp"

namespace radeig {
namespace {

Eigen::VectorXd random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  Eigen::VectorXd e(n);
  for (int i = 0; i < n; ++i) e(i) = nd(rng);
  return e / e.norm();
}

std::vector<EllipticOperator> catalog() {
  return {EllipticOperator::pucci(PucciSign::minus, 1.0, 2.0, 0.0),
          EllipticOperator::pucci(PucciSign::plus, 0.5, 3.0, 0.7),
          EllipticOperator::pucci(PucciSign::minus, 1.0, 2.0, -0.4),
          EllipticOperator::laplacian(),
          EllipticOperator::p_laplacian(3.0),
          EllipticOperator::p_laplacian(1.5),
          EllipticOperator::anisotropic(1.0, 2.0, 3.0, 0.5, RadialProfile::polynomial({1.2, 0.5}),
                                        RadialProfile::constant(0.6), 1.0),
          EllipticOperator::anisotropic(1.0, 1.5, 2.0, -0.5, RadialProfile::constant(1.0),
                                        RadialProfile::polynomial({0.3, 0.4}), 1.0)};
}

TEST(PucciExtremal, SpecExamples) {
  const std::vector<EigenvalueBlock> pos{{1.0, 2}};
  EXPECT_DOUBLE_EQ(pucci_extremal(pos, 1.0, 2.0, PucciSign::minus), 2.0);
  const std::vector<EigenvalueBlock> mixed{{1.0, 1}, {-1.0, 1}};
  EXPECT_DOUBLE_EQ(pucci_extremal(mixed, 1.0, 2.0, PucciSign::minus), -1.0);
  EXPECT_DOUBLE_EQ(pucci_extremal(mixed, 1.0, 2.0, PucciSign::plus), 1.0);
}

TEST(PucciExtremal, ExponentialAgainstCartesianHessian) {
  const double k = 1.0, r = 1.0;
  const auto f = [k](const Eigen::VectorXd& x) { return std::exp(-k * x.norm()); };
  Eigen::VectorXd x(2);
  x << r / std::sqrt(2.0), r / std::sqrt(2.0);
  const double expected = oracle::pucci(oracle::fd_hessian(f, x), 1.0, 2.0, PucciSign::minus);
  const auto eigs = radial_hessian_eigs(-k * std::exp(-k * r), k * k * std::exp(-k * r), r, 2);
  const double got = pucci_extremal(eigs, 1.0, 2.0, PucciSign::minus);
  EXPECT_NEAR(got, -std::exp(-1.0), 1e-12);
  EXPECT_NEAR(got, expected, 1e-6);
}

TEST(RadialHessianEigs, SpecExamples) {
  auto e = radial_hessian_eigs(1.0, 2.0, 0.5, 3);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_DOUBLE_EQ(e[0].value, 2.0);
  EXPECT_EQ(e[0].multiplicity, 1);
  EXPECT_DOUBLE_EQ(e[1].value, 2.0);
  EXPECT_EQ(e[1].multiplicity, 2);

  e = radial_hessian_eigs(-2.0 * std::exp(-2.0), 4.0 * std::exp(-2.0), 1.0, 2);
  EXPECT_DOUBLE_EQ(e[0].value, 4.0 * std::exp(-2.0));
  EXPECT_DOUBLE_EQ(e[1].value, -2.0 * std::exp(-2.0));

  e = radial_hessian_eigs(1.0, 0.0, 1.0, 4);
  EXPECT_DOUBLE_EQ(e[0].value, 0.0);
  EXPECT_DOUBLE_EQ(e[1].value, 1.0);
  EXPECT_EQ(e[1].multiplicity, 3);
}

TEST(RadialHessianEigs, MatchesFiniteDifferenceHessianOfNorm) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  x(0) = 1.0;
  const Eigen::MatrixXd H =
      oracle::fd_hessian([](const Eigen::VectorXd& y) { return y.norm(); }, x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  EXPECT_NEAR(es.eigenvalues()(0), 0.0, 1e-6);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(es.eigenvalues()(i), 1.0, 1e-6);
}

TEST(RadialHessianEigs, RejectsOrigin) {
  EXPECT_THROW(radial_hessian_eigs(0.0, 1.0, 0.0, 2), std::invalid_argument);
}

TEST(EvalF, SpecExamples) {
  EXPECT_NEAR(eval_radial_F(EllipticOperator::laplacian(), 2, 0.5, 1.0, 2.0), 4.0, 1e-14);
  EXPECT_NEAR(eval_radial_F(EllipticOperator::p_laplacian(4.0), 3, 1.0, 1.0, 0.0), 2.0, 1e-14);
  const auto op = EllipticOperator::pucci(PucciSign::minus, 1.0, 2.0, 1.0);
  const double e1 = std::exp(-1.0);
  EXPECT_NEAR(eval_radial_F(op, 2, 1.0, -e1, e1), -std::exp(-2.0), 1e-14);
}

TEST(EvalF, MatchesMatrixDefinitionForEveryKind) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ur(0.05, 1.0), ud(-3.0, 3.0);
  for (const auto& op : catalog()) {
    for (int dim = 1; dim <= 4; ++dim) {
      for (int s = 0; s < 200; ++s) {
        const double r = ur(rng), u2 = ud(rng);
        double u1 = ud(rng);
        if (std::abs(u1) < 0.05) u1 = 0.5;
        const auto cart = oracle::radial_to_cartesian(random_unit(rng, dim), r, u1, u2);
        const double expected = oracle::F(op, cart, r);
        const double got = eval_radial_F(op, dim, r, u1, u2);
        ASSERT_NEAR(got, expected, 1e-10 * (1.0 + std::abs(expected)))
            << to_string(op.kind()) << " N=" << dim << " r=" << r << " u1=" << u1 << " u2=" << u2;
      }
    }
  }
}

TEST(EvalG, SpecExamples) {
  const auto lap = EllipticOperator::laplacian();
  const CoefficientField c1 = CoefficientField::zero_order(RadialProfile::constant(-1.0));
  EXPECT_DOUBLE_EQ(eval_radial_G(lap, 2, c1, 0.3, 1.0, 0.0, 0.0, 0.0), -1.0);
  const auto p4 = EllipticOperator::p_laplacian(4.0);
  EXPECT_DOUBLE_EQ(eval_radial_G(p4, 2, c1, 0.3, 2.0, 0.0, 0.0, 0.0), -8.0);
  const CoefficientField drift{RadialProfile::constant(1.0), RadialProfile{}, RadialProfile{}};
  EXPECT_NEAR(eval_radial_G(lap, 2, drift, 0.5, 0.25, 1.0, 2.0, 0.0), 5.0, 1e-14);
}

TEST(EvalG, DriftAgainstCartesianFiniteDifferences) {
  // u = |x|^2 at r = 0.5 in R^2: Laplacian 4, b.Du = b_r * 2r.
  const auto u = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
  Eigen::VectorXd x(2);
  x << 0.3, 0.4;
  const double lap = oracle::fd_hessian(u, x).trace();
  const CoefficientField drift{RadialProfile::constant(1.0), RadialProfile{}, RadialProfile{}};
  EXPECT_NEAR(eval_radial_G(EllipticOperator::laplacian(), 2, drift, 0.5, 0.25, 1.0, 2.0, 0.0),
              lap + 1.0, 1e-6);
}

TEST(SignedPower, OddAndFinite) {
  EXPECT_DOUBLE_EQ(signed_power(-2.0, 2.0), -8.0);
  EXPECT_DOUBLE_EQ(signed_power(2.0, 0.5), std::pow(2.0, 1.5));
  EXPECT_DOUBLE_EQ(signed_power(-2.0, 0.5), -std::pow(2.0, 1.5));
  EXPECT_DOUBLE_EQ(signed_power(0.0, -0.5), 0.0);
}

TEST(Factories, ValidateInvariants) {
  EXPECT_THROW(EllipticOperator::pucci(PucciSign::minus, 0.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(EllipticOperator::pucci(PucciSign::minus, 2.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(EllipticOperator::pucci(PucciSign::minus, 1.0, 1.0, -1.0), std::invalid_argument);
  EXPECT_THROW(EllipticOperator::p_laplacian(1.0), std::invalid_argument);
  EXPECT_DOUBLE_EQ(EllipticOperator::p_laplacian(3.5).alpha(), 1.5);
  EXPECT_THROW(EllipticOperator::anisotropic(1.0, 2.0, 3.0, 0.5, RadialProfile::constant(3.0),
                                             RadialProfile::constant(0.1), 1.0),
               std::invalid_argument);
  EXPECT_THROW(EllipticOperator::anisotropic(1.0, 2.0, 3.0, 0.5, RadialProfile::constant(1.0),
                                             RadialProfile::constant(1.5), 1.0),
               std::invalid_argument);
  EXPECT_THROW(EllipticOperator::anisotropic(1.0, 2.0, 3.0, -1.0, RadialProfile::constant(1.0),
                                             RadialProfile::constant(0.1), 1.0),
               std::invalid_argument);
  EXPECT_THROW(EllipticOperator::laplacian().with_regularity({0.5, 1.0, 0.0, 0.0}),
               std::invalid_argument);
  EXPECT_NO_THROW(EllipticOperator::laplacian().with_regularity({0.75, 1.0, 1.0, 1.0}));
}

TEST(StructureConditions, HomogeneityAndEllipticityHoldForCatalog) {
  for (const auto& op : catalog()) {
    for (int dim : {1, 2, 3}) {
      const auto h = check_homogeneity(op, dim, 2000, 5);
      EXPECT_TRUE(h.passed()) << to_string(op.kind()) << " N=" << dim << " "
                              << (h.failures.empty() ? "" : h.failures.front().detail);
      const auto e = check_ellipticity(op, dim, 2000, 5);
      EXPECT_TRUE(e.passed()) << to_string(op.kind()) << " N=" << dim << " "
                              << (e.failures.empty() ? "" : e.failures.front().detail);
    }
  }
}

TEST(StructureConditions, DeterministicForSeed) {
  const auto op = EllipticOperator::p_laplacian(3.0);
  const auto a = check_homogeneity(op, 2, 500, 42);
  const auto b = check_homogeneity(op, 2, 500, 42);
  EXPECT_EQ(a.checked, b.checked);
  EXPECT_EQ(a.skipped, b.skipped);
  EXPECT_EQ(a.max_rel_error, b.max_rel_error);
}

TEST(StructureConditions, HomogeneityByHand) {
  // p = 3, t = -2, mu = 3: F(t p, mu X) = |t| mu F(p, X).
  const auto op = EllipticOperator::p_laplacian(3.0);
  const RadialJet base{0.4, 0.7, -1.3, 0.7 / 0.4};
  const RadialJet scaled{0.4, -2.0 * 0.7, 3.0 * -1.3, 3.0 * 0.7 / 0.4};
  EXPECT_NEAR(eval_F(op, 2, scaled), 2.0 * 3.0 * eval_F(op, 2, base), 1e-12);
}

TEST(StructureConditions, ReportsSkippedSamplesInFloor) {
  const auto op = EllipticOperator::pucci(PucciSign::minus, 1.0, 2.0, 0.5).with_gradient_floor(0.5);
  const auto h = check_homogeneity(op, 2, 500, 3);
  EXPECT_GT(h.skipped, 0);
  EXPECT_TRUE(h.passed());
}

TEST(HolderQuotient, LinearProfile) {
  const std::vector<double> r{0.0, 0.1, 0.4, 1.0};
  EXPECT_NEAR(holder_quotient(RadialProfile::polynomial({0.0, 2.0}), r, 1.0), 2.0, 1e-12);
  EXPECT_THROW(holder_quotient(RadialProfile::constant(1.0), r, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace radeig
