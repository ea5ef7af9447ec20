#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "manufactured.hpp"
#include "radeig/solver.hpp"

namespace radeig {
namespace {

CoefficientField zero_order(double c) { return CoefficientField::zero_order(RadialProfile::constant(c)); }

TEST(Residual, ConstantSolutions) {
  const RadialGrid g(1.0, 2, 41);
  const auto r1 = residual(EllipticOperator::laplacian(), zero_order(-1.0), 0.0,
                           RadialProfile::constant(-1.0), GridFunction(g, 1.0));
  EXPECT_EQ(r1.sup_norm(), 0.0);
  const auto r2 = residual(EllipticOperator::p_laplacian(4.0), zero_order(-1.0), 0.0,
                           RadialProfile::constant(-8.0), GridFunction(g, 2.0));
  EXPECT_EQ(r2.sup_norm(), 0.0);
}

TEST(Residual, QuadraticGivesTwoN) {
  for (int dim : {1, 2, 3}) {
    const RadialGrid g(1.0, dim, 41);
    const auto u = GridFunction::sample(g, [](double r) { return r * r; });
    const auto res = residual(EllipticOperator::laplacian(), zero_order(0.0), 0.0, RadialProfile{}, u);
    for (int i = 1; i + 1 < g.size(); ++i) EXPECT_NEAR(res[i], 2.0 * dim, 1e-8) << "i=" << i;
  }
}

TEST(SolveNeumann, ConstantSolution) {
  const RadialGrid g(1.0, 2, 101);
  const auto rep = solve_neumann(EllipticOperator::laplacian(), zero_order(-1.0), 0.0,
                                 RadialProfile::constant(-1.0), g);
  ASSERT_TRUE(rep.converged);
  for (int i = 0; i < g.size(); ++i) EXPECT_NEAR(rep.solution[i], 1.0, 1e-9);
}

TEST(SolveNeumann, ManufacturedSecondOrder) {
  using testing::Manufactured;
  for (auto kind : {Manufactured::laplacian, Manufactured::p_laplacian3}) {
    const double e1 = testing::manufactured_error(kind, 2, 101);
    const double e2 = testing::manufactured_error(kind, 2, 201);
    EXPECT_GE(e1 / e2, 3.5);
    EXPECT_LE(e1 / e2, 4.5);
  }
}

TEST(SolveNeumann, PucciBarrierBound) {
  const RadialGrid g(1.0, 2, 201);
  const auto rep = solve_neumann(EllipticOperator::pucci(PucciSign::minus, 1.0, 2.0, 0.0),
                                 zero_order(-2.0), 0.5, RadialProfile::constant(-3.0), g);
  ASSERT_TRUE(rep.converged);
  EXPECT_LE(rep.solution.sup_norm(), 2.0 + 1e-8);
  EXPECT_TRUE(rep.within_barrier);
  EXPECT_LE(rep.solution.sup_norm(), rep.barrier_bound);
}

TEST(SolveNeumann, ReportInvariants) {
  const RadialGrid g(1.0, 3, 101);
  const auto cf = CoefficientField{RadialProfile::constant(0.5), RadialProfile::polynomial({-2.0, 1.0}),
                                   RadialProfile{}};
  const auto g_rhs = RadialProfile([](double r) { return std::sin(4.0 * r); }, "sin");
  for (double alpha : {0.0, 0.5, 1.0}) {
    SolveOptions o;
    o.tol = 1e-10;
    const auto rep = solve_neumann(EllipticOperator::pucci(PucciSign::plus, 1.0, 3.0, alpha), cf,
                                   0.2, g_rhs, g, o);
    ASSERT_TRUE(rep.converged) << "alpha=" << alpha;
    EXPECT_FALSE(rep.bound_violation);
    EXPECT_LE(rep.residual_sup, rep.tolerance);
    EXPECT_GE(rep.tolerance, o.tol * rep.residual_scale);
    EXPECT_LE(rep.tolerance, 1e3 * o.tol * rep.residual_scale);
    if (alpha == 0.0) {
      // For alpha > 0 the solver regularizes |u'|^alpha with a larger floor.
      const auto res = residual(EllipticOperator::pucci(PucciSign::plus, 1.0, 3.0, alpha), cf, 0.2,
                                g_rhs, rep.solution);
      EXPECT_NEAR(res.sup_norm(), rep.residual_sup, 1e-12);
    }
  }
}

TEST(SolveNeumann, UniqueFromRandomStarts) {
  const auto op = EllipticOperator::pucci(PucciSign::minus, 1.0, 2.0, 0.5);
  const auto cf = CoefficientField::zero_order(RadialProfile::polynomial({-2.0, 1.0}));
  const RadialGrid g(1.0, 2, 201);
  const auto rhs = RadialProfile([](double r) { return std::sin(3.0 * r); }, "sin");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  std::vector<GridFunction> sols;
  for (int k = 0; k < 3; ++k) {
    std::vector<double> v(201);
    for (double& x : v) x = U(rng);
    SolveOptions o;
    o.initial_guess = GridFunction(g, v);
    const auto rep = solve_neumann(op, cf, 0.3, rhs, g, o);
    ASSERT_TRUE(rep.converged);
    sols.push_back(rep.solution);
  }
  for (int i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(sols[0][i], sols[1][i], 2e-9);
    EXPECT_NEAR(sols[0][i], sols[2][i], 2e-9);
  }
}

TEST(SolveNeumann, PreconditionListsNodes) {
  const RadialGrid g(1.0, 2, 11);
  try {
    solve_neumann(EllipticOperator::laplacian(), zero_order(-1.0), 1.0, RadialProfile{}, g);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("r="), std::string::npos) << e.what();
  }
}

TEST(SolveNeumann, BoundViolationReported) {
  const RadialGrid g(1.0, 2, 41);
  SolveOptions o;
  o.u_max = 10.0;
  const auto rep = solve_neumann(EllipticOperator::laplacian(), zero_order(-1e-3), 0.0,
                                 RadialProfile::constant(-1.0), g, o);
  EXPECT_TRUE(rep.bound_violation);
  EXPECT_FALSE(rep.converged);
}

TEST(MonotoneIteration, ConstantLimitAndMonotone) {
  const RadialGrid g(1.0, 2, 101);
  const auto rep = monotone_iteration(EllipticOperator::laplacian(), zero_order(-1.0), 0.0,
                                      RadialProfile::constant(-1.0), g);
  ASSERT_EQ(rep.verdict, IterationVerdict::converged);
  EXPECT_TRUE(rep.all_monotone());
  for (int i = 0; i < g.size(); ++i) EXPECT_NEAR(rep.final_iterate[i], 1.0, 1e-6);
}

TEST(MonotoneIteration, HalfShiftConvergesToTwo) {
  const RadialGrid g(1.0, 2, 101);
  const auto rep = monotone_iteration(EllipticOperator::laplacian(), zero_order(-1.0), 0.5,
                                      RadialProfile::constant(-1.0), g);
  ASSERT_EQ(rep.verdict, IterationVerdict::converged);
  EXPECT_TRUE(rep.all_monotone());
  for (int i = 0; i < g.size(); ++i) EXPECT_NEAR(rep.final_iterate[i], 2.0, 1e-6);
  for (std::size_t n = 1; n < rep.sup_norms.size(); ++n)
    EXPECT_GE(rep.sup_norms[n], rep.sup_norms[n - 1]);
}

TEST(MonotoneIteration, UnboundedAboveThreshold) {
  const RadialGrid g(1.0, 2, 101);
  const auto rep = monotone_iteration(EllipticOperator::laplacian(), zero_order(0.0), 0.5,
                                      RadialProfile::constant(-1.0), g);
  EXPECT_EQ(rep.verdict, IterationVerdict::unbounded);
  if (rep.certificate == IterationCertificate::none) {
    EXPECT_GT(rep.sup_norms.back(), 1e6);
  }
}

TEST(MonotoneIteration, MirrorRunIsNonincreasing) {
  const RadialGrid g(1.0, 2, 101);
  const auto rep = monotone_iteration(EllipticOperator::laplacian(), zero_order(-1.0), 0.5,
                                      RadialProfile::constant(1.0), g);
  ASSERT_EQ(rep.verdict, IterationVerdict::converged);
  EXPECT_EQ(rep.direction, -1);
  EXPECT_TRUE(rep.all_monotone());
  for (int i = 0; i < g.size(); ++i) EXPECT_NEAR(rep.final_iterate[i], -2.0, 1e-6);
}

TEST(MonotoneIteration, RejectsSignChangingRhs) {
  const RadialGrid g(1.0, 2, 21);
  EXPECT_THROW(monotone_iteration(EllipticOperator::laplacian(), zero_order(-1.0), 0.0,
                                  RadialProfile::polynomial({1.0, -2.0}), g),
               std::invalid_argument);
}

TEST(MonotoneIteration, UnboundedVerdictImpliesThresholdWithoutCertificates) {
  const RadialGrid g(1.0, 1, 31);
  IterationOptions o;
  o.u_max = 1e3;
  const auto rep = monotone_iteration(EllipticOperator::laplacian(), zero_order(0.0), 0.5,
                                      RadialProfile::constant(-1.0), g, o);
  ASSERT_EQ(rep.verdict, IterationVerdict::unbounded);
  EXPECT_EQ(rep.certificate, IterationCertificate::none);
  EXPECT_GT(rep.sup_norms.back(), o.u_max);
}

}  // namespace
}  // namespace radeig
