#include "radeig/serialize.hpp"

#include <cmath>

namespace radeig {

namespace {

// JSON has no infinities; non-finite values become null.
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const EllipticOperator& op) {
  Json j;
  j["kind"] = to_string(op.kind());
  j["a"] = num(op.a());
  j["A"] = num(op.A());
  j["alpha"] = num(op.alpha());
  if (op.kind() == OperatorKind::p_laplacian) j["p"] = num(op.p());
  if (op.kind() == OperatorKind::anisotropic) {
    j["c0"] = num(op.c0());
    j["b1"] = op.b1().description();
    j["b2"] = op.b2().description();
  }
  j["gradient_floor"] = num(op.gradient_floor());
  const auto [lo, hi] = op.ellipticity_constants();
  j["ellipticity"] = {num(lo), num(hi)};
  if (const auto& m = op.regularity())
    j["regularity"] = {{"theta", m->theta}, {"nu", m->nu}, {"c1", m->c1}, {"c2", m->c2}};
  return j;
}

Json to_json(const SupersolutionParams& p) {
  Json j;
  j["N"] = p.dim;
  j["a"] = num(p.a);
  j["A"] = num(p.A);
  j["alpha"] = num(p.alpha);
  j["R"] = num(p.R);
  j["rho"] = num(p.rho);
  j["eps"] = num(p.eps);
  j["eps_prime"] = num(p.eps_prime);
  j["k"] = num(p.k);
  j["beta1"] = num(p.beta1);
  j["beta2"] = num(p.beta2);
  j["E"] = num(p.E);
  j["C"] = num(p.C);
  j["D"] = num(p.D);
  return j;
}

Json to_json(const Certificate& c) {
  Json j;
  j["params"] = to_json(c.params);
  j["m1"] = num(c.m1);
  j["m2"] = num(c.m2);
  j["m3"] = num(c.m3);
  j["grid_margin"] = num(c.grid_margin);
  j["integral_c"] = num(c.integral_c);
  j["min_v"] = num(c.min_v);
  j["positive"] = c.positive;
  j["band_ok"] = c.band_ok;
  j["verdict"] = c.accept ? "accept" : "reject";
  j["lambda_lower_bound"] = num(c.lambda_lower_bound());
  j["reasons"] = c.reasons;
  return j;
}

Json to_json(const SolveReport& r) {
  Json j;
  j["converged"] = r.converged;
  j["residual_sup"] = num(r.residual_sup);
  j["residual_scale"] = num(r.residual_scale);
  j["tolerance"] = num(r.tolerance);
  j["iterations"] = r.iterations;
  j["dt"] = num(r.dt);
  j["bound_violation"] = r.bound_violation;
  j["barrier_bound"] = num(r.barrier_bound);
  j["within_barrier"] = r.within_barrier;
  j["sup_norm"] = num(r.solution.sup_norm());
  j["nodes"] = r.solution.size();
  return j;
}

Json to_json(const IterationReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["certificate"] = to_string(r.certificate);
  j["direction"] = r.direction;
  j["steps"] = r.steps();
  j["all_monotone"] = r.all_monotone();
  j["growth_factor"] = num(r.growth_factor);
  j["final_sup_norm"] = num(r.final_iterate.sup_norm());
  Json norms = Json::array();
  for (double s : r.sup_norms) norms.push_back(num(s));
  j["sup_norms"] = std::move(norms);
  return j;
}

Json to_json(const EigenEstimate& e) {
  Json j;
  j["sign"] = to_string(e.sign);
  j["lambda_lo"] = num(e.lambda_lo);
  j["lambda_hi"] = num(e.lambda_hi);
  j["lambda_mid"] = num(e.midpoint());
  j["bracket_width"] = num(e.bracket_width);
  j["c_sup"] = num(e.c_sup);
  j["probes"] = e.probes;
  j["residual_sup"] = num(e.residual_sup);
  j["residual_within_tol"] = e.residual_within_tol;
  return j;
}

Json to_json(const EigenfunctionReport& e) {
  Json j;
  j["residual_sup"] = num(e.residual_sup);
  j["within_tol"] = e.within_tol;
  j["amplitude"] = num(e.amplitude);
  return j;
}

Json to_json(const GeneralSolveReport& r) {
  Json j = to_json(r.result);
  j["eigen_floor"] = num(r.eigen_floor);
  j["sandwich_ok"] = r.sandwich_ok;
  j["iteration"] = to_json(r.iteration);
  return j;
}

Json to_json(const PropertyReport& r) {
  Json j;
  j["property"] = r.property;
  j["kind"] = r.kind;
  j["samples"] = r.samples;
  j["checked"] = r.checked;
  j["skipped"] = r.skipped;
  j["max_rel_error"] = num(r.max_rel_error);
  j["passed"] = r.passed();
  Json fails = Json::array();
  for (const PropertyFailure& f : r.failures) {
    fails.push_back({{"r", f.jet.r},
                     {"u1", f.jet.u1},
                     {"u2", f.jet.u2},
                     {"tangential", f.jet.tangential},
                     {"lhs", num(f.lhs)},
                     {"rhs", num(f.rhs)},
                     {"detail", f.detail}});
  }
  j["failures"] = std::move(fails);
  return j;
}

}  // namespace radeig
