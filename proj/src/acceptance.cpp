#include "holotel/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "holotel/control_manifold.hpp"
#include "holotel/gates.hpp"
#include "holotel/noise.hpp"

namespace holotel {

namespace {

constexpr double kPi = std::numbers::pi;
const double kEpsSlope = -1.5 * (std::numbers::sqrt2 - 1.0);
const double kDeltaSlope = -1.0 / (2.0 * std::numbers::sqrt2);
constexpr double kRoundoffFloor = 1e-10;

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.10g", v);
  return buffer;
}

double relative_error(double measured, double expected) {
  return std::abs(measured - expected) / std::abs(expected);
}

CriterionResult make(std::string expected, std::string measured, std::string tolerance, bool passed) {
  CriterionResult r;
  r.expected = std::move(expected);
  r.measured = std::move(measured);
  r.tolerance = std::move(tolerance);
  r.passed = passed;
  return r;
}

LoopSpec rectangle(CoordinateId u, Interval iu, CoordinateId v, Interval iv,
                   std::vector<std::pair<CoordinateId, double>> fixed, AreaKind kind, int steps) {
  LoopSpec loop;
  loop.n = 2;
  loop.plane = {u, v};
  loop.first = iu;
  loop.second = iv;
  loop.fixed = std::move(fixed);
  loop.kind = kind;
  loop.steps = steps;
  return loop;
}

double fidelity_total(const AcceptanceContext& c, double delta, double eps) {
  return fidelity(delta, eps, c.options).total;
}

CriterionResult ideal_exactness(const AcceptanceContext& c) {
  const ComplexMatrix u = build_teleport(0, 0, c.options.mode, c.options.circuit).circuit(c.options.model);
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const BlochState psi{std::acos(1.0 - 2.0 * unit(rng)), 2.0 * kPi * unit(rng)};
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) worst = std::max(worst, std::abs(branch_amplitude(u, x, y, psi) - 0.5));
    }
  }
  return make("all amplitudes 1/2", "max |amp - 1/2| = " + num(worst), "1e-12", worst <= 1e-12);
}

CriterionResult slope_criterion(const AcceptanceContext& c, Coefficient which, double expected) {
  const double slope = first_order_coeffs(which, c.slope_step, SlopeScheme::forward_richardson, c.options);
  const double rel = relative_error(slope, expected);
  return make(num(expected), num(slope) + " (rel " + num(rel) + ")", "rel 1e-3", rel <= 1e-3);
}

CriterionResult hadamard_equivalence(const AcceptanceContext& c) {
  const double fh = teleported_hadamard_fidelity(0.01, 0.02, c.options).total;
  const double f = fidelity_total(c, 0.01, 0.02);
  const double diff = std::abs(fh - f);
  return make("F_H = F = " + num(f), "F_H = " + num(fh) + " (diff " + num(diff) + ")", "1e-9",
              diff <= 1e-9);
}

CriterionResult cnot_doubling_slopes(const AcceptanceContext& c) {
  double worst = 0.0;
  std::string measured;
  for (Coefficient which : {Coefficient::epsilon, Coefficient::delta}) {
    const double plain = first_order_coeffs(which, c.slope_step, SlopeScheme::forward_richardson, c.options);
    const double doubled = slope_at_origin(
        [&](double d, double e) { return teleported_cnot_fidelity(d, e, c.options).total; }, which,
        c.slope_step, SlopeScheme::forward_richardson);
    const double rel = relative_error(doubled, 2.0 * plain);
    worst = std::max(worst, rel);
    measured += (measured.empty() ? "" : "; ") + to_string(which) + ": " + num(doubled) + " vs 2*" +
                num(plain);
  }
  return make("dF_CN = 2 dF", measured + " (max rel " + num(worst) + ")", "rel 2e-3", worst <= 2e-3);
}

CriterionResult cnot_doubling_values(const AcceptanceContext& c) {
  const double fcn = teleported_cnot_fidelity(1e-3, 1e-3, c.options).total;
  const double f2 = fidelity_total(c, 2e-3, 2e-3);
  const double diff = std::abs(fcn - f2);
  return make("F_CN(1e-3,1e-3) = F(2e-3,2e-3) = " + num(f2),
              num(fcn) + " (diff " + num(diff) + ")", "1e-8", diff <= 1e-8);
}

CriterionResult dissipation_leading_term(const AcceptanceContext& c) {
  double worst = 0.0;
  std::string measured;
  for (double lambda : {0.1, 1.0, 10.0}) {
    const double f = dissipative_fidelity(0, 0, lambda, c.options).total;
    worst = std::max(worst, std::abs(f - 0.5 * (1.0 + std::exp(-lambda))));
    measured += (measured.empty() ? "" : "; ") + num(f);
  }
  return make("(1+e^-l)/2 at l = 0.1, 1, 10", measured + " (max err " + num(worst) + ")", "1e-10",
              worst <= 1e-10);
}

CriterionResult dissipation_slope(const AcceptanceContext& c, Coefficient which) {
  const double loss = -std::expm1(-1.0);
  const double expected =
      which == Coefficient::epsilon
          ? kEpsSlope + loss * (21.0 / 32.0 * std::sqrt(7.0) - 51.0 / 32.0)
          : kDeltaSlope + loss * 3.0 / 16.0 * std::sqrt(1.5);
  const double slope = dissipative_first_order_coeffs(which, 1.0, c.slope_step,
                                                      SlopeScheme::forward_richardson, c.options);
  const double err = std::abs(slope - expected);
  return make(num(expected), num(slope) + " (err " + num(err) + ")", "abs 1e-3", err <= 1e-3);
}

CriterionResult holonomy_closed_forms(const AcceptanceContext& c) {
  const int n = c.holonomy_steps;
  const auto th1 = CoordinateId::theta(1), th2 = CoordinateId::theta(2);
  const auto ph1 = CoordinateId::phi(1), ph2 = CoordinateId::phi(2);
  const std::vector<std::pair<std::string, LoopSpec>> loops = {
      {"C1", rectangle(th1, {0, kPi / 3}, ph1, {0, kPi / 2}, {{th2, 0}, {ph2, 0}},
                       AreaKind::half_solid_angle, n)},
      {"C3", rectangle(th2, {0, kPi / 2}, th1, {0, kPi / 4}, {{ph1, 0}, {ph2, 0}},
                       AreaKind::plane_cosine, n)},
      {"C4", rectangle(th2, {0, kPi / 2}, th1, {0, kPi / 4}, {{ph1, kPi / 2}, {ph2, 0}},
                       AreaKind::plane_cosine, n)},
  };
  bool ok = true;
  std::string measured;
  for (const auto& [family, loop] : loops) {
    const auto closed = closed_form_holonomy(loop);
    if (!closed || closed->family != family) {
      ok = false;
      measured += family + ": no closed form; ";
      continue;
    }
    const HolonomyResult h = holonomy(loop);
    const double dev = max_norm(h.matrix - closed->matrix);
    const double step_change = 0.75 * h.error_estimate;  // ||G_N - G_2N||
    measured += family + " dev " + num(dev) + " |G_N-G_2N| " + num(step_change);
    // Below the floor the N and 2N results agree to rounding and no order is measurable.
    if (step_change > kRoundoffFloor) {
      const double order = measured_convergence_order(loop);
      ok = ok && order >= 1.0;
      measured += " order " + num(order);
    } else {
      measured += " (at rounding floor)";
    }
    ok = ok && dev <= 1e-6;
    measured += "; ";
  }
  measured.resize(measured.size() - 2);
  return make("closed forms, order >= 1", measured, "1e-6", ok);
}

CriterionResult hadamard_synthesis(const AcceptanceContext& c) {
  const HadamardSynthesis s = synthesize_hadamard(c.holonomy_steps);
  const double dev = std::min(s.phase_first_distance, s.phase_last_distance);
  return make("U_H up to phase",
              std::string(s.phase_loop_first ? "phase loop first" : "phase loop last") + ", dev " +
                  num(dev) + " (other order " +
                  num(std::max(s.phase_first_distance, s.phase_last_distance)) + ")",
              "1e-6", dev <= 1e-6);
}

CriterionResult area_sensitivity(const AcceptanceContext& c) {
  const LoopSpec hadamard = hadamard_rotation_loop(c.holonomy_steps);
  const AreaGradient g = area_gradient(hadamard, AreaKind::plane_cosine);
  LoopSpec cnot = hadamard;
  cnot.second = {0.0, kPi / 2};
  const double cn_area = area(cnot, AreaKind::plane_cosine);
  double worst_second_order = 0.0;
  for (double d : {1e-2, 1e-3, -1e-3}) {
    const double sigma = perturbed_area(cnot, AreaKind::plane_cosine, 0.0, d);
    worst_second_order = std::max(worst_second_order, std::abs(sigma - kPi / 2 - d) / (d * d));
  }
  const bool ok = std::abs(g.d_first_hi) <= 1e-12 && std::abs(g.d_second_hi - 1.0) <= 1e-12 &&
                  std::abs(cn_area - kPi / 2) <= 1e-12 && worst_second_order <= 1.0;
  return make("dS/da = 0, dS/db = 1, S_CN(d) = pi/2 + d + O(d^2)",
              "dS/da " + num(g.d_first_hi) + ", dS/db " + num(g.d_second_hi) + ", S_CN " +
                  num(cn_area) + ", max |S_CN(d) - pi/2 - d|/d^2 " + num(worst_second_order),
              "1e-12", ok);
}

CriterionResult squeezed_flux(const AcceptanceContext&) {
  const double x_extent = 1.0;
  LoopSpec loop;
  loop.n = 2;
  loop.plane = {CoordinateId::x(), CoordinateId::r(1)};
  loop.first = {0.0, x_extent};
  loop.second = {0.0, 5.0};
  loop.kind = AreaKind::squeezed_exponential;
  const double change = flux_sensitivity(loop, loop.kind, Edge::second_hi, 0.5);
  const double bound = x_extent * std::exp(-10.0);
  return make("<= " + num(bound), num(change), "bound", change <= bound);
}

CriterionResult entangled_fraction_threshold(const AcceptanceContext&) {
  double worst = 0.0;
  bool above = true;
  std::string measured;
  for (double lambda : {0.5, 2.0, 5.0}) {
    const DensityOperator rho = apply_channel(DensityOperator::pure(epr_pair()), phase_damping(lambda), 2);
    const double f = entangled_fraction(rho);
    worst = std::max(worst, std::abs(f - 0.5 * (1.0 + std::exp(-lambda))));
    above = above && f > 0.5 && optimal_fidelity(f) > 2.0 / 3.0;
    measured += (measured.empty() ? "" : "; ") + num(f) + " -> " + num(optimal_fidelity(f));
  }
  return make("f = (1+e^-l)/2 > 1/2, (2f+1)/3 > 2/3", measured, "1e-12", above && worst <= 1e-12);
}

CriterionResult cross_module(const AcceptanceContext& c) {
  double worst = 0.0;
  for (double d : {0.0, 0.01, 0.02}) {
    for (double e : {0.0, 0.01, 0.02}) {
      const double plain = fidelity_total(c, d, e);
      const double dissipative = dissipative_fidelity(d, e, 0.0, c.options).total;
      worst = std::max(worst, std::abs(plain - dissipative));
    }
  }
  return make("F(d,e,0) = F(d,e)", "max diff " + num(worst), "1e-9", worst <= 1e-9);
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> criteria = {
      {"1", "ideal teleportation exactness", ideal_exactness},
      {"2", "fidelity eps-coefficient",
       [](const AcceptanceContext& c) { return slope_criterion(c, Coefficient::epsilon, kEpsSlope); }},
      {"3", "fidelity delta-coefficient",
       [](const AcceptanceContext& c) { return slope_criterion(c, Coefficient::delta, kDeltaSlope); }},
      {"4", "teleported-H equivalence", hadamard_equivalence},
      {"5a", "teleported-CN slope doubling", cnot_doubling_slopes},
      {"5b", "teleported-CN doubling at finite errors", cnot_doubling_values},
      {"6", "dissipative leading term", dissipation_leading_term},
      {"7", "dissipative eps-slope at lambda=1",
       [](const AcceptanceContext& c) { return dissipation_slope(c, Coefficient::epsilon); }},
      {"8", "dissipative delta-slope at lambda=1",
       [](const AcceptanceContext& c) { return dissipation_slope(c, Coefficient::delta); }},
      {"9", "holonomy engine vs closed forms", holonomy_closed_forms},
      {"10", "Hadamard loop synthesis", hadamard_synthesis},
      {"11", "area sensitivity", area_sensitivity},
      {"12", "squeezed-flux robustness", squeezed_flux},
      {"13", "entangled-fraction threshold", entangled_fraction_threshold},
      {"14", "cross-module consistency", cross_module},
  };
  return criteria;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceContext& context,
                                            const std::vector<std::string>& ids) {
  const auto& all = acceptance_criteria();
  for (const auto& id : ids) {
    if (std::none_of(all.begin(), all.end(), [&](const Criterion& c) { return c.id == id; })) {
      throw std::invalid_argument("unknown criterion '" + id + "'");
    }
  }
  std::vector<CriterionResult> results;
  for (const auto& criterion : all) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), criterion.id) == ids.end()) continue;
    CriterionResult r;
    try {
      r = criterion.run(context);
    } catch (const std::exception& e) {
      r = make("-", std::string("exception: ") + e.what(), "-", false);
    }
    r.id = criterion.id;
    r.title = criterion.title;
    results.push_back(std::move(r));
  }
  return results;
}

void print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << " | expected "
        << r.expected << " | measured " << r.measured << " | tol " << r.tolerance << '\n';
  }
}

}  // namespace holotel
