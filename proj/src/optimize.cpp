#include "holotel/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

#include <gsl/gsl_multimin.h>
#include <gsl/gsl_qrng.h>

namespace holotel {

namespace {

double trampoline(const gsl_vector* v, void* params) {
  const auto& f = *static_cast<const Objective*>(params);
  const double value = f(std::span<const double>(v->data, v->size));
  return std::isfinite(value) ? value : std::numeric_limits<double>::max();
}

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct QrngDeleter {
  void operator()(gsl_qrng* q) const { gsl_qrng_free(q); }
};

MinimizeResult run_once(const Objective& f, std::span<const double> start, double step,
                        const MinimizeOptions& options) {
  const std::size_t dim = start.size();
  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(dim));
  std::unique_ptr<gsl_vector, VectorDeleter> steps(gsl_vector_alloc(dim));
  for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(x.get(), i, start[i]);
  gsl_vector_set_all(steps.get(), step);

  gsl_multimin_function fn;
  fn.n = dim;
  fn.f = &trampoline;
  fn.params = const_cast<Objective*>(&f);

  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim));
  gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), steps.get());

  MinimizeResult out;
  double previous = gsl_multimin_fminimizer_minimum(m.get());
  int stalled = 0;
  for (out.iterations = 0; out.iterations < options.max_iterations;) {
    ++out.iterations;
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) {
      out.message = "simplex iteration failed";
      break;
    }
    const double current = gsl_multimin_fminimizer_minimum(m.get());
    stalled = std::abs(previous - current) <= options.function_tolerance * 1e-2 ? stalled + 1 : 0;
    previous = current;
    if (gsl_multimin_fminimizer_size(m.get()) <= options.size_tolerance) {
      out.converged = true;
      break;
    }
  }
  out.simplex_size = gsl_multimin_fminimizer_size(m.get());
  out.value = gsl_multimin_fminimizer_minimum(m.get());
  const gsl_vector* best = gsl_multimin_fminimizer_x(m.get());
  out.x.assign(best->data, best->data + dim);
  if (!out.converged && out.message.empty()) {
    // A simplex that stopped improving within the function tolerance counts
    // as converged even if its size is above the size tolerance.
    if (stalled >= 20) {
      out.converged = true;
    } else {
      out.message = "iteration limit reached";
    }
  }
  return out;
}

}  // namespace

MinimizeResult nelder_mead(const Objective& f, std::span<const double> start,
                           const MinimizeOptions& options) {
  if (start.empty()) throw std::invalid_argument("nelder_mead: empty start point");
  MinimizeResult best = run_once(f, start, options.initial_step, options);
  const double start_value = f(start);
  if (start_value < best.value) {
    best.value = start_value;
    best.x.assign(start.begin(), start.end());
  }
  int total_iterations = best.iterations;
  double step = options.initial_step;
  for (int r = 0; r < options.restarts; ++r) {
    step *= 0.1;
    MinimizeResult again = run_once(f, best.x, step, options);
    total_iterations += again.iterations;
    const bool improved = again.value < best.value;
    if (improved) {
      best = std::move(again);
    } else {
      best.converged = best.converged || again.converged;
      best.simplex_size = std::min(best.simplex_size, again.simplex_size);
      if (best.converged) best.message.clear();
      break;
    }
  }
  best.iterations = total_iterations;
  if (best.converged) best.message = "converged";
  return best;
}

std::pair<double, double> canonical_bloch(double theta, double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0) theta += two_pi;
  if (theta > std::numbers::pi) {
    theta = two_pi - theta;
    phi += std::numbers::pi;
  }
  phi = std::fmod(phi, two_pi);
  if (phi < 0) phi += two_pi;
  if (phi >= two_pi) phi -= two_pi;
  return {theta, phi};
}

MinimizeResult minimize_bloch(const Objective& f, int grid, const MinimizeOptions& options) {
  if (grid < 2) throw std::invalid_argument("minimize_bloch: grid must be >= 2");
  double best_value = std::numeric_limits<double>::infinity();
  double seed[2] = {0.0, 0.0};
  for (int i = 0; i <= grid; ++i) {
    const double theta = std::numbers::pi * i / grid;
    for (int j = 0; j < grid; ++j) {
      const double point[2] = {theta, 2.0 * std::numbers::pi * j / grid};
      const double value = f(point);
      if (value < best_value) {
        best_value = value;
        seed[0] = point[0];
        seed[1] = point[1];
      }
    }
  }
  MinimizeOptions local = options;
  local.initial_step = std::min(options.initial_step, std::numbers::pi / grid);
  MinimizeResult result = nelder_mead(f, seed, local);
  const auto [theta, phi] = canonical_bloch(result.x[0], result.x[1]);
  result.x = {theta, phi};
  return result;
}

MinimizeResult minimize_sobol(const Objective& f, std::span<const double> lo,
                              std::span<const double> hi, int seeds,
                              const MinimizeOptions& options) {
  if (lo.size() != hi.size() || lo.empty()) {
    throw std::invalid_argument("minimize_sobol: bounds must be non-empty and of equal size");
  }
  if (lo.size() > 40) throw std::invalid_argument("minimize_sobol: at most 40 dimensions");
  if (seeds < 1) throw std::invalid_argument("minimize_sobol: seeds must be >= 1");
  const std::size_t dim = lo.size();
  std::unique_ptr<gsl_qrng, QrngDeleter> q(gsl_qrng_alloc(gsl_qrng_sobol, static_cast<unsigned>(dim)));
  std::vector<double> u(dim), point(dim), seed(dim);
  double best_value = std::numeric_limits<double>::infinity();
  for (int s = 0; s < seeds; ++s) {
    gsl_qrng_get(q.get(), u.data());
    for (std::size_t k = 0; k < dim; ++k) point[k] = lo[k] + u[k] * (hi[k] - lo[k]);
    const double value = f(point);
    if (value < best_value) {
      best_value = value;
      seed = point;
    }
  }
  return nelder_mead(f, seed, options);
}

}  // namespace holotel
