#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace holotel {

using Objective = std::function<double(std::span<const double>)>;

struct MinimizeOptions {
  int max_iterations = 500;
  double function_tolerance = 1e-10;  ///< spread of simplex values at convergence
  double size_tolerance = 1e-9;       ///< characteristic simplex size at convergence
  double initial_step = 0.05;
  int restarts = 2;                   ///< re-seeded simplices around the incumbent
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  double simplex_size = 0.0;
  bool converged = false;
  std::string message;
};

/// Nelder-Mead refinement from `start` (GSL nmsimplex2).
MinimizeResult nelder_mead(const Objective& f, std::span<const double> start,
                           const MinimizeOptions& options = {});

/// Bloch-sphere angles (theta in [0, pi], phi in [0, 2 pi)) equivalent to (theta, phi).
std::pair<double, double> canonical_bloch(double theta, double phi);

/// Grid seed over theta in [0, pi] (grid + 1 rows) and phi in [0, 2 pi)
/// followed by Nelder-Mead. The result is canonicalized.
MinimizeResult minimize_bloch(const Objective& f, int grid = 64, const MinimizeOptions& options = {});

/// Sobol seed of `seeds` points in the box [lo, hi], then Nelder-Mead from the
/// best seed. Deterministic.
MinimizeResult minimize_sobol(const Objective& f, std::span<const double> lo,
                              std::span<const double> hi, int seeds = 4096,
                              const MinimizeOptions& options = {});

}  // namespace holotel
