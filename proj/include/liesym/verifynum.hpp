#pragma once

// Floating-point checks: fixed-step RK4 integration, one-parameter flows of
// generators and the property that symmetries map solutions to solutions.

#include <string>
#include <vector>

#include "liesym/vectorfield.hpp"

namespace liesym {

struct PhasePoint {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> v;
};

struct Trajectory {
  std::vector<PhasePoint> samples;
  double step = 0.0;
  std::string method = "rk4";
  bool truncated = false;      // stopped early at a singularity
  std::string stop_reason;
};

/// Classical RK4 on the first-order form over [t0, t0 + span] in `steps`
/// equal steps. Denominators below `floor` truncate the trajectory.
Trajectory integrate(const OdeSystem& sys, const PhasePoint& init, double span, std::size_t steps,
                     double floor = 1e-12);

/// Cubic Hermite interpolation of the positions from stored velocities.
/// Throws NumericError outside the sampled interval.
std::vector<double> interpolate(const Trajectory& tr, double t);

struct FlowResult {
  PhasePoint point;  // v is filled only by the prolonged flow
  double epsilon = 0.0;
  std::size_t substeps = 0;
};

/// Integrates dt/de = tau, dx/de = eta from 0 to epsilon with RK4.
/// Throws NumericError naming the point where a coefficient is singular.
FlowResult flow(const VectorField& X, const PhasePoint& p, double epsilon, std::size_t substeps = 200);
/// The same with the first extension acting on the velocities.
FlowResult flow_prolonged(const VectorField& X, const PhasePoint& p, double epsilon, std::size_t substeps = 200);

struct MappingOptions {
  double epsilon = 0.3;
  double tol = 1e-6;
  double span = 1.0;
  std::size_t steps = 1000;
  std::size_t flow_substeps = 200;
};

struct MappingReport {
  bool pass = false;
  double max_deviation = 0.0;
  std::size_t compared = 0;
  bool reparametrization_failure = false;
  std::string message;
};

/// Flows every sample of the solution through `init`, integrates a fresh
/// solution from the flowed first sample and compares positions at the
/// flowed times.
MappingReport check_solution_mapping(const OdeSystem& sys, const VectorField& X, const PhasePoint& init,
                                     const MappingOptions& opts = {});

}  // namespace liesym
