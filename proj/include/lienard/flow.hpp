#pragma once

#include "lienard/system.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace lienard::flow {

/**
 * Integration controls.  tol is a mixed absolute/relative bound on the
 * local error per step (atol = rtol = tol).  r_escape <= 0 requests
 * the default escape radius derived from the singularity layout.
 * t_max may be negative to integrate backward in time.
 */
struct FlowOptions {
    double t_max = 1000.0;
    double tol = 1e-9;
    double r_escape = 0.0;
    double converge_tol = 1e-9; // distance to a singular point that ends the run
    std::size_t max_steps = 20000000;
    bool store_samples = true; // false keeps only the first and last sample
};

enum class Terminal { time_limit, escaped, converged_to_point, event_count_reached };

const char* terminal_name(Terminal t);

struct Sample {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
};

/**
 * Integration record.  Sample times are strictly monotone in the
 * integration direction, one sample per accepted step.  failed marks
 * step-size underflow (or an exhausted step budget); the samples then
 * end at the last valid state.  x_min/x_max track the horizontal
 * extent of the accepted states, cheap enclosure evidence for loops.
 */
struct Trajectory {
    std::vector<Sample> samples;
    Terminal terminal = Terminal::time_limit;
    bool failed = false;
    std::string note;
    double x_min = 0.0;
    double x_max = 0.0;
};

/// 10x the largest singularity magnitude, plus 10.
double default_r_escape(const LienardSystem& sys);

/**
 * Dormand–Prince 5(4) embedded pair with fourth-order dense output.
 * Stops at t_max (time-limit), when |(x,y)| exceeds the escape radius
 * (escaped), or when the state comes within converge_tol of a finite
 * singular point (converged-to-point).
 */
Trajectory integrate(const LienardSystem& sys, double x0, double y0,
                     const FlowOptions& opt = {});

/// Section ray for return maps; for cycle work the origin sits on an
/// anti-saddle and the direction is the +x offset.
struct Ray {
    double ox = 0.0;
    double oy = 0.0;
    double dx = 1.0;
    double dy = 0.0;
};

enum class CrossDirection { same_sense, opposite };

/**
 * One detected crossing of the section ray.  r is the distance from
 * the ray origin along the ray; swept is the branch-tracked angle the
 * trajectory has swept about the ray origin since its start (clockwise
 * orbits accumulate -2π per full turn).
 */
struct RayEvent {
    double t = 0.0;
    double r = 0.0;
    double x = 0.0;
    double y = 0.0;
    double swept = 0.0;
    CrossDirection direction = CrossDirection::same_sense;
};

struct CrossingRun {
    std::vector<RayEvent> events;
    Trajectory trajectory;
};

/**
 * Integrates from (x0, y0) and reports the first `count` same-sense
 * crossings of the ray (full turns: the orbit sweeps the ray with the
 * family's clockwise sense).  Crossing times are refined by bisection
 * on the step's dense output until the signed ray-line miss is below
 * 1e-10.  The run ends early (with fewer events) if the trajectory
 * escapes, converges to a point, or fails.
 */
CrossingRun crossings(const LienardSystem& sys, double x0, double y0, const Ray& ray,
                      int count, const FlowOptions& opt = {});

} // namespace lienard::flow

namespace lienard {
using flow::CrossDirection;
using flow::CrossingRun;
using flow::FlowOptions;
using flow::Ray;
using flow::RayEvent;
using flow::Sample;
using flow::Terminal;
using flow::Trajectory;
using flow::crossings;
using flow::default_r_escape;
using flow::integrate;
using flow::terminal_name;
} // namespace lienard
