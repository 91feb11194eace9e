#pragma once

#include "lienard/system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lienard::cycles {

/**
 * Displacement-map controls.  flow_tol is the integration tolerance
 * used for every return-map evaluation; it sits two decades below
 * fixed_point_tol so that |d| < fixed_point_tol is resolvable.
 * r_max <= 0 asks for the escape-informed default (see resolve_r_max).
 * threads == 0 defers to LIENARD_THREADS or the hardware count.
 */
struct CycleOptions {
    int n_samples = 64;
    double r_min = 1e-3;
    double r_max = 0.0;
    double flow_tol = 1e-11;
    double fixed_point_tol = 1e-9;
    double signal_floor = 1e-7;   // |d| below this carries no sign evidence
    double tangency_tol = 1e-5;   // |d| below this at an interior extremum
    double t_max = 2000.0;        // time budget per return-map integration
    unsigned threads = 0;
};

enum class SampleStatus { ok, escaped, hit_other_basin };
const char* sample_status_name(SampleStatus s);

/// One radius of the displacement map d(r) = first-return radius - r.
/// escaped also covers orbits that failed to return within the time
/// budget; hit_other_basin marks returns that wound about some other
/// point (swept angle far from one clockwise turn) or converged away.
struct DisplacementSample {
    double r = 0.0;
    double d = 0.0; // meaningful only when status == ok
    SampleStatus status = SampleStatus::ok;
};

struct DisplacementProfile {
    double anchor = 0.0; // x-coordinate of the anti-saddle the ray leaves
    std::vector<DisplacementSample> samples; // radii strictly increasing
};

/**
 * Radius cap for the sample grid: 0.9x the gap to the nearest singular
 * point right of the anchor, or an outward probe (doubling radii until
 * the displacement changes sign or the orbit stops returning) when the
 * anchor is rightmost.
 */
double resolve_r_max(const LienardSystem& sys, double anchor, const CycleOptions& opt = {});

/// Samples d(r) on a log-spaced grid along the +x ray from the anchor.
DisplacementProfile displacement_profile(const LienardSystem& sys, double anchor,
                                         const CycleOptions& opt = {});

enum class Stability { stable, unstable, semi_stable };
const char* stability_name(Stability s);

struct LimitCycle {
    double anchor = 0.0;
    double r_star = 0.0;
    Stability stability = Stability::stable;
    double multiplier_estimate = 1.0; // d'(r_star) + 1 by central secant
};

/**
 * Counts the limit cycles crossing the +x ray from the anchor: sign
 * changes of d between consecutive trustworthy samples are refined by
 * bisection until |d| < fixed_point_tol, and interior |d|-minima below
 * tangency_tol without a sign change are handed to refine_semistable.
 * Requires at least two returning samples.
 */
std::vector<LimitCycle> count_cycles(const LienardSystem& sys, double anchor,
                                     const CycleOptions& opt = {});

/**
 * Golden-section search for the minimum of |d| on [r_lo, r_hi].  A
 * semi-stable cycle is reported iff the refined minimum drops below
 * fixed_point_tol; otherwise the candidate is dismissed.
 */
std::optional<LimitCycle> refine_semistable(const LienardSystem& sys, double anchor, double r_lo,
                                            double r_hi, const CycleOptions& opt = {});

struct AnchorCensus {
    double anchor = 0.0;
    std::vector<LimitCycle> cycles; // ordered by r_star
    bool escaped_anchor = false;    // fewer than two returning samples
    std::string note;               // escape / nesting / alternation diagnostics
};

struct CycleCensus {
    std::vector<AnchorCensus> anchors; // ordered by anchor position
    int cycles_at_origin = 0;
    int cycles_elsewhere = 0;
    bool outer_return = false; // same-sense return beyond the outermost
    std::string outer_note;    // singular point: diagnosed, not counted
};

/// Full count over every anti-saddle, with nesting and stability
/// alternation cross-checks recorded as notes.
CycleCensus census(const LienardSystem& sys, const CycleOptions& opt = {});

} // namespace lienard::cycles

namespace lienard {
using cycles::AnchorCensus;
using cycles::CycleCensus;
using cycles::CycleOptions;
using cycles::DisplacementProfile;
using cycles::DisplacementSample;
using cycles::LimitCycle;
using cycles::SampleStatus;
using cycles::Stability;
using cycles::census;
using cycles::count_cycles;
using cycles::displacement_profile;
using cycles::refine_semistable;
using cycles::resolve_r_max;
using cycles::sample_status_name;
using cycles::stability_name;
} // namespace lienard
