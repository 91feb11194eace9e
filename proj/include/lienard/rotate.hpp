#pragma once

#include "lienard/cycles.hpp"
#include "lienard/singular.hpp"
#include "lienard/system.hpp"

#include <string>
#include <vector>

namespace lienard::rotate {

/// Compact slot spelling: "a0", "a2", ... for damping coefficients,
/// "b1", "b3", ... for restoring coefficients.
std::string slot_name(const polysys::ParamSlot& slot);

/// Inverse of slot_name; throws std::invalid_argument on anything else.
polysys::ParamSlot parse_slot(const std::string& name);

/// Reads / writes one coefficient slot; throws std::invalid_argument
/// when the slot does not exist in the given system.
double get_slot(const LienardSystem& sys, const polysys::ParamSlot& slot);
void set_slot(LienardSystem& sys, const polysys::ParamSlot& slot, double value);

enum class EventKind {
    hopf,                  // anchor trace crosses zero, a small cycle is born or dies
    fold,                  // a stable/unstable pair merges and vanishes
    escape_to_separatrix,  // a cycle grows out of its anchor's window before vanishing
};

const char* event_kind_name(EventKind k);

struct BifurcationEvent {
    EventKind kind = EventKind::hopf;
    polysys::ParamSlot slot;
    double param_value = 0.0;
    singular::SingularPoint anchor;
    // hopf: trace residual at the emitted value; fold: radius of the
    // merged pair; escape: last tracked radius before the loss.
    double detail = 0.0;
    int count_before = 0;
    int count_after = 0;
};

/**
 * Scans one coefficient slot for Andronov-Hopf events of the anchor
 * nearest anchor_x: zeros of the anchor's Jacobian trace with positive
 * determinant.  Each zero is isolated by sign bracketing to width 1e-8
 * and then polished (exactly, for damping slots, where the trace is
 * affine in the parameter).  The anchor is re-located at every sample,
 * so restoring-slot scans follow the moving point.  Returns events
 * sorted by parameter value; empty when the trace never crosses.
 */
std::vector<BifurcationEvent> hopf_scan(const LienardSystem& tmpl,
                                        const polysys::ParamSlot& slot, double lo,
                                        double hi, double anchor_x = 0.0);

struct SweepSlot {
    polysys::ParamSlot slot;
    double from = 0.0;
    double to = 0.0;
    int steps = 50;
};

/**
 * A successive-parameter schedule: each slot is swept to its target
 * while all previously swept slots stay at theirs.  Only even damping
 * slots may appear; listed slots must be distinct, and their target
 * signs must alternate starting positive at the highest swept slot.
 */
struct SweepPlan {
    LienardSystem base;
    std::vector<SweepSlot> slots;
    cycles::CycleOptions census_options{};

    void validate() const; // throws std::invalid_argument
};

struct SweepSnapshot {
    polysys::ParamSlot slot;
    double value = 0.0;
    cycles::CycleCensus census;
};

struct SweepLog {
    std::vector<SweepSnapshot> snapshots; // parameter-monotone within each slot
    std::vector<BifurcationEvent> events;
    bool aborted = false;         // census failure mid-sweep; log is partial
    bool monotonicity_ok = true;  // tracked cycles obeyed the rotation direction
    std::string note;
};

/**
 * Replays the plan, recording a census snapshot at every step.  A count
 * change between consecutive snapshots is localized by parameter
 * bisection to width 1e-6 of the slot range and classified: trace zero
 * at the anchor -> hopf (the emitted value is then the polished trace
 * root), a pair lost together -> fold, a single cycle lost away from
 * any trace zero -> escape-to-separatrix.  A jump that still exceeds
 * two at the final bracket width aborts the sweep.  Between snapshots,
 * tracked cycles are checked against the rotation direction (increasing
 * an even damping slot expands stable and contracts unstable cycles);
 * violations clear monotonicity_ok but do not abort.
 */
SweepLog sweep(const SweepPlan& plan);

struct ConstructResult {
    LienardSystem system;
    cycles::CycleCensus census;
    bool achieved = false;
    int attempts = 0;
    std::string note;
};

/**
 * Builds a canonical system whose census reports exactly k cycles at
 * the origin and, when l > 0, l cycles around the other anti-saddles.
 * Restoring slots: odd values from beta_odd (size l), even slot signs
 * from even_signs (size l, entries +1/-1), unit magnitude.
 *
 * The even damping rungs are placed top-down by successive opposition:
 * each rung alpha_{2i} gets the sign that opposes the innermost
 * displacement sign measured with the rungs above already in place, on
 * a geometric magnitude ladder (top 1, ratio 10).  Each placement must
 * add one origin cycle; a shortfall shrinks that rung tenfold.  When
 * l > 0 the top rung is instead solved so the outermost anti-saddle
 * sits just inside its own Hopf window (trace slightly negative), and
 * the window is widened or narrowed when the non-origin count misses.
 * At most 10 censuses are spent; a shortfall is reported honestly in
 * `achieved` and `note`, never padded.
 *
 * k = 0 with l = 0 returns the pure-odd-damping form (alpha_0 = 0).
 */
ConstructResult construct_configuration(int k, int l, const std::vector<double>& beta_odd,
                                        const std::vector<int>& even_signs,
                                        const cycles::CycleOptions& census_options = {});

enum class CertifyVerdict { pass, fail, inconclusive };

const char* certify_verdict_name(CertifyVerdict v);

struct CycleTrack {
    cycles::Stability stability = cycles::Stability::stable;
    std::vector<double> r_by_value; // one entry per certified value until lost
    bool lost = false;
};

struct CertifyReport {
    CertifyVerdict verdict = CertifyVerdict::inconclusive;
    polysys::ParamSlot slot;
    double anchor = 0.0;
    std::vector<double> values;
    std::vector<CycleTrack> tracks;
    std::string note;
};

/**
 * Certifies the rotation direction on live cycles: censuses the anchor
 * at each value, tracks cycles by nearest radius (relative gate 0.3,
 * matching stability), and checks that every tracked stable cycle
 * expands and every unstable cycle contracts as the slot increases
 * (mirrored for decreasing values).  Any violation fails; a cycle lost
 * between values makes the verdict inconclusive (cycle death is legal
 * under rotation); identical consecutive values impose nothing.  The
 * slot must be an even damping slot.
 */
CertifyReport certify_rotation_monotonicity(const LienardSystem& tmpl,
                                            const polysys::ParamSlot& slot,
                                            const std::vector<double>& values,
                                            double anchor = 0.0,
                                            const cycles::CycleOptions& census_options = {});

} // namespace lienard::rotate

namespace lienard {
using rotate::BifurcationEvent;
using rotate::CertifyReport;
using rotate::CertifyVerdict;
using rotate::ConstructResult;
using rotate::CycleTrack;
using rotate::EventKind;
using rotate::SweepLog;
using rotate::SweepPlan;
using rotate::SweepSlot;
using rotate::SweepSnapshot;
using rotate::certify_rotation_monotonicity;
using rotate::certify_verdict_name;
using rotate::construct_configuration;
using rotate::event_kind_name;
using rotate::get_slot;
using rotate::hopf_scan;
using rotate::parse_slot;
using rotate::set_slot;
using rotate::slot_name;
using rotate::sweep;
} // namespace lienard
