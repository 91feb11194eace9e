#pragma once

#include "lienard/cycles.hpp"
#include "lienard/flow.hpp"
#include "lienard/rotate.hpp"
#include "lienard/singular.hpp"
#include "lienard/system.hpp"

#include <json.hpp>

#include <string>

namespace lienard::json_io {

// nlohmann's map-backed object keeps keys sorted, so a report built
// from the same data serializes to the same bytes on every run.
using nlohmann::json;

// -- system descriptions ----------------------------------------------

/// {"form":"general", "k":…, "l":…, "alpha":[…], "beta":[…]}
json system_to_json(const polysys::LienardSystem& sys);

/// {"form":"canonical", "k":…, "l":…, "alpha_even":[…], "beta_odd":[…],
///  "even_signs":[…]} with signs emitted as +1/-1 integers.
json canonical_to_json(const polysys::CanonicalSystem& c);

/**
 * Reads either description form.  The field group in use decides the
 * form (general: alpha/beta; canonical: alpha_even/beta_odd/even_signs);
 * mixing groups, supplying neither, or a "form" tag that contradicts
 * the fields present is an error.  k and l may be omitted, in which
 * case the coefficient list lengths fix them.  even_signs entries may
 * be +-1 numbers or "+"/"-" strings.  Canonical input is expanded.
 *
 * Throws std::invalid_argument on any malformed description.
 */
polysys::LienardSystem system_from_json(const json& j);

/// The canonical fields without expansion; requires the canonical group.
polysys::CanonicalSystem canonical_from_json(const json& j);

// -- census / displacement options ------------------------------------

/// Keys: samples, r_min, r_max, tol, fixed_point_tol, signal_floor,
/// tangency_tol, t_max, threads.
json options_to_json(const cycles::CycleOptions& opt);

/**
 * Overrides fields of `base` from whichever keys are present.  "tol"
 * names the integration tolerance (flow_tol) and drags fixed_point_tol
 * two decades above it unless that key is itself supplied.  Tolerances
 * must be positive and samples at least 4.
 */
cycles::CycleOptions options_from_json(const json& j, cycles::CycleOptions base = {});

// -- report fragments ---------------------------------------------------

/**
 * Singularity fragment: {"finite":[{x,trace,det,kind,index}…],
 * "infinite":[{axis,kind}…], "ledger":{N,Nf,Nc,C,Np,Cp,balanced},
 * "alternation":"pass"|"fail"|"n/a"}.
 */
json singular_report_json(const polysys::LienardSystem& sys);

/// {"anchors":[{"x":…, "cycles":[{"r","stability","multiplier"}…]}…],
///  "totals":{"origin":…, "others":…}}
json census_to_json(const cycles::CycleCensus& census);

json event_to_json(const rotate::BifurcationEvent& ev);

json sweep_log_to_json(const rotate::SweepLog& log);

json construct_to_json(const rotate::ConstructResult& result);

json certify_to_json(const rotate::CertifyReport& report);

// -- sweep plans --------------------------------------------------------

/**
 * {"template":<system>, "order":[{"slot":"a4","to":1.0,"steps":50},…]}.
 * Each leg's "from" defaults to the template's current slot value and
 * "steps" to 50; an "options" object, when present, feeds
 * options_from_json.  Plan-level validation is left to SweepPlan.
 */
rotate::SweepPlan plan_from_json(const json& j);

/// Inverse of plan_from_json with every default resolved.
json plan_to_json(const rotate::SweepPlan& plan);

// -- bulk CSV -------------------------------------------------------------

/// Header "r,d,status", one row per sample, shortest round-trip floats.
std::string profile_to_csv(const cycles::DisplacementProfile& profile);

/// Header "t,x,y", one row per accepted integration step.
std::string trajectory_to_csv(const flow::Trajectory& traj);

// -- process plumbing ----------------------------------------------------

/// {"error":{"category":…, "message":…}} for machine-readable stderr.
json error_json(const std::string& category, const std::string& message);

/// Parses a JSON file; throws std::invalid_argument naming the path on
/// a missing file or a parse error.
json load_json(const std::string& path);

/// Writes text to a file (creating it); throws std::runtime_error on
/// failure.  An empty path writes to stdout instead.
void save_text(const std::string& path, const std::string& text);

} // namespace lienard::json_io

namespace lienard {
using json_io::canonical_from_json;
using json_io::canonical_to_json;
using json_io::census_to_json;
using json_io::certify_to_json;
using json_io::construct_to_json;
using json_io::error_json;
using json_io::event_to_json;
using json_io::load_json;
using json_io::options_from_json;
using json_io::options_to_json;
using json_io::plan_from_json;
using json_io::plan_to_json;
using json_io::profile_to_csv;
using json_io::save_text;
using json_io::singular_report_json;
using json_io::sweep_log_to_json;
using json_io::system_from_json;
using json_io::system_to_json;
using json_io::trajectory_to_csv;
} // namespace lienard
