#include "lienard/cycles.hpp"

#include "lienard/flow.hpp"
#include "lienard/singular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>
#include <utility>

namespace lienard::cycles {

namespace {

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("LIENARD_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) {
            return static_cast<unsigned>(parsed);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Deterministic parallel map: indices are partitioned into blocks and
/// every result lands in its own slot, so the thread count never
/// changes the assembled output.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (n == 0) {
        return;
    }
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(n, std::max(1u, threads)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) {
                fn(i);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
}

struct RawSample {
    DisplacementSample sample;
    double x_min = 0.0; // leftmost reach of the return loop
    flow::Terminal terminal = flow::Terminal::event_count_reached;
};

/**
 * Whether the far field traps every orbit: the restoring tail pulls
 * inward (positive leading even restoring slot, or none) and the
 * highest-degree damping term either vanishes or dissipates (even
 * degree, negative coefficient).  Trapped systems have no escaping
 * orbits, so their radius guard must sit far beyond any loop: a
 * strongly pumped return legitimately overshoots its section offset by
 * orders of magnitude before the far field turns it around.  Systems
 * that can genuinely lose orbits keep a tight guard so blowouts are
 * recognized within a single turn.
 */
bool far_field_trapped(const LienardSystem& sys) {
    if (!sys.beta.empty() && sys.beta.back() <= 0.0) {
        return false; // repelling restoring tail
    }
    for (std::size_t i = sys.alpha.size(); i-- > 0;) {
        if (sys.alpha[i] != 0.0) {
            return i % 2 == 0 && sys.alpha[i] < 0.0;
        }
    }
    return true; // no damping at all: time-reversible, every orbit closed
}

/// Magnitude of the outermost damping root; zero when the damping never
/// changes sign.  Return loops stretch out to the scale of this root,
/// so radius guards and probe ceilings must be measured against it.
double damping_reach(const LienardSystem& sys) {
    bool has_damping = false;
    for (double a : sys.alpha) {
        has_damping = has_damping || a != 0.0;
    }
    double reach = 0.0;
    if (has_damping) {
        for (double root : real_roots(sys.damping())) {
            reach = std::max(reach, std::abs(root));
        }
    }
    return reach;
}

RawSample eval_displacement_raw(const LienardSystem& sys, double anchor, double r,
                                const CycleOptions& opt) {
    flow::FlowOptions fo;
    fo.t_max = opt.t_max;
    fo.tol = opt.flow_tol;
    fo.r_escape = far_field_trapped(sys)
                      ? 1e7 * (1.0 + std::abs(anchor) + r)
                      : std::max({flow::default_r_escape(sys),
                                  3.0 * (std::abs(anchor) + r) + 10.0,
                                  10.0 * (1.0 + damping_reach(sys))});
    fo.store_samples = false;

    flow::Ray ray;
    ray.ox = anchor;
    const auto run = flow::crossings(sys, anchor + r, 0.0, ray, 1, fo);

    RawSample out;
    out.x_min = run.trajectory.x_min;
    out.terminal = run.trajectory.terminal;
    DisplacementSample& s = out.sample;
    s.r = r;
    if (run.events.size() == 1) {
        const auto& ev = run.events.front();
        if (std::abs(ev.swept + 2.0 * M_PI) < M_PI) {
            s.status = SampleStatus::ok;
            s.d = ev.r - r;
        } else {
            s.status = SampleStatus::hit_other_basin;
        }
    } else if (run.trajectory.terminal == flow::Terminal::converged_to_point) {
        // Falling into the anchor itself (a node absorbs orbits without
        // winding) means the return simply never happens; only landing
        // on some other point marks a foreign basin.
        const auto& last = run.trajectory.samples.back();
        const bool onto_anchor = std::hypot(last.x - anchor, last.y) < 1e-6;
        s.status = onto_anchor ? SampleStatus::escaped : SampleStatus::hit_other_basin;
    } else {
        s.status = SampleStatus::escaped;
    }
    return out;
}

struct ClassifiedSample {
    DisplacementSample sample;
    bool blowout = false; // escape by radius, not by running out the clock
};

ClassifiedSample eval_classified(const LienardSystem& sys, double anchor, double r,
                                 const CycleOptions& opt) {
    auto raw = eval_displacement_raw(sys, anchor, r, opt);
    if (raw.sample.status == SampleStatus::ok) {
        // A loop reaching past a singular point left of the anchor has
        // swallowed structure no single-anchor cycle may enclose (the
        // enclosed index sum must stay +1), so it is not local.
        for (const auto& p : singular::find_finite_singularities(sys)) {
            if (p.x < anchor - 1e-12 && raw.x_min < p.x - 1e-9) {
                raw.sample.status = SampleStatus::hit_other_basin;
                break;
            }
        }
    }
    ClassifiedSample out;
    out.sample = raw.sample;
    out.blowout = raw.sample.status == SampleStatus::escaped &&
                  raw.terminal == flow::Terminal::escaped;
    return out;
}

DisplacementSample eval_displacement(const LienardSystem& sys, double anchor, double r,
                                     const CycleOptions& opt) {
    return eval_classified(sys, anchor, r, opt).sample;
}

double central_slope(const LienardSystem& sys, double anchor, double r_star,
                     const CycleOptions& opt, double fallback) {
    const double delta = std::max(1e-3 * r_star, 1e-4);
    if (r_star - delta <= 0.0) {
        return fallback;
    }
    const auto lo = eval_displacement(sys, anchor, r_star - delta, opt);
    const auto hi = eval_displacement(sys, anchor, r_star + delta, opt);
    if (lo.status != SampleStatus::ok || hi.status != SampleStatus::ok) {
        return fallback;
    }
    return (hi.d - lo.d) / (2.0 * delta);
}

LimitCycle bisect_root(const LienardSystem& sys, double anchor, DisplacementSample lo,
                       DisplacementSample hi, const CycleOptions& opt) {
    double r_star = 0.5 * (lo.r + hi.r);
    for (int iter = 0; iter < 80; ++iter) {
        r_star = 0.5 * (lo.r + hi.r);
        if (hi.r - lo.r < 1e-13 * std::max(1.0, r_star)) {
            break;
        }
        auto mid = eval_displacement(sys, anchor, r_star, opt);
        if (mid.status != SampleStatus::ok) {
            // Grazing a basin boundary mid-bracket; probe off-center once.
            r_star = lo.r + 0.45 * (hi.r - lo.r);
            mid = eval_displacement(sys, anchor, r_star, opt);
            if (mid.status != SampleStatus::ok) {
                break;
            }
        }
        if (std::abs(mid.d) < opt.fixed_point_tol) {
            break;
        }
        if ((mid.d < 0.0) == (lo.d < 0.0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    LimitCycle cyc;
    cyc.anchor = anchor;
    cyc.r_star = r_star;
    cyc.stability = lo.d > 0.0 ? Stability::stable : Stability::unstable;
    const double fallback = (hi.d - lo.d) / std::max(hi.r - lo.r, 1e-300);
    cyc.multiplier_estimate = 1.0 + central_slope(sys, anchor, r_star, opt, fallback);
    return cyc;
}

LimitCycle bisect_escape_boundary(const LienardSystem& sys, double anchor,
                                  DisplacementSample lo, double r_out,
                                  const CycleOptions& opt) {
    // Between a returning inward sample and the escaping region lies the
    // basin boundary of infinity: an unstable cycle whose outer flank
    // blows past the guard radius within a single loop.
    double hi = r_out;
    double r_star = 0.5 * (lo.r + hi);
    for (int iter = 0; iter < 80; ++iter) {
        r_star = 0.5 * (lo.r + hi);
        if (hi - lo.r < 1e-13 * std::max(1.0, r_star)) {
            break;
        }
        auto mid = eval_classified(sys, anchor, r_star, opt);
        if (mid.sample.status == SampleStatus::ok && mid.sample.d < 0.0) {
            lo = mid.sample;
        } else if (mid.blowout ||
                   (mid.sample.status == SampleStatus::ok && mid.sample.d > 0.0)) {
            hi = r_star;
        } else {
            // Timeout or foreign basin: no sign evidence either way.
            break;
        }
    }

    LimitCycle cyc;
    cyc.anchor = anchor;
    cyc.r_star = r_star;
    cyc.stability = Stability::unstable;
    const double fallback = (0.0 - lo.d) / std::max(r_star - lo.r, 1e-300);
    cyc.multiplier_estimate = 1.0 + central_slope(sys, anchor, r_star, opt, fallback);
    return cyc;
}

std::vector<double> log_grid(double r_min, double r_max, int n) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n));
    const double la = std::log(r_min);
    const double lb = std::log(r_max);
    for (int i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        grid.push_back(std::exp(la + f * (lb - la)));
    }
    return grid;
}

std::vector<LimitCycle> analyze_profile(const LienardSystem& sys,
                                        const DisplacementProfile& profile,
                                        const CycleOptions& opt) {
    std::vector<DisplacementSample> ok;
    for (const auto& s : profile.samples) {
        if (s.status == SampleStatus::ok) {
            ok.push_back(s);
        }
    }
    if (ok.size() < 2) {
        throw std::domain_error("cycles: fewer than two returning displacement samples");
    }

    // Samples below the signal floor carry no sign evidence.
    std::vector<DisplacementSample> trusted;
    for (const auto& s : ok) {
        if (std::abs(s.d) >= opt.signal_floor) {
            trusted.push_back(s);
        }
    }

    std::vector<LimitCycle> found;
    for (std::size_t i = 0; i + 1 < trusted.size(); ++i) {
        if (trusted[i].d * trusted[i + 1].d < 0.0) {
            found.push_back(bisect_root(sys, profile.anchor, trusted[i], trusted[i + 1], opt));
        }
    }

    // An inward-returning tail that gives way to escapes still brackets a
    // cycle: the last orbit that comes back separates the anchor's basin
    // from infinity. Fires only when no trusted sample lies beyond.
    if (!trusted.empty() && trusted.back().d < 0.0) {
        const double r_last = trusted.back().r;
        double r_esc = 0.0;
        bool blocked = false;
        for (const auto& s : profile.samples) {
            if (s.r <= r_last) {
                continue;
            }
            if (s.status == SampleStatus::escaped) {
                r_esc = s.r;
                break;
            }
            if (s.status == SampleStatus::hit_other_basin) {
                blocked = true;
                break;
            }
        }
        if (r_esc > 0.0 && !blocked &&
            eval_classified(sys, profile.anchor, r_esc, opt).blowout) {
            found.push_back(
                bisect_escape_boundary(sys, profile.anchor, trusted.back(), r_esc, opt));
        }
    }

    // Interior |d| minima without a sign change: tangency candidates.
    for (std::size_t i = 1; i + 1 < ok.size(); ++i) {
        const double dm = ok[i - 1].d, d0 = ok[i].d, dp = ok[i + 1].d;
        const bool flanks_trusted =
            std::abs(dm) >= opt.signal_floor && std::abs(dp) >= opt.signal_floor;
        const bool same_side = dm * dp > 0.0;
        const bool dip = std::abs(d0) <= std::abs(dm) && std::abs(d0) <= std::abs(dp);
        // Below the signal floor the dip's own sign is noise, not a flip.
        const bool no_flip = std::abs(d0) < opt.signal_floor || dm * d0 > 0.0;
        if (flanks_trusted && same_side && dip && std::abs(d0) < opt.tangency_tol && no_flip) {
            if (auto semi = refine_semistable(sys, profile.anchor, ok[i - 1].r, ok[i + 1].r, opt)) {
                found.push_back(*semi);
            }
        }
    }

    std::sort(found.begin(), found.end(),
              [](const LimitCycle& a, const LimitCycle& b) { return a.r_star < b.r_star; });

    // Merge refinements that collapsed onto the same fixed point.
    std::vector<LimitCycle> unique;
    for (const auto& c : found) {
        if (!unique.empty() &&
            c.r_star - unique.back().r_star <= 10.0 * opt.fixed_point_tol) {
            continue;
        }
        unique.push_back(c);
    }
    return unique;
}

double probe_outward(const LienardSystem& sys, double anchor, const CycleOptions& opt) {
    // The innermost displacement sign follows the anchor trace, so the
    // first probe radius already past a sign flip still yields a tight
    // cap. Traceless anchors fall back to the first measured sign.
    const double trace = sys.jacobian_on_axis(anchor).first;
    int inner_sign = std::abs(trace) > 1e-8 ? (trace > 0.0 ? 1 : -1) : 0;

    // A cycle's loop integral of the damping vanishes, so every cycle
    // reaches across a damping sign change; its section radius tracks
    // the outermost damping root.  Probing past that scale buys nothing.
    const double ceiling =
        std::min(std::max(150.0, 3.0 * damping_reach(sys) + 10.0), 1e4);

    double radius = 4.0;
    for (int iter = 0; iter < 60 && radius <= ceiling; ++iter) {
        const auto s = eval_displacement(sys, anchor, radius, opt);
        if (s.status != SampleStatus::ok) {
            return std::max(0.95 * radius, 2.0 * opt.r_min);
        }
        const int sign =
            std::abs(s.d) >= opt.signal_floor ? (s.d > 0.0 ? 1 : -1) : 0;
        if (inner_sign == 0) {
            inner_sign = sign;
        } else if (sign != 0 && sign != inner_sign) {
            return 1.2 * radius;
        }
        // An outward displacement reports the landing radius of its own
        // return loop; overstepping that lands beyond a strongly
        // attracting cycle in a couple of probes instead of creeping.
        radius = sign > 0 ? std::max(2.0 * radius, radius + 1.5 * s.d) : 2.0 * radius;
    }
    return 150.0;
}

} // namespace

const char* sample_status_name(SampleStatus s) {
    switch (s) {
    case SampleStatus::ok:
        return "ok";
    case SampleStatus::escaped:
        return "escaped";
    case SampleStatus::hit_other_basin:
        return "hit-other-basin";
    }
    return "unknown";
}

const char* stability_name(Stability s) {
    switch (s) {
    case Stability::stable:
        return "stable";
    case Stability::unstable:
        return "unstable";
    case Stability::semi_stable:
        return "semi-stable";
    }
    return "unknown";
}

double resolve_r_max(const LienardSystem& sys, double anchor, const CycleOptions& opt) {
    if (opt.r_max > 0.0) {
        return opt.r_max;
    }
    double right_gap = 0.0;
    for (const auto& p : singular::find_finite_singularities(sys)) {
        if (p.x > anchor + 1e-12) {
            const double gap = p.x - anchor;
            if (right_gap == 0.0 || gap < right_gap) {
                right_gap = gap;
            }
        }
    }
    double r_max = right_gap > 0.0 ? 0.9 * right_gap : probe_outward(sys, anchor, opt);
    return std::max(r_max, 2.0 * opt.r_min);
}

DisplacementProfile displacement_profile(const LienardSystem& sys, double anchor,
                                         const CycleOptions& opt) {
    if (!(opt.r_min > 0.0) || opt.n_samples < 2) {
        throw std::invalid_argument("cycles: need r_min > 0 and at least two samples");
    }
    const double r_max = resolve_r_max(sys, anchor, opt);
    const auto grid = log_grid(opt.r_min, r_max, opt.n_samples);

    DisplacementProfile profile;
    profile.anchor = anchor;
    profile.samples.resize(grid.size());
    parallel_for(grid.size(), resolve_threads(opt.threads), [&](std::size_t i) {
        profile.samples[i] = eval_displacement(sys, anchor, grid[i], opt);
    });
    return profile;
}

std::vector<LimitCycle> count_cycles(const LienardSystem& sys, double anchor,
                                     const CycleOptions& opt) {
    return analyze_profile(sys, displacement_profile(sys, anchor, opt), opt);
}

std::optional<LimitCycle> refine_semistable(const LienardSystem& sys, double anchor, double r_lo,
                                            double r_hi, const CycleOptions& opt) {
    if (!(0.0 < r_lo && r_lo < r_hi)) {
        throw std::invalid_argument("cycles: bad semi-stable bracket");
    }
    constexpr double kGolden = 0.6180339887498949;
    auto magnitude = [&](double r) {
        const auto s = eval_displacement(sys, anchor, r, opt);
        return s.status == SampleStatus::ok ? std::abs(s.d)
                                            : std::numeric_limits<double>::infinity();
    };

    double a = r_lo, b = r_hi;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = magnitude(c);
    double fd = magnitude(d);
    for (int iter = 0; iter < 80 && b - a > 1e-10 * std::max(1.0, b); ++iter) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = magnitude(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = magnitude(d);
        }
    }
    const double r_star = fc < fd ? c : d;
    const double best = std::min(fc, fd);
    if (!(best < opt.fixed_point_tol)) {
        return std::nullopt;
    }

    LimitCycle cyc;
    cyc.anchor = anchor;
    cyc.r_star = r_star;
    cyc.stability = Stability::semi_stable;
    cyc.multiplier_estimate = 1.0 + central_slope(sys, anchor, r_star, opt, 0.0);
    return cyc;
}

CycleCensus census(const LienardSystem& sys, const CycleOptions& opt) {
    const auto points = singular::find_finite_singularities(sys);

    CycleCensus out;
    for (const auto& p : points) {
        if (!singular::is_anti_saddle(p.kind)) {
            continue;
        }
        AnchorCensus entry;
        entry.anchor = p.x;

        const auto profile = displacement_profile(sys, p.x, opt);
        std::size_t ok_count = 0;
        for (const auto& s : profile.samples) {
            ok_count += s.status == SampleStatus::ok ? 1 : 0;
        }
        if (ok_count < 2) {
            entry.escaped_anchor = true;
            entry.note = "displacement samples did not return";
        } else {
            entry.cycles = analyze_profile(sys, profile, opt);

            for (std::size_t i = 1; i < entry.cycles.size(); ++i) {
                const auto& prev = entry.cycles[i - 1];
                const auto& cur = entry.cycles[i];
                if (cur.r_star - prev.r_star <= 10.0 * opt.fixed_point_tol) {
                    entry.note += (entry.note.empty() ? "" : "; ");
                    entry.note += "nesting gap below resolution";
                }
                const bool semi = prev.stability == Stability::semi_stable ||
                                  cur.stability == Stability::semi_stable;
                if (!semi && cur.stability == prev.stability) {
                    entry.note += (entry.note.empty() ? "" : "; ");
                    entry.note += "stability alternation violated";
                }
            }
        }
        out.anchors.push_back(std::move(entry));
    }

    std::sort(out.anchors.begin(), out.anchors.end(),
              [](const AnchorCensus& a, const AnchorCensus& b) { return a.anchor < b.anchor; });

    for (const auto& a : out.anchors) {
        const int n = static_cast<int>(a.cycles.size());
        if (std::abs(a.anchor) < 1e-9) {
            out.cycles_at_origin += n;
        } else {
            out.cycles_elsewhere += n;
        }
    }

    // Diagnostic probe for a surrounding return: a same-sense loop from
    // the rightmost anti-saddle reaching left of every singular point
    // encloses the entire finite structure.  Reported, never counted.
    if (points.size() >= 2) {
        double x_left = points.front().x;
        double x_right = points.front().x;
        double rightmost_anchor = 0.0;
        bool have_anchor = false;
        for (const auto& p : points) {
            x_left = std::min(x_left, p.x);
            x_right = std::max(x_right, p.x);
            if (singular::is_anti_saddle(p.kind)) {
                rightmost_anchor = std::max(rightmost_anchor, p.x);
                have_anchor = true;
            }
        }
        const double inner = std::max(2.0 * opt.r_min, 1.05 * (x_right - rightmost_anchor));
        const double outer = 0.9 * flow::default_r_escape(sys) - std::abs(rightmost_anchor);
        if (have_anchor && outer > inner) {
            for (const double r : log_grid(inner, outer, 16)) {
                const auto raw = eval_displacement_raw(sys, rightmost_anchor, r, opt);
                if (raw.sample.status == SampleStatus::ok && raw.x_min < x_left - 1e-9) {
                    out.outer_return = true;
                    out.outer_note = "same-sense return enclosing every singular point";
                    break;
                }
            }
        }
    }
    return out;
}

} // namespace lienard::cycles
