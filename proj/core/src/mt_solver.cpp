#include "sinkless/mt_solver.hpp"

#include "sinkless/errors.hpp"
#include "sinkless/rng.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace sinkless {

namespace {

int ceil_log2(int n) {
    int bits = 0;
    while ((1LL << bits) < n) ++bits;
    return bits;
}

} // namespace

int default_phase_cap(int n) { return 64 * ceil_log2(n + 1) + 64; }

MisResult luby_mis(const SimpleGraph& g, uint64_t seed) {
    const int n = g.node_count();
    std::vector<char> alive(n, 1), in_set(n, 0);
    int alive_count = n;
    MisResult result;
    const int phase_cap = default_phase_cap(n);
    std::vector<uint64_t> prio(n);
    while (alive_count > 0) {
        if (result.phases >= phase_cap)
            throw ResourceError("luby_mis: phase cap " + std::to_string(phase_cap) +
                                " exceeded (statistically unreachable)");
        ++result.phases;
        result.rounds += 2; // exchange priorities, then announce joins
        for (int v = 0; v < n; ++v)
            if (alive[v])
                prio[v] = stream_u64(seed, {rng_tag::luby, static_cast<uint64_t>(result.phases),
                                            static_cast<uint64_t>(v)});
        std::vector<int> joined;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            bool wins = true;
            for (auto [w, e] : g.adjacent(v))
                if (alive[w] && prio[w] >= prio[v]) {
                    wins = false;
                    break;
                }
            if (wins) joined.push_back(v);
        }
        for (int v : joined) {
            in_set[v] = 1;
            alive[v] = 0;
            --alive_count;
        }
        for (int v : joined)
            for (auto [w, e] : g.adjacent(v))
                if (alive[w]) {
                    alive[w] = 0;
                    --alive_count;
                }
    }
    for (int v = 0; v < n; ++v)
        if (in_set[v]) result.set.push_back(v);
    return result;
}

MtResult moser_tardos_solve(const LllInstance& inst, uint64_t seed, int phase_cap) {
    if (phase_cap < 1) throw PreconditionError("moser_tardos_solve: phase_cap must be >= 1");
    MtResult r;
    r.stats.seed = seed;
    r.assignment.value.resize(inst.variable_count());
    for (int x = 0; x < inst.variable_count(); ++x)
        r.assignment.value[x] = static_cast<int>(
            stream_below(seed, {rng_tag::mt_init, static_cast<uint64_t>(x)}, inst.variable(x).domain));

    // Dependencies once; violated-subgraph per phase.
    SimpleGraph dep = dependency_graph(inst);
    std::vector<std::vector<int>> values_of(inst.event_count());
    auto violated_events = [&] {
        std::vector<int> out;
        for (int ev = 0; ev < inst.event_count(); ++ev) {
            auto& vals = values_of[ev];
            vals.clear();
            for (int x : inst.event(ev).vars) vals.push_back(r.assignment.value[x]);
            if (inst.event_occurs(ev, vals)) out.push_back(ev);
        }
        return out;
    };

    while (true) {
        std::vector<int> violated = violated_events();
        if (violated.empty()) {
            r.stats.success = true;
            return r;
        }
        if (r.stats.resample_phases >= phase_cap) {
            r.stats.success = false; // Monte Carlo failure: caller sees the cap in the stats
            return r;
        }
        ++r.stats.resample_phases;
        r.stats.total_rounds += 1; // violation re-evaluation

        // Induced dependency subgraph on the violated events.
        std::vector<int> rank(inst.event_count(), -1);
        for (size_t i = 0; i < violated.size(); ++i) rank[violated[i]] = static_cast<int>(i);
        std::vector<std::pair<int, int>> sub_edges;
        for (auto [a, b] : dep.edges())
            if (rank[a] >= 0 && rank[b] >= 0) sub_edges.emplace_back(rank[a], rank[b]);
        SimpleGraph sub(static_cast<int>(violated.size()), std::move(sub_edges));

        MisResult mis = luby_mis(sub, stream_u64(seed, {rng_tag::luby,
                                                        static_cast<uint64_t>(r.stats.resample_phases)}));
        r.stats.mis_rounds_total += mis.rounds;
        r.stats.total_rounds += mis.rounds;

        // Selected events are independent, so no variable is shared; resample
        // each selected event's variables (asserted below).
        std::vector<char> resampled(inst.variable_count(), 0);
        for (int i : mis.set) {
            int ev = violated[i];
            for (int x : inst.event(ev).vars) {
                if (resampled[x])
                    throw std::logic_error("moser_tardos_solve: selected events share a variable");
                resampled[x] = 1;
                r.assignment.value[x] = static_cast<int>(
                    stream_below(seed,
                                 {rng_tag::mt_resample, static_cast<uint64_t>(r.stats.resample_phases),
                                  static_cast<uint64_t>(x)},
                                 inst.variable(x).domain));
            }
        }
    }
}

void write_stats_json(std::ostream& out, const SolveStats& stats) {
    out << "{\"success\": " << (stats.success ? "true" : "false")
        << ", \"resample_phases\": " << stats.resample_phases
        << ", \"mis_rounds_total\": " << stats.mis_rounds_total
        << ", \"total_rounds\": " << stats.total_rounds << ", \"seed\": " << stats.seed << "}";
}

} // namespace sinkless
