#pragma once

#include "sinkless/graph.hpp"
#include "sinkless/problems.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace sinkless {

struct SolveStats {
    int resample_phases = 0;
    int mis_rounds_total = 0;
    int total_rounds = 0;
    bool success = false;
    uint64_t seed = 0;
};

struct MisResult {
    std::vector<int> set; // sorted
    int phases = 0;
    int rounds = 0; // 2 LOCAL rounds per phase
};

// Luby's randomised MIS: each phase every alive node draws a fresh priority
// and joins when it strictly beats all alive neighbours; joined nodes and
// their neighbours drop out. Returns an independent maximal set. The phase
// cap (64*ceil(log2(n+1)) + 64) is statistically unreachable; hitting it
// raises ResourceError.
MisResult luby_mis(const SimpleGraph& g, uint64_t seed);

struct MtResult {
    Assignment assignment;
    SolveStats stats;
};

int default_phase_cap(int n); // 64*ceil(log2(n+1)) + 64

// Distributed Moser-Tardos: sample all variables uniformly; while violated
// events exist, pick an independent set of them with luby_mis on the induced
// dependency subgraph and resample their variables. Round accounting: 2 LOCAL
// rounds per Luby phase plus 1 round of violation re-evaluation per resample
// phase. Deterministic given (instance, seed, phase_cap). Exceeding phase_cap
// returns success = false with the stats so far (Monte Carlo failure).
MtResult moser_tardos_solve(const LllInstance& inst, uint64_t seed, int phase_cap);

// CLI-facing stats record {success, resample_phases, mis_rounds_total,
// total_rounds, seed}.
void write_stats_json(std::ostream& out, const SolveStats& stats);

} // namespace sinkless
