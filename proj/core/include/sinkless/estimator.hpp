#pragma once

#include "sinkless/problems.hpp"
#include "sinkless/table.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace sinkless {

// Measurement result for one event site. Exact values are rationals with a
// power-of-two denominator (2^enumerated bits). Flagged-tie runs count as
// event occurrences, and tie_mass is the exact probability that a tie was
// flagged at all, so  value - tie_mass <= Pr[event, ties resolved] <= value.
struct ProbEstimate {
    enum class Kind { exact, monte_carlo };
    Kind kind = Kind::exact;
    Rational value;      // exact probability, or hits/samples for MC
    double ci_low = 0;   // two-sided Hoeffding bounds at confidence 1-delta (MC only)
    double ci_high = 0;
    Rational tie_mass;   // exact (or estimated) tie probability included in value
    uint64_t samples = 0;
    uint64_t seed = 0;
    double delta = 0;
};

struct EstimatorOptions {
    int max_region_bits = 24; // exact-enumeration budget
    int jobs = 1;             // worker threads over tape-space chunks
};

// Pr[B(u) = psi(e) = B(v)] for a node-rooted colour table, exact by
// enumerating all tape assignments on N^t(u) u N^t(v). Needs girth > 2t+1.
ProbEstimate exact_forbidden_probability(const AlgorithmTable& table, const EdgeColouredGraph& g,
                                         int edge_index, const EstimatorOptions& opts = {});

// Pr[every incident edge points inward or ties] for an edge algorithm,
// exact over N^t(u). Needs girth > 2t+1.
ProbEstimate exact_sink_probability(const EdgeAlgorithm& alg, const EdgeColouredGraph& g, int node,
                                    const EstimatorOptions& opts = {});

// Pr[E_v] of an explicit LLL event: bad tuples / domain size, exact.
ProbEstimate exact_instance_event_probability(const LllInstance& inst, int event_index);

// Monte Carlo counterparts: seeded independent draws, Hoeffding half-width
// sqrt(ln(2/delta) / (2*samples)).
ProbEstimate mc_forbidden_probability(const AlgorithmTable& table, const EdgeColouredGraph& g,
                                      int edge_index, uint64_t samples, uint64_t seed, double delta = 0.01);
ProbEstimate mc_sink_probability(const EdgeAlgorithm& alg, const EdgeColouredGraph& g, int node,
                                 uint64_t samples, uint64_t seed, double delta = 0.01);
ProbEstimate mc_instance_event_probability(const LllInstance& inst, int event_index, uint64_t samples,
                                           uint64_t seed, double delta = 0.01);

double hoeffding_half_width(uint64_t samples, double delta);

// A sub-tape fixing specific nodes' words.
struct SubTape {
    std::vector<int> nodes;
    std::vector<uint64_t> words;
};

enum class EventKind { forbidden_at_edge, sink_at_node };

// Pr[event | fixed] by enumerating only the free region. fixed.nodes and
// free_nodes must partition the event's access region (N^t(u) u N^t(v) for
// forbidden edges, N^t(u) for sinks). Exact rational; ties count as
// occurrences.
Rational conditional_event_probability(const AlgorithmTable& node_table, const EdgeColouredGraph& g,
                                       int edge_index, const SubTape& fixed,
                                       const std::vector<int>& free_nodes,
                                       const EstimatorOptions& opts = {});
Rational conditional_event_probability(const EdgeAlgorithm& alg, const EdgeColouredGraph& g, int node,
                                       const SubTape& fixed, const std::vector<int>& free_nodes,
                                       const EstimatorOptions& opts = {});

// Access region of an event (sorted node ids): what the conditional
// operations expect to be partitioned.
std::vector<int> event_region(const AlgorithmTable& node_table, const EdgeColouredGraph& g, int edge_index);
std::vector<int> event_region(const EdgeAlgorithm& alg, const EdgeColouredGraph& g, int node);

// CSV row per the external interface:
// site_kind,site_id,kind,num,den_or_estimate,ci_low,ci_high,tie_mass_num,tie_mass_den,samples,seed
void write_estimate_csv_header(std::ostream& out);
void write_estimate_csv_row(std::ostream& out, const std::string& site_kind, int site_id,
                            const ProbEstimate& e);

} // namespace sinkless
