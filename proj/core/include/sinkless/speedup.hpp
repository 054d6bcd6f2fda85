#pragma once

#include "sinkless/estimator.hpp"
#include "sinkless/rational.hpp"
#include "sinkless/table.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace sinkless {

// Thresholds driving the two table transformations. Stored as the exact
// rationals whose cube / fourth power dominates the measured failure
// probabilities: K is the dyadic round-up of p^(1/3) (floored at the
// conditional-probability grain 2^(-R*2^t) so that "probability >= K" still
// means "positive" when p = 0), L the round-up of l^(1/4) (floored at 2^-32).
struct SpeedupConfig {
    Rational K;
    Rational L;
};

Rational threshold_from_cube(const Rational& p, int radius, int bits_per_node);
Rational threshold_from_fourth(const Rational& ell);

// ---- building blocks (3-regular, edge-3-coloured; tables over R-bit tapes) --

// Colours c with Pr[B(root) = c | edge-ball tape of the incident colour-c
// edge] >= K, as a 3-bit mask. node_ball_key packs the full radius-t ball of
// the node; the per-colour membership reads only the colour-c edge-ball bits.
int candidate_colours(const AlgorithmTable& B, const Rational& K, uint64_t node_ball_key);

// Membership of one colour, as a function of the radius-t edge-ball tape
// alone (side = which endpoint's candidacy, 0 = the side-0 root).
bool colour_is_candidate(const AlgorithmTable& B, const Rational& K, int root_colour, int side,
                         uint64_t edge_ball_key);

// Pr[B(u) = root_colour = B(v) | edge-ball tape], exact. The collision
// threshold K^2 separates edge tapes the analysis can use from those it
// cannot.
Rational collision_probability(const AlgorithmTable& B, int root_colour, uint64_t edge_ball_key);

// Pr[C(u) = empty | radius-(t-1) ball tape], exact.
Rational prob_candidate_set_empty(const AlgorithmTable& B, const Rational& K, uint64_t own_ball_key);

// Sinkless colouring -> sinkless orientation at the same radius: orient
// toward the side missing the edge colour from its candidate set; when both
// or neither side holds it, orient toward the lexicographically smaller side
// tape, flagging mirror-symmetric tapes as ties.
EdgeAlgorithm colouring_to_orientation(const AlgorithmTable& B, const Rational& K);

// Pr[edge points toward the side-`side` root, or ties | that endpoint's
// radius-(t-1) ball tape], exact; this is the inward-candidacy primitive.
Rational prob_inward_or_tie(const EdgeAlgorithm& Bp, int root_colour, int side, uint64_t own_ball_key);

// Colours whose inward-or-tie probability given the node's radius-(t-1) ball
// is at most L, as a 3-bit mask.
int inward_candidate_colours(const EdgeAlgorithm& Bp, const Rational& L, uint64_t own_ball_key);

// Pr[colour root_colour is an inward candidate of both endpoints |
// radius-(t-1) edge-ball tape], exact. For radius-1 algorithms the
// conditioning region is empty and key 0 is the only fixing.
Rational prob_both_inward_candidates(const EdgeAlgorithm& Bp, const Rational& L, int root_colour,
                                     uint64_t small_edge_ball_key);

// Pr[all three incident edges point inward or tie | radius-(t-1) ball tape],
// exact (the niceness quantity for the reverse direction).
Rational sink_prob_given_own_ball(const EdgeAlgorithm& Bp, uint64_t own_ball_key);

// Sinkless orientation at radius t -> sinkless colouring at radius t-1:
// output the smallest inward-candidate colour, or 0 when there is none.
AlgorithmTable orientation_to_colouring(const EdgeAlgorithm& Bp, const Rational& L);

// ---- measurement on a host graph -------------------------------------------

struct Measured {
    Rational value;    // max over sites, ties counted as failures
    Rational tie_mass; // max over sites of the exact tie probability
};

// Max over edges of the exact forbidden-configuration probability of a node
// table (host girth > 2t+1).
Measured measure_max_forbidden(const AlgorithmTable& B, const EdgeColouredGraph& host,
                               const EstimatorOptions& opts = {});

// Max over nodes of the exact sink-or-tie probability of an edge algorithm.
Measured measure_max_sink(const EdgeAlgorithm& Bp, const EdgeColouredGraph& host,
                          const EstimatorOptions& opts = {});

// ---- the combined step and the iterated driver ------------------------------

struct SpeedupStep {
    EdgeAlgorithm orientation_alg;  // B' at radius t
    AlgorithmTable colouring_alg;   // B'' at radius t-1
    SpeedupConfig config;
    Rational p_in;                  // measured input failure probability
    Rational bound;                 // round-up of 4*6^(1/4)*p_in^(1/12)
};

// One application of the combined transformation with K = p^(1/3) and
// L = (6 p^(1/3))^(1/4).
SpeedupStep speedup_step(const AlgorithmTable& B, const Rational& measured_p);

struct TraceRow {
    int radius = 0;
    Rational p;        // measured max forbidden probability at this level
    Rational bound;    // chained bound b_{i+1} = roundup(z * b_i^(1/12)), b_0 = p_0
    Rational tie_mass; // tie mass of the measurement
};

struct SpeedupTrace {
    std::vector<TraceRow> rows;
    std::vector<AlgorithmTable> tables; // tables[i] runs at rows[i].radius
};

// Apply speedup_step until radius 0, measuring the exact failure probability
// of every level on the host (girth > 2*radius+1 required for the top level).
SpeedupTrace iterate_to_zero(const AlgorithmTable& B0, const EdgeColouredGraph& host,
                             const EstimatorOptions& opts = {});

// z = 4*6^(1/4) materialised as z^12 = 4^12 * 6^3 for exact comparisons.
inline Rational z_pow_12() { return rat(3623878656LL); } // 4^12 * 6^3

// max_c Pr[output = c]^2 of a 0-round table; >= 1/9 for every table since
// some colour is picked with probability >= 1/3.
Rational zero_round_floor(const AlgorithmTable& B);

// Output distribution (q_0, q_1, q_2) of a 0-round table, exact.
std::array<Rational, 3> zero_round_distribution(const AlgorithmTable& B);

} // namespace sinkless
