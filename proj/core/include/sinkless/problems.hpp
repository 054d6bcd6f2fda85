#pragma once

#include "sinkless/graph.hpp"
#include "sinkless/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sinkless {

// Edge orientation aligned with a graph's edge list (edges stored u < v).
// toward_max[e] == 1 means u -> v.
struct Orientation {
    std::vector<uint8_t> toward_max;
};

struct Colouring {
    std::vector<int> colour;
};

// All sinks (outdeg 0) under the orientation; empty result == sinkless.
std::vector<int> find_sinks(int n, std::span<const std::pair<int, int>> edges, const Orientation& o);
std::vector<int> verify_orientation(const EdgeColouredGraph& g, const Orientation& o);
std::vector<int> verify_orientation(const SimpleGraph& g, const Orientation& o);

// All edges e = {u,v} with phi(u) = phi(v) = psi(e); empty == sinkless
// colouring.
std::vector<int> verify_colouring(const EdgeColouredGraph& g, const Colouring& c);

// The two bridges between the problems: a sinkless colouring yields a
// sinkless orientation (each node points its own-colour edge outward,
// remaining edges go toward the smaller endpoint), and a sinkless orientation
// yields a sinkless colouring (smallest outgoing edge colour).
Orientation orientation_from_colouring(const EdgeColouredGraph& g, const Colouring& c);
Colouring colouring_from_orientation(const EdgeColouredGraph& g, const Orientation& o);

// --- explicit finite LLL instances -----------------------------------------

struct LllVariable {
    std::string name;
    int domain = 2;
};

// Explicit bad-event specification: the variables it reads and the exact set
// of value tuples on which it occurs. Tuples are stored packed (mixed radix
// over the event's variable domains, first variable least significant) and
// sorted; membership is binary search.
struct LllEvent {
    std::vector<int> vars;
    std::vector<uint64_t> bad;
};

class LllInstance {
public:
    LllInstance() = default;
    LllInstance(std::vector<LllVariable> vars, std::vector<LllEvent> events);

    int variable_count() const { return static_cast<int>(vars_.size()); }
    int event_count() const { return static_cast<int>(events_.size()); }
    const LllVariable& variable(int i) const { return vars_[i]; }
    const LllEvent& event(int i) const { return events_[i]; }

    uint64_t pack(int ev, std::span<const int> values) const;
    std::vector<int> unpack(int ev, uint64_t packed) const;
    // Product of the event's variable domains.
    uint64_t domain_size(int ev) const { return domain_size_[ev]; }

    bool event_occurs(int ev, std::span<const int> values) const;

    // Exact Pr[E_v] under independent uniform sampling: |bad| / domain size.
    Rational event_probability(int ev) const;
    Rational max_event_probability() const;

    // Max over events of the number of *other* events sharing a variable.
    int dependency_degree() const;

private:
    std::vector<LllVariable> vars_;
    std::vector<LllEvent> events_;
    std::vector<uint64_t> domain_size_;
};

// Node per event, edge iff two events share a variable.
SimpleGraph dependency_graph(const LllInstance& inst);

enum class LllCriterion {
    euler_p_d_plus_1, // e * p * (d+1) <= 1
    four_p_d,         // 4 * p * d <= 1
    p_f_d,            // p * f(d) <= 1 with user-supplied f(d)
};

struct CriterionReport {
    Rational p;             // max event probability, exact
    int dependency_degree = 0;
    bool satisfied = false;
    Rational lhs;           // the evaluated left-hand side (upper bound for the e-criterion)
    Rational margin;        // 1 - lhs
    std::string detail;
};

// Exact rational evaluation; the transcendental e is bracketed by partial
// sums of sum 1/k! tight enough (< 1e-48) that no realistic instance can
// fall between the brackets.
CriterionReport check_lll_criterion(const LllInstance& inst, LllCriterion criterion,
                                    std::optional<Rational> f_of_d = std::nullopt);

// Total assignment, one value per variable.
struct Assignment {
    std::vector<int> value;
};

// Per-event assignment, values aligned with the event's variable list
// (Problem 3's distributed output form).
struct EventAssignment {
    std::vector<int> values;
};

struct AssignmentCheck {
    bool ok = false;
    std::string reason;     // empty when ok
    int event_a = -1;       // offending event(s) / variable, -1 when n/a
    int event_b = -1;
    int variable = -1;
};

// Accepts iff adjacent events agree on shared variables and no event's bad
// set contains its assigned tuple.
AssignmentCheck check_assignment(const LllInstance& inst, const std::vector<EventAssignment>& per_event);
AssignmentCheck check_assignment(const LllInstance& inst, const Assignment& a);

// --- text formats -----------------------------------------------------------
// Instance: "variables k", k lines "name domain", "events m", then per event
// a line "arity v_1 ... v_arity bad_count" followed by bad_count tuple lines.

LllInstance parse_instance(std::istream& in, const std::string& name = "<instance>");
LllInstance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const LllInstance& inst, const std::string& comment = "");
void write_instance_file(const std::string& path, const LllInstance& inst, const std::string& comment = "");

// Assignment: "assignment k", k lines "name value" in variable order.
Assignment parse_assignment(std::istream& in, const LllInstance& inst, const std::string& name = "<assignment>");
void write_assignment(std::ostream& out, const LllInstance& inst, const Assignment& a,
                      const std::string& comment = "");

// Orientation: "orientation m", m lines "tail head" (must cover every edge).
Orientation parse_orientation(std::istream& in, int n,
                              std::span<const std::pair<int, int>> edges,
                              const std::string& name = "<orientation>");
void write_orientation(std::ostream& out, std::span<const std::pair<int, int>> edges, const Orientation& o,
                       const std::string& comment = "");

// Colouring: "colouring n", n lines "node colour".
Colouring parse_colouring(std::istream& in, int n, const std::string& name = "<colouring>");
void write_colouring(std::ostream& out, const Colouring& c, const std::string& comment = "");

std::vector<std::pair<int, int>> plain_edges(const EdgeColouredGraph& g);

} // namespace sinkless
