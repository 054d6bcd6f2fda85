#pragma once

#include "sinkless/ball.hpp"
#include "sinkless/problems.hpp"
#include "sinkless/tape.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace sinkless {

enum class OutputKind { colour, direction };

// Direction outputs name a root side of the edge-rooted ball; tie marks a
// tape the table cannot break symmetrically (only mirror-symmetric tapes of
// constructed tables carry it).
enum class EdgeOut : uint8_t { to_side0 = 0, to_side1 = 1, tie = 2 };

// A t-round algorithm in explicit form: a total map from tape assignments on
// the canonical ball to outputs. Keys pack address words in canonical
// address order, address i occupying bits [i*R, (i+1)*R). Dense storage up
// to 24 key bits, hash map beyond.
class AlgorithmTable {
public:
    AlgorithmTable() = default;
    AlgorithmTable(CanonicalBall ball, OutputKind kind, int bits_per_node);

    const CanonicalBall& ball() const { return ball_; }
    OutputKind output_kind() const { return kind_; }
    int bits_per_node() const { return R_; }
    int radius() const { return ball_.radius(); }
    int key_bits() const { return key_bits_; }
    uint64_t entry_count() const { return uint64_t(1) << key_bits_; }

    uint8_t entry(uint64_t key) const;
    void set_entry(uint64_t key, uint8_t out);
    EdgeOut direction(uint64_t key) const { return static_cast<EdgeOut>(entry(key)); }

    bool dense() const { return !dense_.empty(); }
    bool operator==(const AlgorithmTable& o) const;

private:
    CanonicalBall ball_;
    OutputKind kind_ = OutputKind::colour;
    int R_ = 0;
    int key_bits_ = 0;
    std::vector<uint8_t> dense_;
    std::vector<std::pair<uint64_t, uint8_t>> sparse_; // sorted by key
};

// One node-rooted colour table; outputs uniform over [d] per entry.
AlgorithmTable random_node_table(int d, int radius, int bits_per_node, uint64_t seed);

// An edge-output algorithm needs one table per root edge colour (the root
// colour changes which colours the first step may take).
struct EdgeAlgorithm {
    std::vector<AlgorithmTable> by_colour; // size d, by_colour[c] rooted at colour c

    int d() const { return static_cast<int>(by_colour.size()); }
    int radius() const { return by_colour.at(0).radius(); }
    int bits_per_node() const { return by_colour.at(0).bits_per_node(); }
};

// Gather the packed table key for a placement (placement[i] = graph node of
// ball address i).
uint64_t gather_key(const RandomTape& tape, std::span<const int> placement, int R);

// Evaluate a node-rooted colour table at every node. Requires girth > 2t.
Colouring eval_node_table(const AlgorithmTable& table, const EdgeColouredGraph& g, const RandomTape& tape);

struct OrientationEval {
    Orientation orientation;
    std::vector<int> tie_edges; // edges whose entry was tie (resolved toward the smaller endpoint)
    bool tie_assisted() const { return !tie_edges.empty(); }
};

// Evaluate an edge algorithm at every edge; side 0 is the smaller endpoint.
// Requires girth > 2t+1. Both endpoints read the same entry, so the result
// is endpoint-consistent by construction; ties are resolved toward the
// smaller endpoint and flagged.
OrientationEval eval_edge_algorithm(const EdgeAlgorithm& alg, const EdgeColouredGraph& g,
                                    const RandomTape& tape);

// --- table file format -------------------------------------------------------
// Header: "d t root_kind [root_colour] output_kind R", then one line
// "tape_hex output" per key; outputs are a colour index, or 0/1/tie for
// directions. Files list every key (tables are total).

AlgorithmTable parse_table(std::istream& in, const std::string& name = "<table>");
AlgorithmTable read_table_file(const std::string& path);
void write_table(std::ostream& out, const AlgorithmTable& t, const std::string& comment = "");
void write_table_file(const std::string& path, const AlgorithmTable& t, const std::string& comment = "");

} // namespace sinkless
