#include "sinkless/estimator.hpp"

#include "sinkless/ball.hpp"
#include "sinkless/errors.hpp"
#include "sinkless/rng.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

namespace sinkless {

namespace {

// An event as a function of R-bit words on a sorted set of graph nodes
// (the access region), evaluated through precompiled ball placements.
struct CompiledEvent {
    int R = 0;
    std::vector<int> region; // sorted node ids
    // per table: the table, and for each ball address the region position
    struct Read {
        const AlgorithmTable* table;
        std::vector<int> pos;
    };
    std::vector<Read> reads;
    int forbidden_colour = -1; // >= 0: forbidden event (reads = both endpoints)

    int region_index(int node) const {
        return static_cast<int>(std::lower_bound(region.begin(), region.end(), node) - region.begin());
    }

    uint64_t key_of(const Read& rd, std::span<const uint64_t> words) const {
        uint64_t key = 0;
        for (size_t i = 0; i < rd.pos.size(); ++i) key |= words[rd.pos[i]] << (i * R);
        return key;
    }

    // occurred counts ties as failures; tie reports whether one was flagged.
    void eval(std::span<const uint64_t> words, bool& occurred, bool& tie) const {
        tie = false;
        if (forbidden_colour >= 0) {
            occurred = reads[0].table->entry(key_of(reads[0], words)) == forbidden_colour &&
                       reads[1].table->entry(key_of(reads[1], words)) == forbidden_colour;
            return;
        }
        bool all_inward = true;
        for (const Read& rd : reads) {
            EdgeOut dir = rd.table->direction(key_of(rd, words));
            if (dir == EdgeOut::tie) tie = true;
            else if (dir != EdgeOut::to_side0) all_inward = false;
        }
        occurred = all_inward || tie;
    }
};

std::vector<int> region_positions(const CompiledEvent& ev, const std::vector<int>& placement) {
    std::vector<int> pos(placement.size());
    for (size_t i = 0; i < placement.size(); ++i) pos[i] = ev.region_index(placement[i]);
    return pos;
}

CompiledEvent compile_forbidden(const AlgorithmTable& table, const EdgeColouredGraph& g, int edge_index) {
    if (table.output_kind() != OutputKind::colour)
        throw PreconditionError("forbidden events need a node-rooted colour table");
    if (edge_index < 0 || edge_index >= g.edge_count())
        throw PreconditionError("edge index out of range");
    int t = table.radius();
    require_girth_above(g, 2 * t + 1, "forbidden event at radius " + std::to_string(t));
    const ColouredEdge& e = g.edge(edge_index);
    auto pu = place_addresses(g, table.ball(), e.u);
    auto pv = place_addresses(g, table.ball(), e.v);
    CompiledEvent ev;
    ev.R = table.bits_per_node();
    ev.region = pu;
    ev.region.insert(ev.region.end(), pv.begin(), pv.end());
    std::sort(ev.region.begin(), ev.region.end());
    ev.region.erase(std::unique(ev.region.begin(), ev.region.end()), ev.region.end());
    ev.reads.push_back({&table, region_positions(ev, pu)});
    ev.reads.push_back({&table, region_positions(ev, pv)});
    ev.forbidden_colour = e.colour;
    return ev;
}

CompiledEvent compile_sink(const EdgeAlgorithm& alg, const EdgeColouredGraph& g, int node) {
    if (alg.d() != g.degree()) throw PreconditionError("sink events need one table per colour");
    if (node < 0 || node >= g.node_count()) throw PreconditionError("node index out of range");
    int t = alg.radius();
    require_girth_above(g, 2 * t + 1, "sink event at radius " + std::to_string(t));
    CompiledEvent ev;
    ev.R = alg.bits_per_node();
    std::vector<std::vector<int>> placements;
    for (int c = 0; c < g.degree(); ++c) {
        const AlgorithmTable& table = alg.by_colour[c];
        if (table.output_kind() != OutputKind::direction)
            throw PreconditionError("sink events need direction tables");
        // side 0 = the node whose sink status we measure
        placements.push_back(place_addresses(g, table.ball(), node, g.neighbour(node, c)));
        ev.region.insert(ev.region.end(), placements.back().begin(), placements.back().end());
    }
    std::sort(ev.region.begin(), ev.region.end());
    ev.region.erase(std::unique(ev.region.begin(), ev.region.end()), ev.region.end());
    for (int c = 0; c < g.degree(); ++c)
        ev.reads.push_back({&alg.by_colour[c], region_positions(ev, placements[c])});
    return ev;
}

struct Counts {
    uint64_t occurred = 0;
    uint64_t ties = 0;
};

Counts enumerate_all(const CompiledEvent& ev, int jobs) {
    const int bits = ev.R * static_cast<int>(ev.region.size());
    const uint64_t total = uint64_t(1) << bits;
    const uint64_t mask = (ev.R == 64) ? ~uint64_t(0) : (uint64_t(1) << ev.R) - 1;
    auto run = [&](uint64_t lo, uint64_t hi) {
        Counts c;
        std::vector<uint64_t> words(ev.region.size());
        for (uint64_t m = lo; m < hi; ++m) {
            for (size_t i = 0; i < words.size(); ++i) words[i] = (m >> (i * ev.R)) & mask;
            bool occurred, tie;
            ev.eval(words, occurred, tie);
            c.occurred += occurred;
            c.ties += tie;
        }
        return c;
    };
    if (jobs <= 1 || total < 4096) return run(0, total);
    int workers = std::min<uint64_t>(jobs, 64);
    std::vector<Counts> partial(workers);
    std::vector<std::thread> threads;
    uint64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        uint64_t lo = w * chunk, hi = std::min(total, lo + chunk);
        threads.emplace_back([&partial, w, lo, hi, &run] { partial[w] = run(lo, hi); });
    }
    for (auto& th : threads) th.join();
    Counts c;
    for (const auto& p : partial) {
        c.occurred += p.occurred;
        c.ties += p.ties;
    }
    return c;
}

void check_budget(const CompiledEvent& ev, const EstimatorOptions& opts) {
    long long bits = static_cast<long long>(ev.R) * static_cast<long long>(ev.region.size());
    if (bits > opts.max_region_bits)
        throw ResourceError("exact enumeration needs " + std::to_string(bits) + " bits > budget " +
                            std::to_string(opts.max_region_bits) + "; use Monte Carlo mode");
}

ProbEstimate exact_of(const CompiledEvent& ev, const EstimatorOptions& opts) {
    check_budget(ev, opts);
    int bits = ev.R * static_cast<int>(ev.region.size());
    Counts c = enumerate_all(ev, opts.jobs);
    ProbEstimate out;
    out.kind = ProbEstimate::Kind::exact;
    out.value = rat_pow2(bits, static_cast<int64_t>(c.occurred));
    out.tie_mass = rat_pow2(bits, static_cast<int64_t>(c.ties));
    return out;
}

ProbEstimate mc_of(const CompiledEvent& ev, uint64_t samples, uint64_t seed, double delta) {
    if (samples < 1) throw PreconditionError("mc: samples must be >= 1");
    if (!(delta > 0 && delta < 1)) throw PreconditionError("mc: delta must be in (0, 1)");
    const uint64_t mask = (ev.R == 64) ? ~uint64_t(0) : (uint64_t(1) << ev.R) - 1;
    Counts c;
    std::vector<uint64_t> words(ev.region.size());
    for (uint64_t s = 0; s < samples; ++s) {
        for (size_t i = 0; i < words.size(); ++i)
            words[i] = stream_u64(seed, {rng_tag::mc_sample, s, static_cast<uint64_t>(ev.region[i])}) & mask;
        bool occurred, tie;
        ev.eval(words, occurred, tie);
        c.occurred += occurred;
        c.ties += tie;
    }
    ProbEstimate out;
    out.kind = ProbEstimate::Kind::monte_carlo;
    out.value = Rational(BigInt(c.occurred), BigInt(samples));
    out.tie_mass = Rational(BigInt(c.ties), BigInt(samples));
    out.samples = samples;
    out.seed = seed;
    out.delta = delta;
    double w = hoeffding_half_width(samples, delta);
    double est = to_double(out.value);
    out.ci_low = std::max(0.0, est - w);
    out.ci_high = std::min(1.0, est + w);
    return out;
}

} // namespace

double hoeffding_half_width(uint64_t samples, double delta) {
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(samples)));
}

ProbEstimate exact_forbidden_probability(const AlgorithmTable& table, const EdgeColouredGraph& g,
                                         int edge_index, const EstimatorOptions& opts) {
    return exact_of(compile_forbidden(table, g, edge_index), opts);
}

ProbEstimate exact_sink_probability(const EdgeAlgorithm& alg, const EdgeColouredGraph& g, int node,
                                    const EstimatorOptions& opts) {
    return exact_of(compile_sink(alg, g, node), opts);
}

ProbEstimate exact_instance_event_probability(const LllInstance& inst, int event_index) {
    ProbEstimate out;
    out.kind = ProbEstimate::Kind::exact;
    out.value = inst.event_probability(event_index);
    return out;
}

ProbEstimate mc_forbidden_probability(const AlgorithmTable& table, const EdgeColouredGraph& g,
                                      int edge_index, uint64_t samples, uint64_t seed, double delta) {
    return mc_of(compile_forbidden(table, g, edge_index), samples, seed, delta);
}

ProbEstimate mc_sink_probability(const EdgeAlgorithm& alg, const EdgeColouredGraph& g, int node,
                                 uint64_t samples, uint64_t seed, double delta) {
    return mc_of(compile_sink(alg, g, node), samples, seed, delta);
}

ProbEstimate mc_instance_event_probability(const LllInstance& inst, int event_index, uint64_t samples,
                                           uint64_t seed, double delta) {
    if (samples < 1) throw PreconditionError("mc: samples must be >= 1");
    if (!(delta > 0 && delta < 1)) throw PreconditionError("mc: delta must be in (0, 1)");
    const LllEvent& e = inst.event(event_index);
    uint64_t hits = 0;
    std::vector<int> values(e.vars.size());
    for (uint64_t s = 0; s < samples; ++s) {
        for (size_t i = 0; i < e.vars.size(); ++i) {
            int dom = inst.variable(e.vars[i]).domain;
            values[i] = static_cast<int>(
                stream_below(seed, {rng_tag::mc_sample, s, static_cast<uint64_t>(e.vars[i])}, dom));
        }
        hits += inst.event_occurs(event_index, values);
    }
    ProbEstimate out;
    out.kind = ProbEstimate::Kind::monte_carlo;
    out.value = Rational(BigInt(hits), BigInt(samples));
    out.samples = samples;
    out.seed = seed;
    out.delta = delta;
    double w = hoeffding_half_width(samples, delta);
    double est = to_double(out.value);
    out.ci_low = std::max(0.0, est - w);
    out.ci_high = std::min(1.0, est + w);
    return out;
}

namespace {

Rational conditional_of(const CompiledEvent& ev, const SubTape& fixed, const std::vector<int>& free_nodes,
                        const EstimatorOptions& opts) {
    if (fixed.nodes.size() != fixed.words.size())
        throw PreconditionError("conditional: fixed sub-tape nodes/words mismatch");
    std::vector<int> part = fixed.nodes;
    part.insert(part.end(), free_nodes.begin(), free_nodes.end());
    std::sort(part.begin(), part.end());
    if (std::adjacent_find(part.begin(), part.end()) != part.end())
        throw PreconditionError("conditional: fixed and free regions overlap");
    if (part != ev.region)
        throw PreconditionError("conditional: fixed and free regions must partition the access region");
    long long free_bits = static_cast<long long>(ev.R) * static_cast<long long>(free_nodes.size());
    if (free_bits > opts.max_region_bits)
        throw ResourceError("conditional enumeration needs " + std::to_string(free_bits) + " bits > budget " +
                            std::to_string(opts.max_region_bits) + "; use Monte Carlo mode");
    const uint64_t mask = (ev.R == 64) ? ~uint64_t(0) : (uint64_t(1) << ev.R) - 1;
    std::vector<uint64_t> words(ev.region.size(), 0);
    for (size_t i = 0; i < fixed.nodes.size(); ++i)
        words[ev.region_index(fixed.nodes[i])] = fixed.words[i] & mask;
    std::vector<int> free_pos;
    for (int node : free_nodes) free_pos.push_back(ev.region_index(node));
    uint64_t hits = 0;
    const uint64_t total = uint64_t(1) << free_bits;
    for (uint64_t m = 0; m < total; ++m) {
        for (size_t i = 0; i < free_pos.size(); ++i) words[free_pos[i]] = (m >> (i * ev.R)) & mask;
        bool occurred, tie;
        ev.eval(words, occurred, tie);
        hits += occurred;
    }
    return rat_pow2(static_cast<int>(free_bits), static_cast<int64_t>(hits));
}

} // namespace

Rational conditional_event_probability(const AlgorithmTable& node_table, const EdgeColouredGraph& g,
                                       int edge_index, const SubTape& fixed,
                                       const std::vector<int>& free_nodes, const EstimatorOptions& opts) {
    return conditional_of(compile_forbidden(node_table, g, edge_index), fixed, free_nodes, opts);
}

Rational conditional_event_probability(const EdgeAlgorithm& alg, const EdgeColouredGraph& g, int node,
                                       const SubTape& fixed, const std::vector<int>& free_nodes,
                                       const EstimatorOptions& opts) {
    return conditional_of(compile_sink(alg, g, node), fixed, free_nodes, opts);
}

std::vector<int> event_region(const AlgorithmTable& node_table, const EdgeColouredGraph& g, int edge_index) {
    return compile_forbidden(node_table, g, edge_index).region;
}

std::vector<int> event_region(const EdgeAlgorithm& alg, const EdgeColouredGraph& g, int node) {
    return compile_sink(alg, g, node).region;
}

void write_estimate_csv_header(std::ostream& out) {
    out << "site_kind,site_id,kind,num,den_or_estimate,ci_low,ci_high,"
           "tie_mass_num,tie_mass_den,samples,seed\n";
}

void write_estimate_csv_row(std::ostream& out, const std::string& site_kind, int site_id,
                            const ProbEstimate& e) {
    out << site_kind << "," << site_id << ",";
    if (e.kind == ProbEstimate::Kind::exact) {
        out << "exact," << e.value.numerator() << "," << e.value.denominator() << ",,";
    } else {
        out << "monte_carlo," << e.value.numerator() << "," << to_double(e.value) << "," << e.ci_low << ","
            << e.ci_high;
    }
    out << "," << e.tie_mass.numerator() << "," << e.tie_mass.denominator() << "," << e.samples << ","
        << e.seed << "\n";
}

} // namespace sinkless
