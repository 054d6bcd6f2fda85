#include "sinkless/speedup.hpp"

#include "sinkless/ball.hpp"
#include "sinkless/errors.hpp"

#include <algorithm>

namespace sinkless {

namespace {

constexpr int kFreeBitBudget = 24;

uint64_t word_mask(int R) { return R == 64 ? ~uint64_t(0) : (uint64_t(1) << R) - 1; }

uint64_t extract_sub(uint64_t host_key, const std::vector<int>& lens, int R) {
    uint64_t key = 0;
    for (size_t i = 0; i < lens.size(); ++i)
        key |= ((host_key >> (lens[i] * R)) & word_mask(R)) << (i * R);
    return key;
}

uint64_t scatter_sub(uint64_t sub_key, const std::vector<int>& lens, int R) {
    uint64_t key = 0;
    for (size_t i = 0; i < lens.size(); ++i)
        key |= ((sub_key >> (i * R)) & word_mask(R)) << (lens[i] * R);
    return key;
}

std::vector<int> addr_difference(int host_count, const std::vector<int>& keep_out) {
    std::vector<char> hit(host_count, 0);
    for (int a : keep_out) hit[a] = 1;
    std::vector<int> out;
    for (int a = 0; a < host_count; ++a)
        if (!hit[a]) out.push_back(a);
    return out;
}

std::vector<int> addr_minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) == std::end(b)) out.push_back(x);
    return out;
}

// Enumerate all assignments of R-bit words to free_addrs over a fixed base.
template <class F>
void for_each_completion(uint64_t base, const std::vector<int>& free_addrs, int R, F&& f) {
    int bits = R * static_cast<int>(free_addrs.size());
    if (bits > kFreeBitBudget)
        throw ResourceError("speedup: conditioning needs " + std::to_string(bits) +
                            " free bits > budget " + std::to_string(kFreeBitBudget) +
                            "; use Monte Carlo mode");
    uint64_t total = uint64_t(1) << bits;
    for (uint64_t m = 0; m < total; ++m) {
        uint64_t key = base;
        for (size_t i = 0; i < free_addrs.size(); ++i)
            key |= ((m >> (i * R)) & word_mask(R)) << (free_addrs[i] * R);
        f(key);
    }
}

uint64_t bit_reverse(uint64_t word, int R) {
    uint64_t out = 0;
    for (int j = 0; j < R; ++j) out |= ((word >> j) & 1u) << (R - 1 - j);
    return out;
}

// All the canonical balls and lenses a radius-t transformation needs (d = 3).
struct Ctx {
    int t = 0, R = 0;
    CanonicalBall nball, oball;             // radius t and t-1 node balls
    std::array<CanonicalBall, 3> eball;     // radius t edge balls
    std::array<CanonicalBall, 3> xball;     // radius t+1 edge balls
    std::array<std::vector<int>, 3> eb_in_nb, ob_in_eb, ob1_in_eb, eb_in_xb, nb0_in_xb, nb1_in_xb;
    std::array<std::vector<int>, 3> mirror; // side swap of eball[c]
    std::vector<int> ob_in_nb;
};

Ctx make_ctx(int t, int R) {
    if (t < 1) throw PreconditionError("speedup: radius must be >= 1");
    Ctx ctx;
    ctx.t = t;
    ctx.R = R;
    ctx.nball = CanonicalBall::node_rooted(3, t);
    ctx.oball = CanonicalBall::node_rooted(3, t - 1);
    ctx.ob_in_nb = ball_lens(ctx.nball, ctx.oball, ctx.nball.root());
    for (int c = 0; c < 3; ++c) {
        ctx.eball[c] = CanonicalBall::edge_rooted(3, t, c);
        ctx.xball[c] = CanonicalBall::edge_rooted(3, t + 1, c);
        ctx.eb_in_nb[c] =
            ball_lens(ctx.nball, ctx.eball[c], ctx.nball.root(), ctx.nball.step(ctx.nball.root(), c));
        ctx.ob_in_eb[c] = ball_lens(ctx.eball[c], ctx.oball, ctx.eball[c].root(0));
        ctx.ob1_in_eb[c] = ball_lens(ctx.eball[c], ctx.oball, ctx.eball[c].root(1));
        ctx.eb_in_xb[c] = ball_lens(ctx.xball[c], ctx.eball[c], ctx.xball[c].root(0), ctx.xball[c].root(1));
        ctx.nb0_in_xb[c] = ball_lens(ctx.xball[c], ctx.nball, ctx.xball[c].root(0));
        ctx.nb1_in_xb[c] = ball_lens(ctx.xball[c], ctx.nball, ctx.xball[c].root(1));
        ctx.mirror[c].resize(ctx.eball[c].address_count());
        for (int i = 0; i < ctx.eball[c].address_count(); ++i) ctx.mirror[c][i] = ctx.eball[c].mirror(i);
    }
    return ctx;
}

void require_node_table(const AlgorithmTable& B, const char* op) {
    if (B.output_kind() != OutputKind::colour || B.ball().is_edge_rooted())
        throw PreconditionError(std::string(op) + ": needs a node-rooted colour table");
    if (B.ball().d() != 3) throw PreconditionError(std::string(op) + ": speedup is defined for d = 3");
}

void require_edge_algorithm(const EdgeAlgorithm& Bp, const char* op) {
    if (Bp.d() != 3) throw PreconditionError(std::string(op) + ": needs one direction table per colour");
    for (int c = 0; c < 3; ++c) {
        const AlgorithmTable& tb = Bp.by_colour[c];
        if (tb.output_kind() != OutputKind::direction || !tb.ball().is_edge_rooted() ||
            tb.ball().root_colour() != c)
            throw PreconditionError(std::string(op) + ": table " + std::to_string(c) +
                                    " must be edge-rooted at colour " + std::to_string(c));
        if (tb.radius() != Bp.by_colour[0].radius() || tb.bits_per_node() != Bp.by_colour[0].bits_per_node())
            throw PreconditionError(std::string(op) + ": tables must share radius and tape width");
    }
}

uint64_t swap_key(uint64_t key, const std::vector<int>& mirror, int R) {
    uint64_t out = 0;
    for (size_t i = 0; i < mirror.size(); ++i)
        out |= ((key >> (i * R)) & word_mask(R)) << (mirror[i] * R);
    return out;
}

// Lexicographic comparison key of one side's tape: addresses in canonical
// order, address-major, bit 0 of each word most significant.
uint64_t side_lex_key(uint64_t key, const CanonicalBall& ball, int side, int R) {
    uint64_t out = 0;
    for (int i = 0; i < ball.address_count(); ++i) {
        if (ball.address(i).side != side) continue;
        out = (out << R) | bit_reverse((key >> (i * R)) & word_mask(R), R);
    }
    return out;
}

// count >= K * 2^bits, exactly.
bool at_least_threshold(uint64_t count, int bits, const Rational& K) {
    return BigInt(count) * K.denominator() >= K.numerator() << bits;
}

// count <= L * 2^bits, exactly.
bool at_most_threshold(uint64_t count, int bits, const Rational& L) {
    return BigInt(count) * L.denominator() <= L.numerator() << bits;
}

// Candidacy of `root_colour` for the side-s endpoint given the radius-t
// edge-ball tape: Pr[B(endpoint) = c | edge ball] >= K, counting over the
// endpoint's remaining radius-t ball.
bool candidate_from_xball(const Ctx& ctx, const AlgorithmTable& B, const Rational& K, int c, int side,
                          uint64_t edge_key) {
    const auto& nb_lens = side == 0 ? ctx.nb0_in_xb[c] : ctx.nb1_in_xb[c];
    std::vector<int> free = addr_minus(nb_lens, ctx.eb_in_xb[c]);
    uint64_t base = scatter_sub(edge_key, ctx.eb_in_xb[c], ctx.R);
    uint64_t count = 0;
    for_each_completion(base, free, ctx.R, [&](uint64_t key) {
        count += B.entry(extract_sub(key, nb_lens, ctx.R)) == c;
    });
    return at_least_threshold(count, ctx.R * static_cast<int>(free.size()), K);
}

struct Candidacy {
    std::array<std::vector<char>, 3> is_cand; // per edge-ball tape, side-0 view
};

Candidacy build_candidacy(const Ctx& ctx, const AlgorithmTable& B, const Rational& K) {
    Candidacy out;
    for (int c = 0; c < 3; ++c) {
        uint64_t entries = uint64_t(1) << (ctx.R * ctx.eball[c].address_count());
        out.is_cand[c].resize(entries);
        for (uint64_t key = 0; key < entries; ++key)
            out.is_cand[c][key] = candidate_from_xball(ctx, B, K, c, 0, key);
    }
    return out;
}

// Inward-or-tie counts for every own-ball tape: memo[c][omega] = number of
// completions of the colour-c edge ball with direction toward side 0 or tie.
struct InwardMemo {
    std::array<std::vector<uint64_t>, 3> count;
    int free_bits = 0;
};

InwardMemo build_inward(const Ctx& ctx, const EdgeAlgorithm& Bp) {
    InwardMemo memo;
    for (int c = 0; c < 3; ++c) {
        const AlgorithmTable& tb = Bp.by_colour[c];
        std::vector<int> free = addr_difference(ctx.eball[c].address_count(), ctx.ob_in_eb[c]);
        memo.free_bits = ctx.R * static_cast<int>(free.size());
        uint64_t omegas = uint64_t(1) << (ctx.R * ctx.oball.address_count());
        memo.count[c].assign(omegas, 0);
        for (uint64_t omega = 0; omega < omegas; ++omega) {
            uint64_t base = scatter_sub(omega, ctx.ob_in_eb[c], ctx.R);
            uint64_t cnt = 0;
            for_each_completion(base, free, ctx.R, [&](uint64_t key) {
                EdgeOut dir = tb.direction(key);
                cnt += dir == EdgeOut::to_side0 || dir == EdgeOut::tie;
            });
            memo.count[c][omega] = cnt;
        }
    }
    return memo;
}

} // namespace

Rational threshold_from_cube(const Rational& p, int radius, int bits_per_node) {
    if (p < 0 || p > 1) throw PreconditionError("threshold_from_cube: p must be in [0, 1]");
    if (p == 0) {
        // K must stay positive; the conditional-probability grain keeps
        // ">= K" meaning "positive" (any smaller positive K is equivalent).
        return rat_pow2(bits_per_node << radius); // 2^-(R * 2^t)
    }
    return nth_root_roundup(p, 3);
}

Rational threshold_from_fourth(const Rational& ell) {
    if (ell < 0 || ell > 1) throw PreconditionError("threshold_from_fourth: l must be in [0, 1]");
    if (ell == 0) return rat_pow2(32);
    return nth_root_roundup(ell, 4);
}

bool colour_is_candidate(const AlgorithmTable& B, const Rational& K, int root_colour, int side,
                         uint64_t edge_ball_key) {
    require_node_table(B, "colour_is_candidate");
    Ctx ctx = make_ctx(B.radius(), B.bits_per_node());
    return candidate_from_xball(ctx, B, K, root_colour, side, edge_ball_key);
}

int candidate_colours(const AlgorithmTable& B, const Rational& K, uint64_t node_ball_key) {
    require_node_table(B, "candidate_colours");
    Ctx ctx = make_ctx(B.radius(), B.bits_per_node());
    int mask = 0;
    for (int c = 0; c < 3; ++c) {
        uint64_t edge_key = extract_sub(node_ball_key, ctx.eb_in_nb[c], ctx.R);
        if (candidate_from_xball(ctx, B, K, c, 0, edge_key)) mask |= 1 << c;
    }
    return mask;
}

Rational collision_probability(const AlgorithmTable& B, int root_colour, uint64_t edge_ball_key) {
    require_node_table(B, "collision_probability");
    Ctx ctx = make_ctx(B.radius(), B.bits_per_node());
    int c = root_colour;
    std::vector<int> both = ctx.nb0_in_xb[c];
    for (int a : ctx.nb1_in_xb[c])
        if (std::find(both.begin(), both.end(), a) == both.end()) both.push_back(a);
    std::vector<int> free = addr_minus(both, ctx.eb_in_xb[c]);
    uint64_t base = scatter_sub(edge_ball_key, ctx.eb_in_xb[c], ctx.R);
    uint64_t count = 0;
    for_each_completion(base, free, ctx.R, [&](uint64_t key) {
        count += B.entry(extract_sub(key, ctx.nb0_in_xb[c], ctx.R)) == c &&
                 B.entry(extract_sub(key, ctx.nb1_in_xb[c], ctx.R)) == c;
    });
    return rat_pow2(ctx.R * static_cast<int>(free.size()), static_cast<int64_t>(count));
}

Rational prob_candidate_set_empty(const AlgorithmTable& B, const Rational& K, uint64_t own_ball_key) {
    require_node_table(B, "prob_candidate_set_empty");
    Ctx ctx = make_ctx(B.radius(), B.bits_per_node());
    Candidacy cand = build_candidacy(ctx, B, K);
    std::vector<int> free = addr_difference(ctx.nball.address_count(), ctx.ob_in_nb);
    uint64_t base = scatter_sub(own_ball_key, ctx.ob_in_nb, ctx.R);
    uint64_t empties = 0;
    for_each_completion(base, free, ctx.R, [&](uint64_t key) {
        bool any = false;
        for (int c = 0; c < 3 && !any; ++c)
            any = cand.is_cand[c][extract_sub(key, ctx.eb_in_nb[c], ctx.R)];
        empties += !any;
    });
    return rat_pow2(ctx.R * static_cast<int>(free.size()), static_cast<int64_t>(empties));
}

EdgeAlgorithm colouring_to_orientation(const AlgorithmTable& B, const Rational& K) {
    require_node_table(B, "colouring_to_orientation");
    if (K <= 0 || K > 1) throw PreconditionError("colouring_to_orientation: K must be in (0, 1]");
    Ctx ctx = make_ctx(B.radius(), B.bits_per_node());
    Candidacy cand = build_candidacy(ctx, B, K);
    EdgeAlgorithm out;
    for (int c = 0; c < 3; ++c) {
        AlgorithmTable table(ctx.eball[c], OutputKind::direction, ctx.R);
        if (table.key_bits() > kFreeBitBudget)
            throw ResourceError("colouring_to_orientation: edge table beyond the enumeration budget");
        for (uint64_t key = 0; key < table.entry_count(); ++key) {
            bool m0 = cand.is_cand[c][key];
            bool m1 = cand.is_cand[c][swap_key(key, ctx.mirror[c], ctx.R)];
            EdgeOut dir;
            if (m0 && !m1) {
                dir = EdgeOut::to_side1; // the edge colour is u's candidate only: u -> v
            } else if (!m0 && m1) {
                dir = EdgeOut::to_side0;
            } else {
                uint64_t k0 = side_lex_key(key, ctx.eball[c], 0, ctx.R);
                uint64_t k1 = side_lex_key(key, ctx.eball[c], 1, ctx.R);
                dir = k0 < k1 ? EdgeOut::to_side0 : k1 < k0 ? EdgeOut::to_side1 : EdgeOut::tie;
            }
            table.set_entry(key, static_cast<uint8_t>(dir));
        }
        out.by_colour.push_back(std::move(table));
    }
    return out;
}

namespace {

bool is_side_symmetric(const EdgeAlgorithm& Bp, const Ctx& ctx) {
    for (int c = 0; c < 3; ++c) {
        const AlgorithmTable& tb = Bp.by_colour[c];
        for (uint64_t key = 0; key < tb.entry_count(); ++key) {
            EdgeOut a = tb.direction(key);
            EdgeOut b = tb.direction(swap_key(key, ctx.mirror[c], ctx.R));
            bool ok = (a == EdgeOut::tie && b == EdgeOut::tie) ||
                      (a == EdgeOut::to_side0 && b == EdgeOut::to_side1) ||
                      (a == EdgeOut::to_side1 && b == EdgeOut::to_side0);
            if (!ok) return false;
        }
    }
    return true;
}

} // namespace

Rational prob_inward_or_tie(const EdgeAlgorithm& Bp, int root_colour, int side, uint64_t own_ball_key) {
    require_edge_algorithm(Bp, "prob_inward_or_tie");
    Ctx ctx = make_ctx(Bp.radius(), Bp.bits_per_node());
    const auto& ob_lens = side == 0 ? ctx.ob_in_eb[root_colour] : ctx.ob1_in_eb[root_colour];
    std::vector<int> free = addr_difference(ctx.eball[root_colour].address_count(), ob_lens);
    uint64_t base = scatter_sub(own_ball_key, ob_lens, ctx.R);
    EdgeOut inward = side == 0 ? EdgeOut::to_side0 : EdgeOut::to_side1;
    uint64_t count = 0;
    for_each_completion(base, free, ctx.R, [&](uint64_t key) {
        EdgeOut dir = Bp.by_colour[root_colour].direction(key);
        count += dir == inward || dir == EdgeOut::tie;
    });
    return rat_pow2(ctx.R * static_cast<int>(free.size()), static_cast<int64_t>(count));
}

int inward_candidate_colours(const EdgeAlgorithm& Bp, const Rational& L, uint64_t own_ball_key) {
    require_edge_algorithm(Bp, "inward_candidate_colours");
    Ctx ctx = make_ctx(Bp.radius(), Bp.bits_per_node());
    InwardMemo memo = build_inward(ctx, Bp);
    int mask = 0;
    for (int c = 0; c < 3; ++c)
        if (at_most_threshold(memo.count[c][own_ball_key], memo.free_bits, L)) mask |= 1 << c;
    return mask;
}

Rational prob_both_inward_candidates(const EdgeAlgorithm& Bp, const Rational& L, int root_colour,
                                     uint64_t small_edge_ball_key) {
    require_edge_algorithm(Bp, "prob_both_inward_candidates");
    int t = Bp.radius();
    Ctx ctx = make_ctx(t, Bp.bits_per_node());
    if (!is_side_symmetric(Bp, ctx))
        throw PreconditionError("prob_both_inward_candidates: edge algorithm must be side-symmetric");
    InwardMemo memo = build_inward(ctx, Bp);
    int c = root_colour;
    // Conditioning region: the radius-(t-1) edge ball; empty when t = 1.
    std::vector<int> cond;
    if (t >= 2) {
        CanonicalBall small = CanonicalBall::edge_rooted(3, t - 1, c);
        cond = ball_lens(ctx.eball[c], small, ctx.eball[c].root(0), ctx.eball[c].root(1));
    }
    std::vector<int> free = addr_difference(ctx.eball[c].address_count(), cond);
    uint64_t base = scatter_sub(small_edge_ball_key, cond, ctx.R);
    uint64_t count = 0;
    for_each_completion(base, free, ctx.R, [&](uint64_t key) {
        uint64_t omega0 = extract_sub(key, ctx.ob_in_eb[c], ctx.R);
        uint64_t omega1 = extract_sub(key, ctx.ob1_in_eb[c], ctx.R);
        count += at_most_threshold(memo.count[c][omega0], memo.free_bits, L) &&
                 at_most_threshold(memo.count[c][omega1], memo.free_bits, L);
    });
    return rat_pow2(ctx.R * static_cast<int>(free.size()), static_cast<int64_t>(count));
}

Rational sink_prob_given_own_ball(const EdgeAlgorithm& Bp, uint64_t own_ball_key) {
    require_edge_algorithm(Bp, "sink_prob_given_own_ball");
    Ctx ctx = make_ctx(Bp.radius(), Bp.bits_per_node());
    std::vector<int> free = addr_difference(ctx.nball.address_count(), ctx.ob_in_nb);
    uint64_t base = scatter_sub(own_ball_key, ctx.ob_in_nb, ctx.R);
    uint64_t count = 0;
    for_each_completion(base, free, ctx.R, [&](uint64_t key) {
        bool sink = true;
        for (int c = 0; c < 3 && sink; ++c) {
            EdgeOut dir = Bp.by_colour[c].direction(extract_sub(key, ctx.eb_in_nb[c], ctx.R));
            sink = dir == EdgeOut::to_side0 || dir == EdgeOut::tie;
        }
        count += sink;
    });
    return rat_pow2(ctx.R * static_cast<int>(free.size()), static_cast<int64_t>(count));
}

AlgorithmTable orientation_to_colouring(const EdgeAlgorithm& Bp, const Rational& L) {
    require_edge_algorithm(Bp, "orientation_to_colouring");
    if (L <= 0 || L > 1) throw PreconditionError("orientation_to_colouring: L must be in (0, 1]");
    int t = Bp.radius();
    Ctx ctx = make_ctx(t, Bp.bits_per_node());
    if (!is_side_symmetric(Bp, ctx))
        throw PreconditionError("orientation_to_colouring: edge algorithm must be side-symmetric "
                                "(both endpoints must compute the same direction)");
    InwardMemo memo = build_inward(ctx, Bp);
    AlgorithmTable out(ctx.oball, OutputKind::colour, ctx.R);
    for (uint64_t omega = 0; omega < out.entry_count(); ++omega) {
        int chosen = 0; // the fallback colour when no candidate exists
        for (int c = 0; c < 3; ++c) {
            if (at_most_threshold(memo.count[c][omega], memo.free_bits, L)) {
                chosen = c;
                break;
            }
        }
        out.set_entry(omega, static_cast<uint8_t>(chosen));
    }
    return out;
}

Measured measure_max_forbidden(const AlgorithmTable& B, const EdgeColouredGraph& host,
                               const EstimatorOptions& opts) {
    require_node_table(B, "measure_max_forbidden");
    Measured m{Rational(0), Rational(0)};
    for (int e = 0; e < host.edge_count(); ++e) {
        ProbEstimate est = exact_forbidden_probability(B, host, e, opts);
        m.value = std::max(m.value, est.value);
        m.tie_mass = std::max(m.tie_mass, est.tie_mass);
    }
    return m;
}

Measured measure_max_sink(const EdgeAlgorithm& Bp, const EdgeColouredGraph& host,
                          const EstimatorOptions& opts) {
    require_edge_algorithm(Bp, "measure_max_sink");
    Measured m{Rational(0), Rational(0)};
    for (int v = 0; v < host.node_count(); ++v) {
        ProbEstimate est = exact_sink_probability(Bp, host, v, opts);
        m.value = std::max(m.value, est.value);
        m.tie_mass = std::max(m.tie_mass, est.tie_mass);
    }
    return m;
}

SpeedupStep speedup_step(const AlgorithmTable& B, const Rational& measured_p) {
    require_node_table(B, "speedup_step");
    SpeedupStep step;
    step.p_in = measured_p;
    step.config.K = threshold_from_cube(measured_p, B.radius(), B.bits_per_node());
    // L^4 >= 6 p^(1/3)  <=>  L^12 >= 216 p; clamped to 1 (thresholds above 1
    // admit every colour anyway).
    step.config.L = measured_p == 0 ? threshold_from_fourth(Rational(0))
                                    : std::min(Rational(1), nth_root_roundup(rat(216) * measured_p, 12));
    step.orientation_alg = colouring_to_orientation(B, step.config.K);
    step.colouring_alg = orientation_to_colouring(step.orientation_alg, step.config.L);
    step.bound = nth_root_roundup(z_pow_12() * measured_p, 12);
    return step;
}

SpeedupTrace iterate_to_zero(const AlgorithmTable& B0, const EdgeColouredGraph& host,
                             const EstimatorOptions& opts) {
    require_node_table(B0, "iterate_to_zero");
    SpeedupTrace trace;
    Measured m0 = measure_max_forbidden(B0, host, opts);
    trace.rows.push_back({B0.radius(), m0.value, m0.value, m0.tie_mass});
    trace.tables.push_back(B0);
    while (trace.tables.back().radius() > 0) {
        const AlgorithmTable& B = trace.tables.back();
        const TraceRow& row = trace.rows.back();
        SpeedupStep step = speedup_step(B, row.p);
        Measured m = measure_max_forbidden(step.colouring_alg, host, opts);
        Rational chained = nth_root_roundup(z_pow_12() * row.bound, 12);
        trace.rows.push_back({step.colouring_alg.radius(), m.value, chained, m.tie_mass});
        trace.tables.push_back(std::move(step.colouring_alg));
    }
    return trace;
}

std::array<Rational, 3> zero_round_distribution(const AlgorithmTable& B) {
    require_node_table(B, "zero_round_distribution");
    if (B.radius() != 0) throw PreconditionError("zero_round_distribution: table must be 0-round");
    std::array<uint64_t, 3> counts{0, 0, 0};
    for (uint64_t key = 0; key < B.entry_count(); ++key) ++counts[B.entry(key)];
    std::array<Rational, 3> q;
    for (int c = 0; c < 3; ++c) q[c] = rat_pow2(B.key_bits(), static_cast<int64_t>(counts[c]));
    return q;
}

Rational zero_round_floor(const AlgorithmTable& B) {
    auto q = zero_round_distribution(B);
    Rational best(0);
    for (const Rational& qc : q) best = std::max(best, qc * qc);
    return best;
}

} // namespace sinkless
