#include "sinkless/table.hpp"

#include "sinkless/errors.hpp"
#include "sinkless/rng.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sinkless {

namespace {
constexpr int kDenseBits = 24;
}

AlgorithmTable::AlgorithmTable(CanonicalBall ball, OutputKind kind, int bits_per_node)
    : ball_(std::move(ball)), kind_(kind), R_(bits_per_node) {
    if (R_ < 1 || R_ > 32) throw PreconditionError("AlgorithmTable: bits_per_node must be in [1, 32]");
    long long bits = static_cast<long long>(R_) * ball_.address_count();
    if (bits > 62) throw ResourceError("AlgorithmTable: key space exceeds 62 bits");
    key_bits_ = static_cast<int>(bits);
    if (kind_ == OutputKind::direction && !ball_.is_edge_rooted())
        throw PreconditionError("AlgorithmTable: direction output needs an edge-rooted ball");
    if (kind_ == OutputKind::colour && ball_.is_edge_rooted())
        throw PreconditionError("AlgorithmTable: colour output needs a node-rooted ball");
    if (key_bits_ <= kDenseBits) dense_.assign(uint64_t(1) << key_bits_, 0xff);
}

uint8_t AlgorithmTable::entry(uint64_t key) const {
    if (!dense_.empty()) {
        uint8_t v = dense_[key];
        if (v == 0xff) throw PreconditionError("AlgorithmTable: entry not set (table must be total)");
        return v;
    }
    auto it = std::lower_bound(sparse_.begin(), sparse_.end(), key,
                               [](const auto& p, uint64_t k) { return p.first < k; });
    if (it == sparse_.end() || it->first != key)
        throw PreconditionError("AlgorithmTable: entry not set (table must be total)");
    return it->second;
}

void AlgorithmTable::set_entry(uint64_t key, uint8_t out) {
    int limit = kind_ == OutputKind::colour ? ball_.d() : 3;
    if (out >= limit) throw PreconditionError("AlgorithmTable: output value out of range");
    if (!dense_.empty()) {
        dense_[key] = out;
        return;
    }
    auto it = std::lower_bound(sparse_.begin(), sparse_.end(), key,
                               [](const auto& p, uint64_t k) { return p.first < k; });
    if (it != sparse_.end() && it->first == key) it->second = out;
    else sparse_.insert(it, {key, out});
}

bool AlgorithmTable::operator==(const AlgorithmTable& o) const {
    return ball_ == o.ball_ && kind_ == o.kind_ && R_ == o.R_ && dense_ == o.dense_ && sparse_ == o.sparse_;
}

AlgorithmTable random_node_table(int d, int radius, int bits_per_node, uint64_t seed) {
    AlgorithmTable t(CanonicalBall::node_rooted(d, radius), OutputKind::colour, bits_per_node);
    if (t.key_bits() > kDenseBits) throw ResourceError("random_node_table: key space beyond dense budget");
    for (uint64_t key = 0; key < t.entry_count(); ++key)
        t.set_entry(key, static_cast<uint8_t>(stream_below(seed, {rng_tag::table, key}, d)));
    return t;
}

uint64_t gather_key(const RandomTape& tape, std::span<const int> placement, int R) {
    uint64_t key = 0;
    for (size_t i = 0; i < placement.size(); ++i)
        key |= tape.word(placement[i]) << (i * R);
    return key;
}

Colouring eval_node_table(const AlgorithmTable& table, const EdgeColouredGraph& g, const RandomTape& tape) {
    if (tape.bits_per_node() != table.bits_per_node())
        throw PreconditionError("eval_node_table: tape width does not match table");
    if (g.degree() != table.ball().d()) throw PreconditionError("eval_node_table: degree mismatch");
    int t = table.radius();
    require_girth_above(g, 2 * t, "eval_node_table radius " + std::to_string(t));
    Colouring out;
    out.colour.resize(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) {
        auto placement = place_addresses(g, table.ball(), v);
        out.colour[v] = table.entry(gather_key(tape, placement, table.bits_per_node()));
    }
    return out;
}

OrientationEval eval_edge_algorithm(const EdgeAlgorithm& alg, const EdgeColouredGraph& g,
                                    const RandomTape& tape) {
    if (alg.d() != g.degree()) throw PreconditionError("eval_edge_algorithm: degree mismatch");
    if (tape.bits_per_node() != alg.bits_per_node())
        throw PreconditionError("eval_edge_algorithm: tape width does not match tables");
    int t = alg.radius();
    require_girth_above(g, 2 * t + 1, "eval_edge_algorithm radius " + std::to_string(t));
    OrientationEval out;
    out.orientation.toward_max.resize(g.edge_count());
    for (int i = 0; i < g.edge_count(); ++i) {
        const ColouredEdge& e = g.edge(i);
        const AlgorithmTable& table = alg.by_colour.at(e.colour);
        auto placement = place_addresses(g, table.ball(), e.u, e.v); // side 0 = smaller endpoint
        EdgeOut dir = table.direction(gather_key(tape, placement, alg.bits_per_node()));
        if (dir == EdgeOut::tie) {
            out.tie_edges.push_back(i);
            out.orientation.toward_max[i] = 0; // resolved toward the smaller endpoint
        } else {
            out.orientation.toward_max[i] = dir == EdgeOut::to_side1 ? 1 : 0;
        }
    }
    return out;
}

// --- file format -------------------------------------------------------------

namespace {

std::string hex_of(uint64_t key, int bits) {
    int nibbles = std::max(1, (bits + 3) / 4);
    std::ostringstream s;
    s << std::hex;
    for (int i = nibbles - 1; i >= 0; --i) s << ((key >> (4 * i)) & 0xf);
    return s.str();
}

uint64_t hex_to_u64(const std::string& tok, const std::string& file, int line) {
    uint64_t w = 0;
    if (tok.empty() || tok.size() > 16) throw ParseError(file, line, "bad hex key '" + tok + "'");
    for (char c : tok) {
        int digit;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
        else throw ParseError(file, line, std::string("bad hex digit '") + c + "'");
        w = (w << 4) | static_cast<uint64_t>(digit);
    }
    return w;
}

} // namespace

AlgorithmTable parse_table(std::istream& in, const std::string& name) {
    std::string line;
    int no = 0;
    bool have_header = false;
    int d = 0, t = 0, R = 0, root_colour = -1;
    std::string root_kind, out_kind;
    AlgorithmTable table;
    uint64_t seen = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream s(line);
        if (!have_header) {
            if (!(s >> d >> t >> root_kind)) {
                std::string probe;
                std::istringstream p(line);
                if (p >> probe) throw ParseError(name, no, "header must be 'd t root_kind [root_colour] output_kind R'");
                continue;
            }
            if (root_kind == "edge") {
                if (!(s >> root_colour)) throw ParseError(name, no, "edge-rooted header needs root_colour");
            } else if (root_kind != "node") {
                throw ParseError(name, no, "root_kind must be 'node' or 'edge'");
            }
            if (!(s >> out_kind >> R)) throw ParseError(name, no, "header missing output_kind or R");
            OutputKind kind;
            if (out_kind == "colour") kind = OutputKind::colour;
            else if (out_kind == "direction") kind = OutputKind::direction;
            else throw ParseError(name, no, "output_kind must be 'colour' or 'direction'");
            CanonicalBall ball = root_kind == "node" ? CanonicalBall::node_rooted(d, t)
                                                     : CanonicalBall::edge_rooted(d, t, root_colour);
            table = AlgorithmTable(std::move(ball), kind, R);
            if (table.key_bits() > 24) throw ResourceError(name + ": table key space beyond the 24-bit file budget");
            have_header = true;
            continue;
        }
        std::string key_tok, out_tok;
        if (!(s >> key_tok)) continue;
        if (!(s >> out_tok)) throw ParseError(name, no, "entry line must be 'tape_hex output'");
        uint64_t key = hex_to_u64(key_tok, name, no);
        if (key >= table.entry_count()) throw ParseError(name, no, "tape key out of range");
        uint8_t out;
        if (table.output_kind() == OutputKind::colour) {
            int c;
            std::istringstream o(out_tok);
            if (!(o >> c) || c < 0 || c >= d) throw ParseError(name, no, "colour output out of range");
            out = static_cast<uint8_t>(c);
        } else {
            if (out_tok == "0") out = static_cast<uint8_t>(EdgeOut::to_side0);
            else if (out_tok == "1") out = static_cast<uint8_t>(EdgeOut::to_side1);
            else if (out_tok == "tie") out = static_cast<uint8_t>(EdgeOut::tie);
            else throw ParseError(name, no, "direction output must be 0, 1 or tie");
        }
        table.set_entry(key, out);
        ++seen;
    }
    if (!have_header) throw ParseError(name, no ? no : 1, "missing table header");
    if (seen < table.entry_count())
        throw ParseError(name, no, "table not total: " + std::to_string(seen) + " of " +
                                       std::to_string(table.entry_count()) + " entries");
    return table;
}

AlgorithmTable read_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return parse_table(in, path);
}

void write_table(std::ostream& out, const AlgorithmTable& t, const std::string& comment) {
    if (t.key_bits() > 24) throw ResourceError("write_table: table key space beyond the 24-bit file budget");
    if (!comment.empty()) out << "# " << comment << "\n";
    const CanonicalBall& b = t.ball();
    out << b.d() << " " << t.radius() << " " << (b.is_edge_rooted() ? "edge " : "node ");
    if (b.is_edge_rooted()) out << b.root_colour() << " ";
    out << (t.output_kind() == OutputKind::colour ? "colour" : "direction") << " " << t.bits_per_node() << "\n";
    for (uint64_t key = 0; key < t.entry_count(); ++key) {
        out << hex_of(key, t.key_bits()) << " ";
        if (t.output_kind() == OutputKind::colour) {
            out << static_cast<int>(t.entry(key));
        } else {
            EdgeOut e = t.direction(key);
            out << (e == EdgeOut::tie ? "tie" : e == EdgeOut::to_side1 ? "1" : "0");
        }
        out << "\n";
    }
}

void write_table_file(const std::string& path, const AlgorithmTable& t, const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    write_table(out, t, comment);
}

} // namespace sinkless
