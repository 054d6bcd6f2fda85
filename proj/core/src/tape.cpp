#include "sinkless/tape.hpp"

#include "sinkless/errors.hpp"
#include "sinkless/rng.hpp"

#include <fstream>
#include <sstream>

namespace sinkless {

RandomTape::RandomTape(int node_count, int bits_per_node, std::vector<uint64_t> words)
    : bits_(bits_per_node), words_(std::move(words)) {
    if (bits_ < 1 || bits_ > 64) throw PreconditionError("RandomTape: bits_per_node must be in [1, 64]");
    if (static_cast<int>(words_.size()) != node_count)
        throw PreconditionError("RandomTape: word count does not match node count");
    if (bits_ < 64)
        for (auto& w : words_) w &= (uint64_t(1) << bits_) - 1;
}

uint64_t RandomTape::y_key(int v) const {
    int yb = y_bits();
    uint64_t key = 0;
    for (int j = 0; j < yb; ++j) key |= static_cast<uint64_t>(bit(v, 2 * j + 1)) << (yb - 1 - j);
    return key;
}

uint64_t RandomTape::z_word(int v) const {
    int zb = z_bits();
    uint64_t w = 0;
    for (int j = 0; j < zb; ++j) w |= static_cast<uint64_t>(bit(v, 2 * j)) << j;
    return w;
}

uint64_t RandomTape::lex_key(int v) const {
    uint64_t key = 0;
    for (int i = 0; i < bits_; ++i) key |= static_cast<uint64_t>(bit(v, i)) << (bits_ - 1 - i);
    return key;
}

RandomTape sample_tape(int node_count, int bits_per_node, uint64_t seed) {
    if (bits_per_node < 1 || bits_per_node > 64)
        throw PreconditionError("sample_tape: bits_per_node must be in [1, 64]");
    std::vector<uint64_t> words(node_count);
    for (int v = 0; v < node_count; ++v)
        words[v] = stream_u64(seed, {rng_tag::tape, static_cast<uint64_t>(v)});
    return RandomTape(node_count, bits_per_node, std::move(words));
}

namespace {

std::string hex_word(uint64_t w, int bits) {
    int nibbles = (bits + 3) / 4;
    std::ostringstream s;
    s << std::hex;
    for (int i = nibbles - 1; i >= 0; --i) s << ((w >> (4 * i)) & 0xf);
    return s.str();
}

uint64_t parse_hex(const std::string& tok, const std::string& file, int line) {
    uint64_t w = 0;
    if (tok.empty() || tok.size() > 16) throw ParseError(file, line, "bad hex word '" + tok + "'");
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

RandomTape parse_tape(std::istream& in, const std::string& name) {
    std::string line;
    int no = 0, n = -1, r = -1, next = 0;
    std::vector<uint64_t> words;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream s(line);
        if (n < 0) {
            if (!(s >> n >> r)) {
                std::string probe;
                std::istringstream p(line);
                if (p >> probe) throw ParseError(name, no, "header must be 'n R'");
                n = -1;
                continue;
            }
            words.reserve(n);
            continue;
        }
        std::string tok;
        if (!(s >> tok)) continue;
        if (next >= n) throw ParseError(name, no, "more tape words than nodes");
        words.push_back(parse_hex(tok, name, no));
        ++next;
    }
    if (n < 0) throw ParseError(name, no ? no : 1, "missing header line 'n R'");
    if (next != n) throw ParseError(name, no, "expected " + std::to_string(n) + " tape words");
    return RandomTape(n, r, std::move(words));
}

RandomTape read_tape_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return parse_tape(in, path);
}

void write_tape(std::ostream& out, const RandomTape& tape, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << "\n";
    out << tape.node_count() << " " << tape.bits_per_node() << "\n";
    for (int v = 0; v < tape.node_count(); ++v) out << hex_word(tape.word(v), tape.bits_per_node()) << "\n";
}

void write_tape_file(const std::string& path, const RandomTape& tape, const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    write_tape(out, tape, comment);
}

} // namespace sinkless
