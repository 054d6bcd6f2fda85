#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sinkless {

// Per-node random bit string of fixed length R (the finite stand-in for the
// model's uniform real x(v)). Bit 0 is the first coin flip. The odd-index
// bits form the y(v) substream and the even-index bits the z(v) substream.
class RandomTape {
public:
    RandomTape() = default;
    RandomTape(int node_count, int bits_per_node, std::vector<uint64_t> words);

    int node_count() const { return static_cast<int>(words_.size()); }
    int bits_per_node() const { return bits_; }

    uint64_t word(int v) const { return words_[v]; }
    int bit(int v, int i) const { return static_cast<int>((words_[v] >> i) & 1u); }

    // y substream packed as a lexicographic comparison key: the first y-bit
    // is the most significant, so integer order == lexicographic order.
    uint64_t y_key(int v) const;
    int y_bits() const { return bits_ / 2; }

    // z substream packed as an ordinary tape word (bit j = coin 2j).
    uint64_t z_word(int v) const;
    int z_bits() const { return (bits_ + 1) / 2; }

    // Full word packed as a lexicographic key (bit 0 most significant).
    uint64_t lex_key(int v) const;

private:
    int bits_ = 0;
    std::vector<uint64_t> words_;
};

// Independent uniform bits, deterministic given seed; node v's word comes
// from the stream keyed (seed, tape, v).
RandomTape sample_tape(int node_count, int bits_per_node, uint64_t seed);

// --- text format: header "n R", then one hex word per node in index order.
RandomTape parse_tape(std::istream& in, const std::string& name = "<tape>");
RandomTape read_tape_file(const std::string& path);
void write_tape(std::ostream& out, const RandomTape& tape, const std::string& comment = "");
void write_tape_file(const std::string& path, const RandomTape& tape, const std::string& comment = "");

} // namespace sinkless
