#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "camo/netlist.hpp"

namespace camo {

// Packed bit sequence; stimulus and response container.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(int width, bool fill = false)
        : width_(width),
          words_(static_cast<std::size_t>((width + 63) / 64),
                 fill ? ~std::uint64_t{0} : 0) {
        trim();
    }

    int width() const { return width_; }
    bool get(int i) const {
        return (words_[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1;
    }
    void set(int i, bool v) {
        std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (v)
            words_[static_cast<std::size_t>(i) / 64] |= mask;
        else
            words_[static_cast<std::size_t>(i) / 64] &= ~mask;
    }

    std::string to_bit_string() const;  // MSB-last (index 0 first)
    std::string to_hex() const;
    static BitVector from_bit_string(std::string_view bits);

    bool operator==(const BitVector&) const = default;

private:
    void trim() {
        int rem = width_ % 64;
        if (rem && !words_.empty())
            words_.back() &= (~std::uint64_t{0}) >> (64 - rem);
    }

    int width_ = 0;
    std::vector<std::uint64_t> words_;
};

// Levelized functional simulator; evaluates 64 stimuli per pass. The
// netlist must stay alive (and unchanged) while the simulator is in use.
class Simulator {
public:
    explicit Simulator(const Netlist& netlist);

    // Single stimulus; width must equal the PI count.
    BitVector run(const BitVector& stimulus) const;

    // 64-lane evaluation: pi_words[i] holds bit j = value of PI i in lane j.
    // Returns one word per primary output.
    std::vector<std::uint64_t> run_words(std::span<const std::uint64_t> pi_words) const;

    const Netlist& netlist() const { return *netlist_; }

private:
    const Netlist* netlist_;
    std::vector<GateId> order_;
};

BitVector simulate(const Netlist& netlist, const BitVector& stimulus);

}  // namespace camo
