#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "onell/errors.hpp"

namespace onell {

class RandomSource;

/// OneMax value of a search point, in [0, n].
using Fitness = int;

/// Fixed-length binary genome. The length is set at construction and never changes.
class BitString {
public:
    explicit BitString(int n);

    static BitString zeros(int n) { return BitString(n); }
    static BitString ones(int n);
    static BitString random(int n, RandomSource& rng);
    /// Parses a string of '0'/'1' characters, most significant position first.
    static BitString parse(std::string_view bits);

    int size() const { return static_cast<int>(bits_.size()); }
    bool operator[](int i) const { return bits_[static_cast<std::size_t>(i)] != 0; }

    void flip(int i) { bits_[static_cast<std::size_t>(i)] ^= 1U; }
    void set(int i, bool value) { bits_[static_cast<std::size_t>(i)] = value ? 1U : 0U; }

    BitString complement() const;
    std::string to_string() const;

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Number of one-bits, i.e. OneMax against the all-ones target.
Fitness onemax(const BitString& x);

/// Number of positions in which x and y differ. Throws DimensionError on length mismatch.
int hamming(const BitString& x, const BitString& y);

/// Positionwise exclusive-or of two equally long strings.
BitString xor_pattern(const BitString& x, const BitString& y);

} // namespace onell
