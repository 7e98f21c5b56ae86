#include "onell/genome.hpp"

#include <algorithm>

#include "onell/random.hpp"

namespace onell {

BitString::BitString(int n)
{
    if (n < 1)
        throw DimensionError("bit string length must be positive");
    bits_.assign(static_cast<std::size_t>(n), 0U);
}

BitString BitString::ones(int n)
{
    BitString x(n);
    std::fill(x.bits_.begin(), x.bits_.end(), 1U);
    return x;
}

BitString BitString::random(int n, RandomSource& rng)
{
    BitString x(n);
    for (auto& bit : x.bits_)
        bit = rng.coin() ? 1U : 0U;
    return x;
}

BitString BitString::parse(std::string_view bits)
{
    BitString x(static_cast<int>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw DomainError("bit string may only contain '0' and '1'");
        x.bits_[i] = bits[i] == '1' ? 1U : 0U;
    }
    return x;
}

BitString BitString::complement() const
{
    BitString y = *this;
    for (auto& bit : y.bits_)
        bit ^= 1U;
    return y;
}

std::string BitString::to_string() const
{
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i])
            s[i] = '1';
    return s;
}

Fitness onemax(const BitString& x)
{
    int count = 0;
    for (int i = 0; i < x.size(); ++i)
        count += x[i] ? 1 : 0;
    return count;
}

int hamming(const BitString& x, const BitString& y)
{
    if (x.size() != y.size())
        throw DimensionError("hamming: length mismatch");
    int d = 0;
    for (int i = 0; i < x.size(); ++i)
        d += x[i] != y[i] ? 1 : 0;
    return d;
}

BitString xor_pattern(const BitString& x, const BitString& y)
{
    if (x.size() != y.size())
        throw DimensionError("xor_pattern: length mismatch");
    BitString z(x.size());
    for (int i = 0; i < x.size(); ++i)
        z.set(i, x[i] != y[i]);
    return z;
}

} // namespace onell
