#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace arclab {

/// Fixed-width bit-vector used by the search kernels.
template <std::size_t W>
struct Bits {
    std::array<std::uint64_t, W> w{};

    static Bits from(std::span<const std::uint64_t> words) {
        Bits b;
        for (std::size_t i = 0; i < W && i < words.size(); ++i) b.w[i] = words[i];
        return b;
    }
    static Bits prefix(std::size_t n) {  // bits [0, n)
        Bits b;
        for (std::size_t i = 0; i < W; ++i) {
            const std::size_t lo = i * 64;
            if (n >= lo + 64)
                b.w[i] = ~std::uint64_t{0};
            else if (n > lo)
                b.w[i] = (std::uint64_t{1} << (n - lo)) - 1;
        }
        return b;
    }

    void set(std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { w[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1u; }

    bool any() const {
        for (auto x : w)
            if (x) return true;
        return false;
    }
    std::uint32_t count() const {
        std::uint32_t n = 0;
        for (auto x : w) n += static_cast<std::uint32_t>(std::popcount(x));
        return n;
    }
    bool intersects(const Bits& o) const {
        for (std::size_t i = 0; i < W; ++i)
            if (w[i] & o.w[i]) return true;
        return false;
    }
    std::uint32_t count_and(const Bits& o) const {
        std::uint32_t n = 0;
        for (std::size_t i = 0; i < W; ++i) n += static_cast<std::uint32_t>(std::popcount(w[i] & o.w[i]));
        return n;
    }

    Bits& operator&=(const Bits& o) {
        for (std::size_t i = 0; i < W; ++i) w[i] &= o.w[i];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (std::size_t i = 0; i < W; ++i) w[i] |= o.w[i];
        return *this;
    }
    Bits& andnot(const Bits& o) {
        for (std::size_t i = 0; i < W; ++i) w[i] &= ~o.w[i];
        return *this;
    }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

    /// Calls f(index) for each set bit in increasing order.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < W; ++i) {
            std::uint64_t x = w[i];
            while (x) {
                f(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
                x &= x - 1;
            }
        }
    }
    /// Lowest set bit; W * 64 if empty.
    std::size_t first() const {
        for (std::size_t i = 0; i < W; ++i)
            if (w[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w[i]));
        return W * 64;
    }
};

/// Calls f(std::integral_constant<std::size_t, W>{}) with the smallest
/// supported W holding `bits` bits.
template <class F>
decltype(auto) with_word_count(std::size_t bits, F&& f) {
    const std::size_t words = (bits + 63) / 64;
    if (words <= 1) return f(std::integral_constant<std::size_t, 1>{});
    if (words <= 2) return f(std::integral_constant<std::size_t, 2>{});
    if (words <= 3) return f(std::integral_constant<std::size_t, 3>{});
    if (words <= 4) return f(std::integral_constant<std::size_t, 4>{});
    if (words <= 8) return f(std::integral_constant<std::size_t, 8>{});
    if (words <= 16) return f(std::integral_constant<std::size_t, 16>{});
    if (words <= 32) return f(std::integral_constant<std::size_t, 32>{});
    throw std::invalid_argument("bit-vector of " + std::to_string(bits) + " bits is too wide for the search kernels");
}

}  // namespace arclab
