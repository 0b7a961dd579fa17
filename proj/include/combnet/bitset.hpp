#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace combnet {

// Small sets over [0, 64) stored in one machine word. The tag keeps user sets
// and relay sets from being mixed up. Element ids are 0-based in code and
// printed 1-based.
template <class Tag>
class BitSet64 {
public:
    constexpr BitSet64() = default;
    constexpr explicit BitSet64(std::uint64_t bits) : bits_(bits) {}

    /// Build from 0-based element ids.
    static BitSet64 of(std::initializer_list<int> ids) {
        BitSet64 s;
        for (int id : ids) s.insert(id);
        return s;
    }
    /// Build from 1-based element ids (the notation used in printed output).
    static BitSet64 of1(std::initializer_list<int> ids) {
        BitSet64 s;
        for (int id : ids) s.insert(id - 1);
        return s;
    }
    static BitSet64 of1(const std::vector<int>& ids) {
        BitSet64 s;
        for (int id : ids) s.insert(id - 1);
        return s;
    }
    /// {0, ..., n-1}
    static constexpr BitSet64 range(int n) {
        return BitSet64(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(int id) const { return (bits_ >> id) & 1u; }
    constexpr void insert(int id) { bits_ |= std::uint64_t{1} << id; }
    constexpr void erase(int id) { bits_ &= ~(std::uint64_t{1} << id); }
    constexpr bool subset_of(BitSet64 o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool intersects(BitSet64 o) const { return (bits_ & o.bits_) != 0; }
    /// Smallest element, or -1 when empty.
    constexpr int first() const { return bits_ ? std::countr_zero(bits_) : -1; }

    constexpr BitSet64 operator|(BitSet64 o) const { return BitSet64(bits_ | o.bits_); }
    constexpr BitSet64 operator&(BitSet64 o) const { return BitSet64(bits_ & o.bits_); }
    constexpr BitSet64 minus(BitSet64 o) const { return BitSet64(bits_ & ~o.bits_); }
    constexpr BitSet64& operator|=(BitSet64 o) { bits_ |= o.bits_; return *this; }
    constexpr BitSet64& operator&=(BitSet64 o) { bits_ &= o.bits_; return *this; }
    constexpr auto operator<=>(const BitSet64&) const = default;

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(size());
        for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }
    /// 1-based ids, ascending.
    std::vector<int> ids1() const {
        auto e = elements();
        for (int& x : e) ++x;
        return e;
    }
    /// "{1,2,4}"
    std::string str() const {
        std::string s = "{";
        bool firstItem = true;
        for (int id : elements()) {
            if (!firstItem) s += ',';
            s += std::to_string(id + 1);
            firstItem = false;
        }
        return s + "}";
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::uint64_t b = bits_; b; b &= b - 1) f(std::countr_zero(b));
    }

private:
    std::uint64_t bits_ = 0;
};

struct UserTag {};
struct RelayTag {};
using UserSet = BitSet64<UserTag>;
using RelaySet = BitSet64<RelayTag>;

/// Calls f(mask) for every size-k subset of {0..n-1} in increasing numeric order
/// (which is colexicographic order of the subsets).
template <class F>
void for_each_k_subset(int n, int k, F&& f) {
    if (k < 0 || k > n) return;
    if (k == 0) {
        f(std::uint64_t{0});
        return;
    }
    std::uint64_t s = (k == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
    const std::uint64_t limit = (n == 64) ? 0 : (std::uint64_t{1} << n);
    while (true) {
        f(s);
        // Gosper's hack
        std::uint64_t c = s & (~s + 1);
        std::uint64_t r = s + c;
        if (r == 0 || (limit && r >= limit)) break;
        s = (((r ^ s) >> 2) / c) | r;
        if (limit && s >= limit) break;
    }
}

/// Calls f(sub) for every subset of `mask`, including the empty set and mask itself.
template <class F>
void for_each_subset_of(std::uint64_t mask, F&& f) {
    std::uint64_t sub = mask;
    while (true) {
        f(sub);
        if (sub == 0) break;
        sub = (sub - 1) & mask;
    }
}

} // namespace combnet
