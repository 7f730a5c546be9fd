#ifndef BID_BITSTR_HPP
#define BID_BITSTR_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "bid/nat.hpp"

namespace bid {

// A finite binary string, i.e. a finite set of bit positions. Bit 0 is least
// significant; the representation is always canonical: no stored leading
// zeros, so length() = 1 + highest set position (0 when empty). Backed by a
// dense word vector because operator stepping and state equality dominate
// the engine's runtime.
class BitStr {
public:
    BitStr() = default;

    static BitStr from_nat(const Nat& value);
    static BitStr from_positions(std::initializer_list<std::size_t> bits);
    // Parses "0b"-prefixed, MSB-first digits, e.g. "0b101" = {0,2}.
    static BitStr from_literal(const std::string& text);
    static BitStr ones(std::size_t n);  // One(n): bits 0..n-1

    bool empty() const { return words_.empty(); }
    // |X| = 1 + max set position, 0 for the empty string.
    std::size_t length() const;
    bool test(std::size_t i) const;
    std::size_t popcount() const;
    Nat to_nat() const;

    void set(std::size_t i, bool value = true);  // keeps canonical form
    void clear() { words_.clear(); }
    // Drops all bits at positions >= width.
    BitStr clipped(std::size_t width) const;

    bool operator==(const BitStr& o) const { return words_ == o.words_; }
    // Numeric order; on canonical strings this coincides with string order.
    std::strong_ordering operator<=>(const BitStr& o) const;

    std::string to_literal() const;  // "0b0" for the empty string
    std::string to_hex() const;      // minimal lowercase hex of the value
    static BitStr from_hex(const std::string& text);

    std::size_t hash() const;

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    void trim();
    std::vector<std::uint64_t> words_;
};

struct BitStrHash {
    std::size_t operator()(const BitStr& s) const { return s.hash(); }
};

// A finite set of strings: the explicit third-order container used for
// visited-state sets and numones. std::set keeps iteration deterministic.
struct HyperStr {
    std::set<BitStr> members;

    bool contains(const BitStr& s) const { return members.count(s) != 0; }
    void insert(const BitStr& s) { members.insert(s); }
    std::size_t size() const { return members.size(); }
    bool operator==(const HyperStr& o) const { return members == o.members; }
};

}  // namespace bid

#endif
