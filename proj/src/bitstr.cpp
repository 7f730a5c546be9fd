#include "bid/bitstr.hpp"

#include <algorithm>
#include <bit>

#include "bid/errors.hpp"

namespace bid {

void BitStr::trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

BitStr BitStr::from_nat(const Nat& value) {
    if (value < 0) throw Error("BitStr::from_nat: negative value");
    BitStr r;
    Nat v = value;
    while (v != 0) {
        r.words_.push_back(static_cast<std::uint64_t>(v & Nat(UINT64_MAX)));
        v >>= 64;
    }
    return r;
}

BitStr BitStr::from_positions(std::initializer_list<std::size_t> bits) {
    BitStr r;
    for (std::size_t i : bits) r.set(i);
    return r;
}

BitStr BitStr::from_literal(const std::string& text) {
    if (text.size() < 3 || text[0] != '0' || text[1] != 'b')
        throw Error("bad bit-string literal: " + text);
    BitStr r;
    std::size_t ndigits = text.size() - 2;
    for (std::size_t k = 0; k < ndigits; ++k) {
        char c = text[2 + k];
        if (c != '0' && c != '1') throw Error("bad bit-string literal: " + text);
        if (c == '1') r.set(ndigits - 1 - k);  // MSB first
    }
    return r;
}

BitStr BitStr::ones(std::size_t n) {
    BitStr r;
    if (n == 0) return r;
    r.words_.assign((n + 63) / 64, ~std::uint64_t{0});
    std::size_t tail = n % 64;
    if (tail != 0) r.words_.back() = (~std::uint64_t{0}) >> (64 - tail);
    return r;
}

std::size_t BitStr::length() const {
    if (words_.empty()) return 0;
    std::size_t top = 63 - std::countl_zero(words_.back());
    return (words_.size() - 1) * 64 + top + 1;
}

bool BitStr::test(std::size_t i) const {
    std::size_t w = i / 64;
    if (w >= words_.size()) return false;
    return (words_[w] >> (i % 64)) & 1u;
}

std::size_t BitStr::popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

Nat BitStr::to_nat() const {
    Nat v = 0;
    for (std::size_t k = words_.size(); k-- > 0;) {
        v <<= 64;
        v |= Nat(words_[k]);
    }
    return v;
}

void BitStr::set(std::size_t i, bool value) {
    std::size_t w = i / 64;
    if (value) {
        if (w >= words_.size()) words_.resize(w + 1, 0);
        words_[w] |= std::uint64_t{1} << (i % 64);
    } else {
        if (w < words_.size()) {
            words_[w] &= ~(std::uint64_t{1} << (i % 64));
            trim();
        }
    }
}

BitStr BitStr::clipped(std::size_t width) const {
    if (length() <= width) return *this;
    BitStr r;
    std::size_t nwords = (width + 63) / 64;
    r.words_.assign(words_.begin(), words_.begin() + std::min(nwords, words_.size()));
    std::size_t tail = width % 64;
    if (tail != 0 && r.words_.size() == nwords) r.words_.back() &= (~std::uint64_t{0}) >> (64 - tail);
    r.trim();
    return r;
}

std::strong_ordering BitStr::operator<=>(const BitStr& o) const {
    if (words_.size() != o.words_.size()) return words_.size() <=> o.words_.size();
    for (std::size_t k = words_.size(); k-- > 0;)
        if (words_[k] != o.words_[k]) return words_[k] <=> o.words_[k];
    return std::strong_ordering::equal;
}

std::string BitStr::to_literal() const {
    std::size_t n = length();
    if (n == 0) return "0b0";
    std::string s = "0b";
    for (std::size_t i = n; i-- > 0;) s += test(i) ? '1' : '0';
    return s;
}

std::string BitStr::to_hex() const {
    if (words_.empty()) return "0";
    static const char* digits = "0123456789abcdef";
    std::string s;
    bool leading = true;
    for (std::size_t k = words_.size(); k-- > 0;) {
        for (int shift = 60; shift >= 0; shift -= 4) {
            unsigned d = (words_[k] >> shift) & 0xf;
            if (leading && d == 0) continue;
            leading = false;
            s += digits[d];
        }
    }
    return s;
}

BitStr BitStr::from_hex(const std::string& text) {
    BitStr r;
    if (text.empty()) throw Error("empty hex string");
    for (std::size_t k = 0; k < text.size(); ++k) {
        char c = text[text.size() - 1 - k];
        unsigned d;
        if (c >= '0' && c <= '9') d = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') d = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') d = static_cast<unsigned>(c - 'A' + 10);
        else throw Error("bad hex digit in: " + text);
        for (unsigned b = 0; b < 4; ++b)
            if ((d >> b) & 1u) r.set(4 * k + b);
    }
    return r;
}

std::size_t BitStr::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : words_) h = (h ^ w) * 0x100000001b3ull;
    return h;
}

}  // namespace bid
