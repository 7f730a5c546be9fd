#include "bid/funcs.hpp"

#include "bid/errors.hpp"

namespace bid {

Nat pair(const Nat& x, const Nat& y) {
    Nat s = x + y;
    return s * (s + 1) + 2 * y;
}

BitStr component(const BitStr& z, const Nat& x) {
    BitStr r;
    Nat len = z.length();
    for (Nat i = 0; i < len; ++i) {
        Nat p = pair(x, i);
        if (p >= len) break;  // <x,i> is increasing in i
        if (z.test(to_u64_checked(p, "component index"))) r.set(to_u64_checked(i, "component bit"));
    }
    return r;
}

Nat seq_elem(const BitStr& z, const Nat& x) {
    Nat len = z.length();
    for (Nat y = 0; y < len; ++y) {
        Nat p = pair(x, y);
        if (p >= len) break;
        if (z.test(to_u64_checked(p, "seq_elem index"))) return y;
    }
    return len;
}

BitStr string_pair(const BitStr& x0, const BitStr& x1) {
    BitStr r;
    for (std::size_t j = 0; j < x0.length(); ++j)
        if (x0.test(j)) r.set(to_u64_checked(pair(0, j), "string_pair index"));
    for (std::size_t j = 0; j < x1.length(); ++j)
        if (x1.test(j)) r.set(to_u64_checked(pair(1, j), "string_pair index"));
    return r;
}

BitStr string_unpair(const BitStr& z, int which) {
    return component(z, which);
}

BitStr string_succ(const BitStr& x) {
    return BitStr::from_nat(x.to_nat() + 1);
}

BitStr string_add(const BitStr& x, const BitStr& y) {
    return BitStr::from_nat(x.to_nat() + y.to_nat());
}

bool string_less(const BitStr& x, const BitStr& y) { return x < y; }
bool string_leq(const BitStr& x, const BitStr& y) { return x <= y; }

BitStr string_pred(const BitStr& x) {
    if (x.empty()) return x;
    return BitStr::from_nat(x.to_nat() - 1);
}

BitStr one_string(const Nat& y) {
    return BitStr::ones(to_u64_checked(y, "one_string length"));
}

BitStr last_bits(const Nat& j, const BitStr& y) {
    BitStr r;
    Nat len = y.length();
    Nat base = len > j ? len - j : Nat(0);
    for (Nat i = 0; i < j; ++i) {
        Nat src = base + i;
        if (src >= len) break;
        if (y.test(to_u64_checked(src, "last_bits index")))
            r.set(to_u64_checked(i, "last_bits bit"));
    }
    return r;
}

BitStr complement(const BitStr& y, const Nat& x) {
    std::size_t n = to_u64_checked(x, "complement width");
    BitStr r;
    for (std::size_t i = 0; i < n; ++i)
        if (!y.test(i)) r.set(i);
    return r;
}

BitStr string_sub(const BitStr& x, const BitStr& y) {
    if (x <= y) return BitStr{};
    return BitStr::from_nat(x.to_nat() - y.to_nat());
}

Nat val(const Nat& x, const BitStr& xs) {
    return last_bits(x, xs).to_nat();
}

Nat val_full(const BitStr& xs) { return xs.to_nat(); }

BitStr numones(const BitStr& y, const BitStr& x, const HyperStr& xs) {
    BitStr r = y;
    for (const BitStr& u : xs.members) {
        if (u < x) r = string_succ(r);
        else break;  // std::set iterates in increasing order
    }
    return r;
}

Nat exp_min(const Nat& x, const Nat& y) {
    // 2^x >= y exactly when x >= the bit length of y (and min{2^x,0} = 0)
    Nat ylen = BitStr::from_nat(y).length();
    if (x >= ylen) return y;
    return Nat(1) << to_u64_checked(x, "exp_min exponent");
}

Nat limited_sub(const Nat& x, const Nat& y) {
    return x > y ? Nat(x - y) : Nat(0);
}

}  // namespace bid
