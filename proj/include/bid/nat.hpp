#ifndef BID_NAT_HPP
#define BID_NAT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace bid {

// Arbitrary-precision natural number. Pairing grows quadratically and the
// trace-operator widths overflow 64 bits quickly, so all number-sort values
// are unbounded. Subtraction is never used directly; only monus (see funcs).
using Nat = boost::multiprecision::cpp_int;

inline std::uint64_t to_u64_checked(const Nat& n, const char* what);

}  // namespace bid

#include "bid/errors.hpp"

namespace bid {

inline std::uint64_t to_u64_checked(const Nat& n, const char* what) {
    if (n < 0 || n > Nat(UINT64_MAX)) throw ResourceLimit(std::string(what) + ": value out of range");
    return static_cast<std::uint64_t>(n);
}

}  // namespace bid

#endif
