#ifndef BID_FUNCS_HPP
#define BID_FUNCS_HPP

#include "bid/bitstr.hpp"
#include "bid/nat.hpp"

namespace bid {

// Direct implementations of the base theory's defined functions. Each also
// has a defining-axiom formula shipped as a data file; the two realizations
// are kept in agreement by the dual-realization tests, so these bodies stay
// free to use the obvious algorithm instead of unfolding the axioms.

// <x,y> = (x+y)(x+y+1) + 2y
Nat pair(const Nat& x, const Nat& y);

// Z^[x](i) <-> i < |Z| and Z(<x,i>)
BitStr component(const BitStr& z, const Nat& x);

// (Z)^x = least y < |Z| with Z(<x,y>), else |Z|
Nat seq_elem(const BitStr& z, const Nat& x);

// <X0,X1>(i) <-> exists j: (i=<0,j> and X0(j)) or (i=<1,j> and X1(j))
BitStr string_pair(const BitStr& x0, const BitStr& x1);
BitStr string_unpair(const BitStr& z, int which);  // = Z^[which]

// S(X): binary successor
BitStr string_succ(const BitStr& x);
// X + Y with ripple carry
BitStr string_add(const BitStr& x, const BitStr& y);
// numeric order on canonical strings
bool string_less(const BitStr& x, const BitStr& y);
bool string_leq(const BitStr& x, const BitStr& y);
// P(X): predecessor, with P(empty) = empty
BitStr string_pred(const BitStr& x);

// One(y)(i) <-> i < y
BitStr one_string(const Nat& y);
// Last(j,Y)(i) <-> i < j and Y(|Y| monus j + i): the j most significant bits
BitStr last_bits(const Nat& j, const BitStr& y);
// Y^C_x(i) <-> i < x and not Y(i)
BitStr complement(const BitStr& y, const Nat& x);
// X monus Y on strings: empty when X <= Y, else the numeric difference
BitStr string_sub(const BitStr& x, const BitStr& y);

// val(x, X): numeric value of the x most significant bits (the whole value
// once x >= |X|)
Nat val(const Nat& x, const BitStr& xs);
Nat val_full(const BitStr& xs);

// numones[Y](X, XS): Y advanced by one string successor for every member
// U of XS with U < X
BitStr numones(const BitStr& y, const BitStr& x, const HyperStr& xs);

// Exp(x,y) = min{2^x, y}
Nat exp_min(const Nat& x, const Nat& y);
// x monus y = max{0, x-y}
Nat limited_sub(const Nat& x, const Nat& y);

}  // namespace bid

#endif
