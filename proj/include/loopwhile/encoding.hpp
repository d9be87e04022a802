#pragma once

#include <utility>

#include "loopwhile/ast.hpp"

namespace lw {

// Cantor pairing: pair(a, b) = (a+b)(a+b+1)/2 + b, a bijection N^2 -> N.
Nat pair(const Nat& a, const Nat& b);
std::pair<Nat, Nat> unpair(const Nat& n);

// Bijection between kernel programs and N. With m the payload and
// tags 0..4 in the order AddAssign, SubAssign, Seq, Loop, While:
//   code = 5*m + tag
//   AddAssign(i,j,c): m = pair(i, pair(j, c))
//   SubAssign(i,j,c): m = pair(i, pair(j, c))
//   Seq(p,q):         m = pair(code(p), code(q))
//   Loop(i,b):        m = pair(i, code(b))
//   While(i,b):       m = pair(i, code(b))
// encode rejects sugar nodes; decode is total.
Nat encode(const Program& p);
Program decode(const Nat& code);

}  // namespace lw
