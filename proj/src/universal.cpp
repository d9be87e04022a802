#include "loopwhile/universal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "loopwhile/encoding.hpp"
#include "loopwhile/transforms.hpp"

namespace lw {
namespace {

// Ladder widths. Values up to 2^kFull take the fast straight-line path;
// quantities that live on the pairing diagonal (roughly square roots of
// stack values) use the narrower kHalf ladder. Beyond either range the
// chunked fallback loops keep everything total, just slower.
constexpr unsigned kFull = 128;
constexpr unsigned kHalf = 68;

using PV = std::vector<Program>;

Program ADD(const Nat& t, const Nat& s, const Nat& c) { return Program::add_assign(t, s, c); }
Program SUB(const Nat& t, const Nat& s, const Nat& c) { return Program::sub_assign(t, s, c); }
Program CP(const Nat& t, const Nat& s) { return Program::copy_assign(t, s); }
Program CN(const Nat& t, const Nat& c) { return Program::const_assign(t, c); }
Program WH(const Nat& g, PV body) { return Program::while_loop(g, Program::seq_of(std::move(body))); }
Program LP(const Nat& g, PV body) { return Program::loop(g, Program::seq_of(std::move(body))); }

Nat tri_of_pow2(unsigned k) {
  Nat p = pow2(k);
  return p * (p + 1) / 2;
}

// f := x; while f do body; zero f end -- runs body exactly once when
// x != 0. The trailing zeroing loop makes it safe for body to clobber f.
void e_if_nonzero(PV& o, const Nat& x, const Nat& f, PV body) {
  body.push_back(WH(f, PV{SUB(f, f, pow2(kFull))}));
  o.push_back(CP(f, x));
  o.push_back(WH(f, std::move(body)));
}

void e_if_zero(PV& o, const Nat& x, const Nat& f, const Nat& g, PV body) {
  o.push_back(CN(f, 1));
  e_if_nonzero(o, x, g, PV{CN(f, 0)});
  e_if_nonzero(o, f, g, std::move(body));
}

// acc := acc + b, peeling b off a scratch copy bit by bit, so acc == b
// aliasing still doubles correctly. Guards are recomputed from the
// remaining copy, which also caps each ladder level at one pass.
void e_add(PV& o, const Nat& acc, const Nat& b, const Nat& t, const Nat& u) {
  o.push_back(CP(t, b));
  Nat chunk = pow2(kFull);
  o.push_back(SUB(u, t, chunk - 1));
  o.push_back(WH(u, PV{SUB(t, t, chunk), ADD(acc, acc, chunk), SUB(u, t, chunk - 1)}));
  for (unsigned k = kFull; k-- > 0;) {
    Nat pk = pow2(k);
    o.push_back(SUB(u, t, pk - 1));
    o.push_back(WH(u, PV{SUB(t, t, pk), ADD(acc, acc, pk), SUB(u, t, pk - 1)}));
  }
}

// acc := acc monus b. Subtracting the pieces of b one power of two at a
// time clamps exactly like a single truncated subtraction would.
void e_monus(PV& o, const Nat& acc, const Nat& b, const Nat& t, const Nat& u) {
  o.push_back(CP(t, b));
  Nat chunk = pow2(kFull);
  o.push_back(SUB(u, t, chunk - 1));
  o.push_back(WH(u, PV{SUB(t, t, chunk), SUB(acc, acc, chunk), SUB(u, t, chunk - 1)}));
  for (unsigned k = kFull; k-- > 0;) {
    Nat pk = pow2(k);
    o.push_back(SUB(u, t, pk - 1));
    o.push_back(WH(u, PV{SUB(t, t, pk), SUB(acc, acc, pk), SUB(u, t, pk - 1)}));
  }
}

// dst := src * 2^k; the ladder over src is `lad` levels wide.
void e_shift(PV& o, const Nat& dst, const Nat& src, unsigned k, unsigned lad,
             const Nat& t, const Nat& u) {
  o.push_back(CP(t, src));
  o.push_back(CN(dst, 0));
  Nat chunk = pow2(lad);
  o.push_back(SUB(u, t, chunk - 1));
  o.push_back(WH(u, PV{SUB(t, t, chunk), ADD(dst, dst, pow2(lad + k)), SUB(u, t, chunk - 1)}));
  for (unsigned j = lad; j-- > 0;) {
    Nat pj = pow2(j);
    o.push_back(SUB(u, t, pj - 1));
    o.push_back(WH(u, PV{SUB(t, t, pj), ADD(dst, dst, pow2(j + k)), SUB(u, t, pj - 1)}));
  }
}

// q := n div c, r := n mod c for a host-side constant c >= 1.
void e_divmod_const(PV& o, const Nat& q, const Nat& r, const Nat& n, const Nat& c,
                    const Nat& u) {
  o.push_back(CP(r, n));
  o.push_back(CN(q, 0));
  Nat chunk = c * pow2(kFull);
  o.push_back(SUB(u, r, chunk - 1));
  o.push_back(WH(u, PV{SUB(r, r, chunk), ADD(q, q, pow2(kFull)), SUB(u, r, chunk - 1)}));
  for (unsigned k = kFull; k-- > 0;) {
    Nat ck = c * pow2(k);
    o.push_back(SUB(u, r, ck - 1));
    o.push_back(WH(u, PV{SUB(r, r, ck), ADD(q, q, pow2(k)), SUB(u, r, ck - 1)}));
  }
}

// res := pair(a, b). Builds tri(a+b) high bit first from the identity
// tri(p + 2^k) = tri(p) + p*2^k + tri(2^k), then adds b.
void e_pair(PV& o, const Nat& res, const Nat& a, const Nat& b,
            const Nat& s, const Nat& d, const Nat& p, const Nat& sh,
            const Nat& t, const Nat& u) {
  o.push_back(CP(s, a));
  e_add(o, s, b, t, u);
  o.push_back(CN(res, 0));
  o.push_back(CN(p, 0));
  o.push_back(CP(d, s));
  Nat chunk = pow2(kHalf);
  {
    PV body;
    body.push_back(SUB(d, d, chunk));
    e_shift(body, sh, p, kHalf, kHalf, t, u);
    e_add(body, res, sh, t, u);
    body.push_back(ADD(res, res, tri_of_pow2(kHalf)));
    body.push_back(ADD(p, p, chunk));
    body.push_back(SUB(u, d, chunk - 1));
    o.push_back(SUB(u, d, chunk - 1));
    o.push_back(WH(u, std::move(body)));
  }
  for (unsigned k = kHalf; k-- > 0;) {
    Nat pk = pow2(k);
    PV body;
    body.push_back(SUB(d, d, pk));
    e_shift(body, sh, p, k, kHalf, t, u);
    e_add(body, res, sh, t, u);
    body.push_back(ADD(res, res, tri_of_pow2(k)));
    body.push_back(ADD(p, p, pk));
    body.push_back(SUB(u, d, pk - 1));
    o.push_back(SUB(u, d, pk - 1));
    o.push_back(WH(u, std::move(body)));
  }
  e_add(o, res, b, t, u);
}

// a_out, b_out := unpair(n). Greedily grows p to the largest diagonal
// index with tri(p) <= n (tri is strictly increasing, so accepting a bit
// whenever tri(p + 2^k) <= n is exact), then splits the remainder.
void e_unpair(PV& o, const Nat& a_out, const Nat& b_out, const Nat& n,
              const Nat& p, const Nat& tr, const Nat& cand, const Nat& sh,
              const Nat& t, const Nat& u, const Nat& f, const Nat& g) {
  o.push_back(CN(p, 0));
  o.push_back(CN(tr, 0));
  Nat chunk = pow2(kHalf);
  {
    PV body;
    e_shift(body, sh, p, kHalf, kHalf, t, u);
    body.push_back(CP(cand, tr));
    e_add(body, cand, sh, t, u);
    body.push_back(ADD(cand, cand, tri_of_pow2(kHalf)));
    body.push_back(CP(g, cand));
    e_monus(body, g, n, t, u);
    body.push_back(CN(f, 0));
    e_if_zero(body, g, t, u, PV{CP(tr, cand), ADD(p, p, chunk), CN(f, 1)});
    o.push_back(CN(f, 1));
    o.push_back(WH(f, std::move(body)));
  }
  for (unsigned k = kHalf; k-- > 0;) {
    e_shift(o, sh, p, k, kHalf, t, u);
    o.push_back(CP(cand, tr));
    e_add(o, cand, sh, t, u);
    o.push_back(ADD(cand, cand, tri_of_pow2(k)));
    o.push_back(CP(g, cand));
    e_monus(o, g, n, t, u);
    e_if_zero(o, g, t, u, PV{CP(tr, cand), ADD(p, p, pow2(k))});
  }
  o.push_back(CP(b_out, n));
  e_monus(o, b_out, tr, t, u);
  o.push_back(CP(a_out, p));
  e_monus(o, a_out, b_out, t, u);
}

// res := a * b by decomposing b; res must be distinct from a and b.
void e_mul(PV& o, const Nat& res, const Nat& a, const Nat& b,
           const Nat& d, const Nat& sh, const Nat& t, const Nat& u) {
  o.push_back(CN(res, 0));
  o.push_back(CP(d, b));
  Nat chunk = pow2(kFull);
  e_shift(o, sh, a, kFull, kFull, t, u);
  {
    PV body;
    body.push_back(SUB(d, d, chunk));
    e_add(body, res, sh, t, u);
    body.push_back(SUB(u, d, chunk - 1));
    o.push_back(SUB(u, d, chunk - 1));
    o.push_back(WH(u, std::move(body)));
  }
  for (unsigned k = kFull; k-- > 0;) {
    Nat pk = pow2(k);
    PV body;
    body.push_back(SUB(d, d, pk));
    e_shift(body, sh, a, k, kFull, t, u);
    e_add(body, res, sh, t, u);
    body.push_back(SUB(u, d, pk - 1));
    o.push_back(SUB(u, d, pk - 1));
    o.push_back(WH(u, std::move(body)));
  }
}

// q := n div d, r := n mod d by repeated subtraction; d == 0 leaves
// q = 0 and r = n.
void e_divmod_var(PV& o, const Nat& q, const Nat& r, const Nat& n, const Nat& d,
                  const Nat& f, const Nat& g, const Nat& acc,
                  const Nat& t, const Nat& u, const Nat& v) {
  o.push_back(CN(q, 0));
  o.push_back(CP(r, n));
  PV outer;
  {
    PV step;
    step.push_back(CP(v, d));
    e_monus(step, v, r, t, u);  // v = d monus r; zero exactly when r >= d
    step.push_back(CN(acc, 0));
    PV accept;
    e_monus(accept, r, d, t, u);
    accept.push_back(ADD(q, q, 1));
    accept.push_back(CN(acc, 1));
    e_if_zero(step, v, g, t, std::move(accept));
    outer.push_back(CN(acc, 1));
    outer.push_back(WH(acc, std::move(step)));
  }
  e_if_nonzero(o, d, f, std::move(outer));
}

// ---- compact arithmetic ---------------------------------------------
//
// Second implementations of the same contracts, tuned for code size
// instead of speed: one unit per loop iteration, no ladders. Loop
// guards are maintained incrementally (u starts as r monus (c-1) and
// is then only ever decremented in place), so even when a variable
// holds a multi-megabit natural each interpreted step touches O(1)
// limbs. The diagonal program embeds this flavor: its code must be
// small enough to encode and feed back to itself, and fuel always runs
// out long before slow arithmetic could matter.

void c_add(PV& o, const Nat& acc, const Nat& b, const Nat& t, const Nat& u) {
  (void)u;
  o.push_back(CP(t, b));
  o.push_back(WH(t, PV{SUB(t, t, 1), ADD(acc, acc, 1)}));
}

void c_monus(PV& o, const Nat& acc, const Nat& b, const Nat& t, const Nat& u) {
  (void)u;
  o.push_back(CP(t, b));
  o.push_back(WH(t, PV{SUB(t, t, 1), SUB(acc, acc, 1)}));
}

void c_divmod_const(PV& o, const Nat& q, const Nat& r, const Nat& n, const Nat& c,
                    const Nat& u) {
  o.push_back(CP(r, n));
  o.push_back(CN(q, 0));
  // Invariant: u == r monus (c - 1); u >= 1 exactly when r >= c, and
  // subtracting c from both preserves it (both clamp together).
  o.push_back(SUB(u, r, c - 1));
  o.push_back(WH(u, PV{SUB(r, r, c), ADD(q, q, 1), SUB(u, u, c)}));
}

// res := pair(a, b) = tri(a + b) + b, summing the triangle row by row.
void c_pair(PV& o, const Nat& res, const Nat& a, const Nat& b,
            const Nat& s, const Nat& d, const Nat& p, const Nat& sh,
            const Nat& t, const Nat& u) {
  (void)p;
  (void)sh;
  o.push_back(CP(s, a));
  c_add(o, s, b, t, u);
  o.push_back(CN(res, 0));
  o.push_back(CP(d, s));
  PV body;
  body.push_back(CP(t, d));
  body.push_back(WH(t, PV{SUB(t, t, 1), ADD(res, res, 1)}));
  body.push_back(SUB(d, d, 1));
  o.push_back(WH(d, std::move(body)));
  c_add(o, res, b, t, u);
}

// Recovers p and b from n = tri(p) + b with b <= p by consuming one
// diagonal row at a time while the remainder still exceeds p.
void c_unpair(PV& o, const Nat& a_out, const Nat& b_out, const Nat& n,
              const Nat& p, const Nat& tr, const Nat& cand, const Nat& sh,
              const Nat& t, const Nat& u, const Nat& f, const Nat& g) {
  (void)tr;
  o.push_back(CN(p, 0));
  o.push_back(CP(cand, n));  // remainder n - tri(p)
  o.push_back(CN(f, 1));
  PV body;
  body.push_back(CP(g, cand));
  c_monus(body, g, p, t, u);
  body.push_back(CN(f, 0));
  {
    PV step;  // remainder >= p + 1: consume the next row
    step.push_back(CP(t, p));
    step.push_back(WH(t, PV{SUB(t, t, 1), SUB(cand, cand, 1)}));
    step.push_back(SUB(cand, cand, 1));
    step.push_back(ADD(p, p, 1));
    step.push_back(CN(f, 1));
    e_if_nonzero(body, g, sh, std::move(step));
  }
  o.push_back(WH(f, std::move(body)));
  o.push_back(CP(b_out, cand));
  o.push_back(CP(a_out, p));
  c_monus(o, a_out, b_out, t, u);
}

// The operations the machine body is generic over.
struct Arith {
  void (*add)(PV&, const Nat&, const Nat&, const Nat&, const Nat&);
  void (*monus)(PV&, const Nat&, const Nat&, const Nat&, const Nat&);
  void (*divmod_const)(PV&, const Nat&, const Nat&, const Nat&, const Nat&, const Nat&);
  void (*pair)(PV&, const Nat&, const Nat&, const Nat&, const Nat&, const Nat&,
               const Nat&, const Nat&, const Nat&, const Nat&);
  void (*unpair)(PV&, const Nat&, const Nat&, const Nat&, const Nat&, const Nat&,
                 const Nat&, const Nat&, const Nat&, const Nat&, const Nat&, const Nat&);
};

constexpr Arith kLadder{e_add, e_monus, e_divmod_const, e_pair, e_unpair};
constexpr Arith kCompact{c_add, c_monus, c_divmod_const, c_pair, c_unpair};

// ---------------------------------------------------------------------
// The universal machine.
//
// Simulated state: S = pair(v0, pair(v1, ...)); reading past the end of
// the list hits 0 and unpair(0) = (0, 0), which is exactly the "absent
// variables are 0" rule. Pending work: C = 0 for empty, otherwise
// pair(elem, rest) + 1, where an element is
//   2*code(P)        execute statement P
//   2*pair(n, b) + 1 run the statement coded b another n times
// so a Loop never has to push its body more than once per iteration and
// a While re-pushes its own element behind its body.
//
// One outer while drives a micro-step machine: MODE selects a state
// block per iteration (compared against the snapshot MCUR), and the
// single unpair / pair blocks act as subroutines returning to CONT.

const Nat vX0 = 0, vE = 1, vX = 2;
const Nat vC = 3, vS = 4, vMODE = 5, vMCUR = 6, vCONT = 7, vRET = 8;
const Nat vUA = 9, vUR1 = 10, vUR2 = 11, vPA = 12, vPB = 13, vPR = 14;
const Nat vELEM = 15, vPQ = 16, vPAR = 17, vTAG = 18, vM = 19, vA1 = 20, vA2 = 21;
const Nat vJ = 22, vCC = 23, vVAL = 24, vN = 25, vREPN = 26, vREPB = 27;
const Nat vPUSH1 = 28, vPUSH2 = 29, vIDX = 30, vR = 31, vGW = 32, vZZ = 33;
const Nat vT1 = 34, vT2 = 35;
const Nat vEQT = 36, vEQU = 37, vEQF = 38, vF1 = 39, vF2 = 40, vF3 = 41;
const Nat sP = 42, sTR = 43, sCAND = 44, sSH = 45, sT = 46, sU = 47;
const Nat sF = 48, sG = 49, sS = 50, sD = 51;

enum : unsigned {
  M_INIT1 = 1, M_INIT2 = 2, M_INIT3 = 3, M_INIT4 = 4,
  M_POP = 5, M_UNPAIR = 6, M_PAIR = 7, M_POPPED = 8, M_EXEC = 9,
  M_ASSIGN1 = 10, M_ASSIGN2 = 11, M_GET = 12, M_GETSTEP = 13,
  M_LOOPY = 14, M_REPEAT = 15, M_SPAWN1 = 16, M_SPAWN2 = 17,
  M_SET_DESCEND = 18, M_SET_PUSHR = 19, M_SET_PUSHED = 20, M_SET_REPLACE = 21,
  M_SET_NEWS = 22, M_SET_REBUILD = 23, M_SET_POPR = 24, M_SET_NEWS2 = 25,
  M_COMMIT = 26, M_COMMIT2 = 27, M_COMMIT3 = 28, M_FINISH = 29, M_DONE = 30,
};

// Appends "if MCUR == id then block" to the dispatch chain. State ids
// are tiny, so id - MCUR is computed by a bounded countdown loop.
void add_state(PV& loop, unsigned id, PV block) {
  loop.push_back(SUB(vEQT, vMCUR, id));
  loop.push_back(CN(vEQU, id));
  loop.push_back(LP(vMCUR, PV{SUB(vEQU, vEQU, 1)}));
  loop.push_back(CN(vEQF, 1));
  e_if_nonzero(loop, vEQT, vF1, PV{CN(vEQF, 0)});
  e_if_nonzero(loop, vEQU, vF1, PV{CN(vEQF, 0)});
  e_if_nonzero(loop, vEQF, vF1, std::move(block));
}

// t2 := 2 * src via the flavor's adder.
void e_double(PV& o, const Nat& t2, const Nat& src, const Arith& A) {
  o.push_back(CP(t2, src));
  A.add(o, t2, src, sT, sU);
}

PV universal_body(const Arith& A) {
  PV top;
  top.push_back(CN(vZZ, 0));
  top.push_back(CN(vMODE, M_INIT1));

  PV loop;
  loop.push_back(CP(vMCUR, vMODE));

  // S := pair(0, pair(x, 0)); C := pair(2e, 0) + 1.
  add_state(loop, M_INIT1, PV{CP(vPA, vX), CP(vPB, vZZ), CN(vCONT, M_INIT2), CN(vMODE, M_PAIR)});
  add_state(loop, M_INIT2, PV{CP(vPA, vZZ), CP(vPB, vPR), CN(vCONT, M_INIT3), CN(vMODE, M_PAIR)});
  {
    PV b;
    b.push_back(CP(vS, vPR));
    e_double(b, vT2, vE, A);
    b.push_back(CP(vPA, vT2));
    b.push_back(CP(vPB, vZZ));
    b.push_back(CN(vCONT, M_INIT4));
    b.push_back(CN(vMODE, M_PAIR));
    add_state(loop, M_INIT3, std::move(b));
  }
  add_state(loop, M_INIT4, PV{ADD(vC, vPR, 1), CN(vMODE, M_POP)});

  {
    PV b;
    e_if_zero(b, vC, vF1, vF2, PV{CN(vMODE, M_FINISH)});
    e_if_nonzero(b, vC, vF1, PV{SUB(vUA, vC, 1), CN(vCONT, M_POPPED), CN(vMODE, M_UNPAIR)});
    add_state(loop, M_POP, std::move(b));
  }

  {
    PV b;
    A.unpair(b, vUR1, vUR2, vUA, sP, sTR, sCAND, sSH, sT, sU, sF, sG);
    b.push_back(CP(vMODE, vCONT));
    add_state(loop, M_UNPAIR, std::move(b));
  }
  {
    PV b;
    A.pair(b, vPR, vPA, vPB, sS, sD, sP, sSH, sT, sU);
    b.push_back(CP(vMODE, vCONT));
    add_state(loop, M_PAIR, std::move(b));
  }

  {
    PV b;
    b.push_back(CP(vELEM, vUR1));
    b.push_back(CP(vC, vUR2));
    A.divmod_const(b, vPQ, vPAR, vELEM, 2, sU);
    b.push_back(CN(vPUSH1, 0));
    b.push_back(CN(vPUSH2, 0));
    PV exec_elem;
    A.divmod_const(exec_elem, vM, vTAG, vPQ, 5, sU);
    exec_elem.push_back(CP(vUA, vM));
    exec_elem.push_back(CN(vCONT, M_EXEC));
    exec_elem.push_back(CN(vMODE, M_UNPAIR));
    e_if_zero(b, vPAR, vF1, vF2, std::move(exec_elem));
    e_if_nonzero(b, vPAR, vF1,
                 PV{CP(vUA, vPQ), CN(vCONT, M_REPEAT), CN(vMODE, M_UNPAIR)});
    add_state(loop, M_POPPED, std::move(b));
  }

  // Statement payload split: UR1/UR2 = the two components of code div 5.
  {
    PV b;
    b.push_back(CP(vA1, vUR1));
    b.push_back(CP(vA2, vUR2));
    // tags 0, 1: assignments; split pair(j, c) next.
    b.push_back(SUB(vT1, vTAG, 1));
    e_if_zero(b, vT1, vF1, vF2,
              PV{CP(vUA, vA2), CN(vCONT, M_ASSIGN1), CN(vMODE, M_UNPAIR)});
    // tag 2: Seq -- first half on top of the stack.
    b.push_back(SUB(vT1, vTAG, 2));
    b.push_back(CN(vT2, 2));
    b.push_back(LP(vTAG, PV{SUB(vT2, vT2, 1)}));
    b.push_back(CN(vF3, 1));
    e_if_nonzero(b, vT1, vF1, PV{CN(vF3, 0)});
    e_if_nonzero(b, vT2, vF1, PV{CN(vF3, 0)});
    {
      PV seq_case;
      e_double(seq_case, vT2, vA1, A);
      seq_case.push_back(ADD(vPUSH1, vT2, 1));
      e_double(seq_case, vT2, vA2, A);
      seq_case.push_back(ADD(vPUSH2, vT2, 1));
      seq_case.push_back(CN(vMODE, M_COMMIT));
      e_if_nonzero(b, vF3, vF1, std::move(seq_case));
    }
    // tags 3, 4: read the guard variable, then decide in M_LOOPY.
    b.push_back(SUB(vT1, vTAG, 2));
    e_if_nonzero(b, vT1, vF1,
                 PV{CP(vGW, vS), CP(vIDX, vA1), CN(vRET, M_LOOPY), CN(vMODE, M_GET)});
    add_state(loop, M_EXEC, std::move(b));
  }

  add_state(loop, M_ASSIGN1,
            PV{CP(vJ, vUR1), CP(vCC, vUR2), CP(vGW, vS), CP(vIDX, vJ),
               CN(vRET, M_ASSIGN2), CN(vMODE, M_GET)});

  // List walk; the final unpair leaves the wanted entry in UR1 and
  // control goes to RET.
  {
    PV b;
    e_if_zero(b, vIDX, vF1, vF2, PV{CP(vUA, vGW), CP(vCONT, vRET), CN(vMODE, M_UNPAIR)});
    e_if_nonzero(b, vIDX, vF1, PV{CP(vUA, vGW), CN(vCONT, M_GETSTEP), CN(vMODE, M_UNPAIR)});
    add_state(loop, M_GET, std::move(b));
  }
  add_state(loop, M_GETSTEP, PV{CP(vGW, vUR2), SUB(vIDX, vIDX, 1), CN(vMODE, M_GET)});

  {
    PV b;
    b.push_back(CP(vVAL, vUR1));
    {
      PV addc;
      A.add(addc, vVAL, vCC, sT, sU);
      e_if_zero(b, vTAG, vF1, vF2, std::move(addc));
    }
    {
      PV subc;
      A.monus(subc, vVAL, vCC, sT, sU);
      e_if_nonzero(b, vTAG, vF1, std::move(subc));
    }
    b.push_back(CP(vIDX, vA1));
    b.push_back(CN(vR, 0));
    b.push_back(CN(vMODE, M_SET_DESCEND));
    add_state(loop, M_ASSIGN2, std::move(b));
  }

  // Loop/While with the guard value in UR1. A Loop with guard n spawns
  // a (n-1)-fold repeat plus one execution of the body; a While with a
  // non-zero guard re-pushes itself behind its body.
  {
    PV b;
    b.push_back(CP(vN, vUR1));
    b.push_back(SUB(vT1, vTAG, 3));
    {
      PV loop_case;
      loop_case.push_back(CN(vMODE, M_COMMIT));
      e_if_nonzero(loop_case, vN, vF3,
                   PV{SUB(vREPN, vN, 1), CP(vREPB, vA2), CN(vMODE, M_SPAWN1)});
      e_if_zero(b, vT1, vF1, vF2, std::move(loop_case));
    }
    {
      PV while_case;
      while_case.push_back(CN(vMODE, M_COMMIT));
      {
        PV taken;
        taken.push_back(ADD(vPUSH2, vELEM, 1));
        e_double(taken, vT2, vA2, A);
        taken.push_back(ADD(vPUSH1, vT2, 1));
        e_if_nonzero(while_case, vN, vF3, std::move(taken));
      }
      e_if_nonzero(b, vT1, vF1, std::move(while_case));
    }
    add_state(loop, M_LOOPY, std::move(b));
  }

  {
    PV b;
    b.push_back(CP(vN, vUR1));
    b.push_back(CP(vREPB, vUR2));
    b.push_back(CN(vMODE, M_COMMIT));
    e_if_nonzero(b, vN, vF1, PV{SUB(vREPN, vN, 1), CN(vMODE, M_SPAWN1)});
    add_state(loop, M_REPEAT, std::move(b));
  }

  add_state(loop, M_SPAWN1,
            PV{CP(vPA, vREPN), CP(vPB, vREPB), CN(vCONT, M_SPAWN2), CN(vMODE, M_PAIR)});
  {
    PV b;
    e_double(b, vT2, vPR, A);
    b.push_back(ADD(vPUSH2, vT2, 2));  // (2*pair(n-1, body) + 1) + 1
    e_double(b, vT2, vREPB, A);
    b.push_back(ADD(vPUSH1, vT2, 1));
    b.push_back(CN(vMODE, M_COMMIT));
    add_state(loop, M_SPAWN2, std::move(b));
  }

  // S[IDX] := VAL: peel IDX entries onto the reversed prefix R (with the
  // same +1 list encoding as C), swap the head, then rebuild.
  {
    PV b;
    e_if_zero(b, vIDX, vF1, vF2, PV{CP(vUA, vS), CN(vCONT, M_SET_REPLACE), CN(vMODE, M_UNPAIR)});
    e_if_nonzero(b, vIDX, vF1, PV{CP(vUA, vS), CN(vCONT, M_SET_PUSHR), CN(vMODE, M_UNPAIR)});
    add_state(loop, M_SET_DESCEND, std::move(b));
  }
  add_state(loop, M_SET_PUSHR,
            PV{CP(vS, vUR2), CP(vPA, vUR1), CP(vPB, vR), CN(vCONT, M_SET_PUSHED),
               CN(vMODE, M_PAIR)});
  add_state(loop, M_SET_PUSHED,
            PV{ADD(vR, vPR, 1), SUB(vIDX, vIDX, 1), CN(vMODE, M_SET_DESCEND)});
  add_state(loop, M_SET_REPLACE,
            PV{CP(vPA, vVAL), CP(vPB, vUR2), CN(vCONT, M_SET_NEWS), CN(vMODE, M_PAIR)});
  add_state(loop, M_SET_NEWS, PV{CP(vS, vPR), CN(vMODE, M_SET_REBUILD)});
  {
    PV b;
    e_if_zero(b, vR, vF1, vF2, PV{CN(vMODE, M_COMMIT)});
    e_if_nonzero(b, vR, vF1, PV{SUB(vUA, vR, 1), CN(vCONT, M_SET_POPR), CN(vMODE, M_UNPAIR)});
    add_state(loop, M_SET_REBUILD, std::move(b));
  }
  add_state(loop, M_SET_POPR,
            PV{CP(vR, vUR2), CP(vPA, vUR1), CP(vPB, vS), CN(vCONT, M_SET_NEWS2),
               CN(vMODE, M_PAIR)});
  add_state(loop, M_SET_NEWS2, PV{CP(vS, vPR), CN(vMODE, M_SET_REBUILD)});

  // Pending pushes: PUSH2 goes under PUSH1, so its test runs last and
  // overrides the PA/CONT/MODE the PUSH1 test wrote.
  {
    PV b;
    b.push_back(CN(vMODE, M_POP));
    e_if_nonzero(b, vPUSH1, vF1,
                 PV{SUB(vPA, vPUSH1, 1), CP(vPB, vC), CN(vCONT, M_COMMIT3), CN(vMODE, M_PAIR)});
    e_if_nonzero(b, vPUSH2, vF1,
                 PV{SUB(vPA, vPUSH2, 1), CP(vPB, vC), CN(vCONT, M_COMMIT2), CN(vMODE, M_PAIR)});
    add_state(loop, M_COMMIT, std::move(b));
  }
  add_state(loop, M_COMMIT2, PV{ADD(vC, vPR, 1), CN(vPUSH2, 0), CN(vMODE, M_COMMIT)});
  add_state(loop, M_COMMIT3, PV{ADD(vC, vPR, 1), CN(vPUSH1, 0), CN(vMODE, M_COMMIT)});

  add_state(loop, M_FINISH, PV{CP(vUA, vS), CN(vCONT, M_DONE), CN(vMODE, M_UNPAIR)});
  add_state(loop, M_DONE, PV{CP(vX0, vUR1), CN(vMODE, 0)});

  top.push_back(WH(vMODE, std::move(loop)));
  return top;
}

}  // namespace

unsigned stdlib_macro_arity(const std::string& name) {
  static const std::unordered_map<std::string, unsigned> arities = {
      {"zero", 1},   {"copy", 2},   {"add", 3},  {"monus", 3}, {"mul", 3},
      {"divmod", 4}, {"pair", 3},   {"unpair", 3}, {"tagsplit", 3},
  };
  auto it = arities.find(name);
  if (it == arities.end()) throw std::invalid_argument("unknown macro: " + name);
  return it->second;
}

unsigned stdlib_macro_scratch(const std::string& name) {
  // One extra slot where the macro body carries constant loads: their
  // desugared form reads a dedicated always-zero variable at the top of
  // the block.
  static const std::unordered_map<std::string, unsigned> scratch = {
      {"zero", 1},   {"copy", 0},   {"add", 2},  {"monus", 2}, {"mul", 5},
      {"divmod", 7}, {"pair", 7},   {"unpair", 9}, {"tagsplit", 2},
  };
  auto it = scratch.find(name);
  if (it == scratch.end()) throw std::invalid_argument("unknown macro: " + name);
  return it->second;
}

Program stdlib_macro(const std::string& name, const std::vector<Nat>& vars) {
  unsigned arity = stdlib_macro_arity(name);
  if (vars.size() != arity)
    throw std::invalid_argument("macro " + name + " takes " + std::to_string(arity) +
                                " variables, got " + std::to_string(vars.size()));
  Nat base = 0;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] < 0) throw std::invalid_argument("macro variables must be naturals");
    if (vars[i] + 1 > base) base = vars[i] + 1;
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw std::invalid_argument("variable collision in macro " + name);
  }
  auto s = [&](unsigned k) -> Nat { return base + k; };

  PV o;
  if (name == "zero") {
    o.push_back(CN(vars[0], 0));
  } else if (name == "copy") {
    o.push_back(CP(vars[0], vars[1]));
  } else if (name == "add") {
    o.push_back(CP(vars[0], vars[1]));
    e_add(o, vars[0], vars[2], s(0), s(1));
  } else if (name == "monus") {
    o.push_back(CP(vars[0], vars[1]));
    e_monus(o, vars[0], vars[2], s(0), s(1));
  } else if (name == "mul") {
    e_mul(o, vars[0], vars[1], vars[2], s(0), s(1), s(2), s(3));
  } else if (name == "divmod") {
    e_divmod_var(o, vars[0], vars[1], vars[2], vars[3], s(0), s(1), s(2), s(3), s(4), s(5));
  } else if (name == "pair") {
    e_pair(o, vars[0], vars[1], vars[2], s(0), s(1), s(2), s(3), s(4), s(5));
  } else if (name == "unpair") {
    e_unpair(o, vars[0], vars[1], vars[2], s(0), s(1), s(2), s(3), s(4), s(5), s(6), s(7));
  } else {  // tagsplit
    e_divmod_const(o, vars[1], vars[0], vars[2], 5, s(0));
  }
  return desugar(Program::seq_of(std::move(o)));
}

// ---- code-size-aware refolding -------------------------------------
//
// Pairing roughly doubles the bit length of its larger argument, so the
// bit length of encode(p) grows like max-leaf-bits * 2^depth. For the
// machine-sized programs below (hundreds of thousands of statements) a
// statement-count midpoint fold makes the code astronomically large.
// Refolding every Seq list so splits balance *estimated code bits*
// instead of statement counts keeps encode(U) and encode(D) at
// a few tens of megabits. Seq association costs no steps, so the refold
// changes neither the computed function nor the step count.

struct Sized {
  Program p;
  double bits;  // approximate bit length of encode(p)
};

double pair_bits(double a, double b) { return 2 * std::max(a, b) + 4; }

// Splits a statement list at the bit-weighted midpoint: a fold in which
// each element of weight w_i sits at depth ~log2(W / w_i) yields a root
// of ~W = sum_i w_i bits (the achievable minimum, since pairing doubles
// the larger side), and halving the weight at every split realizes
// those depths to within a constant factor.
Sized fold_sized(std::vector<Sized>& xs, size_t lo, size_t hi) {
  if (hi - lo == 1) return std::move(xs[lo]);
  size_t n = hi - lo;
  double total = 0;
  for (size_t i = 0; i < n; ++i) total += xs[lo + i].bits;
  double prefix = 0;
  size_t best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k + 1 < n; ++k) {
    prefix += xs[lo + k].bits;
    double cost = std::max(prefix, total - prefix);
    if (cost < best_cost) {
      best_cost = cost;
      best = k;
    }
  }
  Sized left = fold_sized(xs, lo, lo + best + 1);
  Sized right = fold_sized(xs, lo + best + 1, hi);
  return Sized{Program::seq(left.p, right.p), pair_bits(left.bits, right.bits)};
}

double nat_bits(const Nat& v) {
  return v == 0 ? 1.0 : static_cast<double>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

Sized rebalance_sized(const Program& p) {
  switch (p.kind()) {
    case NodeKind::Seq: {
      std::vector<Program> stmts = flatten_seq(p);
      std::vector<Sized> xs;
      xs.reserve(stmts.size());
      for (Program& s : stmts) xs.push_back(rebalance_sized(s));
      return fold_sized(xs, 0, xs.size());
    }
    case NodeKind::Loop: {
      Sized body = rebalance_sized(p.body());
      return Sized{Program::loop(p.var(), body.p), pair_bits(nat_bits(p.var()), body.bits)};
    }
    case NodeKind::While: {
      Sized body = rebalance_sized(p.body());
      return Sized{Program::while_loop(p.var(), body.p),
                   pair_bits(nat_bits(p.var()), body.bits)};
    }
    default:
      return Sized{p, nat_bits(encode(p))};
  }
}

Program rebalance(const Program& p) { return rebalance_sized(p).p; }

const Program& build_universal() {
  static const Program u = rebalance(desugar(Program::seq_of(universal_body(kLadder))));
  return u;
}

Nat specialize(const Nat& e, const Nat& v) {
  Program p = decode(e);
  Nat m = max_var(p);
  Nat z = m + 2;  // never written, so it reads as 0
  PV prologue;
  for (Nat i = m; i >= 1; --i) prologue.push_back(ADD(i + 1, i, 0));
  prologue.push_back(ADD(1, z, v));
  return encode(Program::seq(Program::seq_of(std::move(prologue)), p));
}

const Program& build_diagonal() {
  static const Program d = [] {
    Program u_core = Program::seq_of(universal_body(kCompact));
    Nat g = max_var(u_core) + 1;
    PV top;
    top.push_back(CP(vX, vE));  // feed the program its own code
    top.push_back(u_core);
    top.push_back(CN(g, 1));
    top.push_back(WH(g, PV{ADD(g, g, 0)}));
    return rebalance(desugar(Program::seq_of(std::move(top))));
  }();
  return d;
}

}  // namespace lw
