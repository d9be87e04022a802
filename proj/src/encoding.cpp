#include "loopwhile/encoding.hpp"

#include <stdexcept>

namespace lw {

Nat pair(const Nat& a, const Nat& b) {
  if (a < 0 || b < 0) throw std::invalid_argument("pair arguments must be naturals");
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Nat, Nat> unpair(const Nat& n) {
  if (n < 0) throw std::invalid_argument("unpair argument must be a natural");
  // w = floor((sqrt(8n+1) - 1) / 2) is the diagonal index a+b.
  Nat disc = 8 * n + 1;
  Nat root;
  mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
  Nat w = (root - 1) / 2;
  Nat b = n - w * (w + 1) / 2;
  Nat a = w - b;
  return {std::move(a), std::move(b)};
}

Nat encode(const Program& p) {
  switch (p.kind()) {
    case NodeKind::AddAssign:
      return 5 * pair(p.var(), pair(p.source(), p.constant())) + 0;
    case NodeKind::SubAssign:
      return 5 * pair(p.var(), pair(p.source(), p.constant())) + 1;
    case NodeKind::Seq:
      return 5 * pair(encode(p.first()), encode(p.second())) + 2;
    case NodeKind::Loop:
      return 5 * pair(p.var(), encode(p.body())) + 3;
    case NodeKind::While:
      return 5 * pair(p.var(), encode(p.body())) + 4;
    default:
      throw std::invalid_argument("encode requires a kernel program (run desugar first)");
  }
}

Program decode(const Nat& code) {
  if (code < 0) throw std::invalid_argument("decode argument must be a natural");
  Nat tag = code % 5;
  Nat m = code / 5;
  // Payload components of a Cantor pair never exceed the pair itself,
  // and child codes shrink strictly for code >= 2, so this terminates.
  if (tag == 0 || tag == 1) {
    auto [i, jc] = unpair(m);
    auto [j, c] = unpair(jc);
    return tag == 0 ? Program::add_assign(i, j, c) : Program::sub_assign(i, j, c);
  }
  if (tag == 2) {
    auto [p, q] = unpair(m);
    return Program::seq(decode(p), decode(q));
  }
  auto [i, b] = unpair(m);
  return tag == 3 ? Program::loop(i, decode(b)) : Program::while_loop(i, decode(b));
}

}  // namespace lw
