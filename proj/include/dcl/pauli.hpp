#pragma once

#include <cassert>
#include <cstdint>

#include "dcl/bits.hpp"
#include "dcl/common.hpp"

namespace dcl {

// An n-qubit Hermitian Pauli operator, sign-tracked:
//   P = (-1)^sign * prod_j sigma(x_j, z_j),
// with sigma(0,0)=I, sigma(1,0)=X, sigma(0,1)=Z, sigma(1,1)=Y.
struct PauliString {
  BitVec x, z;
  bool sign = false;  // true means overall minus

  PauliString() = default;
  explicit PauliString(std::uint32_t n) : x(n), z(n) {}

  std::uint32_t n_qubits() const { return x.size(); }

  bool is_identity() const { return !x.any() && !z.any(); }

  bool commutes_with(const PauliString& o) const {
    std::uint32_t acc = 0;
    for (std::uint32_t w = 0; w < x.words(); ++w) {
      acc ^= std::popcount((x.data()[w] & o.z.data()[w]) ^
                           (z.data()[w] & o.x.data()[w]));
    }
    return (acc & 1u) == 0;
  }
};

// i-exponent bookkeeping for products of Pauli operators, in the
// representation P = i^e * X^x Z^z (no per-qubit i absorbed).
namespace pauli_phase {

// Exponent of i in the Hermitian form: sigma(x,z) = i^(x&z) X^x Z^z per qubit.
inline int hermitian_exponent(std::uint64_t xbits, std::uint64_t zbits) {
  return std::popcount(xbits & zbits);
}

// (x1,z1,e1)*(x2,z2,e2): moving X^x2 through Z^z1 costs (-1)^|z1&x2|.
inline int product_exponent(std::uint64_t z1, std::uint64_t x2) {
  return 2 * std::popcount(z1 & x2);
}

}  // namespace pauli_phase

// Multiply two sign-tracked Hermitian Pauli strings. The product of two
// commuting Hermitian Paulis is again +/- Hermitian; anticommuting inputs
// would give an i phase, which the caller must rule out.
inline PauliString multiply(const PauliString& a, const PauliString& b) {
  assert(a.n_qubits() == b.n_qubits());
  PauliString r(a.n_qubits());
  int e = 2 * (int(a.sign) + int(b.sign));
  for (std::uint32_t w = 0; w < a.x.words(); ++w) {
    const word_t ax = a.x.data()[w], az = a.z.data()[w];
    const word_t bx = b.x.data()[w], bz = b.z.data()[w];
    e += pauli_phase::hermitian_exponent(ax, az);
    e += pauli_phase::hermitian_exponent(bx, bz);
    e += pauli_phase::product_exponent(az, bx);
    r.x.data()[w] = ax ^ bx;
    r.z.data()[w] = az ^ bz;
    e -= pauli_phase::hermitian_exponent(r.x.data()[w], r.z.data()[w]);
  }
  e &= 3;
  if (e != 0 && e != 2) throw NumericsError("pauli product is not Hermitian");
  r.sign = (e == 2);
  return r;
}

}  // namespace dcl
