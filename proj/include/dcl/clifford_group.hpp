#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dcl/rng.hpp"

namespace dcl {

// Two-qubit Pauli patterns are nibbles: bit0 = x_i, bit1 = z_i, bit2 = x_j,
// bit3 = z_j (i = first site of the gate, j = second). Single-qubit patterns
// use bit0 = x, bit1 = z.

// A 2-qubit Clifford element modulo global phase: the images of the
// generators X_i, Z_i, X_j, Z_j under conjugation, plus derived lookup
// tables used when conjugating tableau rows.
struct CliffordGate2 {
  std::array<std::uint8_t, 4> image{};   // symplectic part (720 classes)
  std::array<bool, 4> image_sign{};      // 16 sign choices -> 11520 gates

  // Conjugation of all 16 sign-free Hermitian patterns.
  std::array<std::uint8_t, 16> conj{};
  std::uint16_t conj_sign = 0;           // bit v: conjugating pattern v flips sign

  // out_sel[b]: which input bits XOR into output bit b (columns of the
  // symplectic matrix); used for word-parallel application.
  std::array<std::uint8_t, 4> out_sel{};
  // Algebraic normal form of the sign-flip truth table, as monomial masks.
  std::array<std::uint8_t, 16> anf{};
  std::uint8_t anf_count = 0;

  static CliffordGate2 from_images(const std::array<std::uint8_t, 4>& image,
                                   const std::array<bool, 4>& sign);
  static CliffordGate2 identity();
  // CNOT with control = first site, target = second site.
  static CliffordGate2 cnot();
  // swap of the two sites (handy in tests).
  static CliffordGate2 swap();
};

struct CliffordGate1 {
  std::array<std::uint8_t, 2> image{};  // images of X, Z
  std::array<bool, 2> image_sign{};
  std::array<std::uint8_t, 4> conj{};
  std::uint8_t conj_sign = 0;
  std::array<std::uint8_t, 4> anf{};
  std::uint8_t anf_count = 0;

  static CliffordGate1 from_images(const std::array<std::uint8_t, 2>& image,
                                   const std::array<bool, 2>& sign);
  static CliffordGate1 identity();
};

// All 720 elements of Sp(4, GF(2)) as image quadruples, enumerated once.
const std::vector<std::array<std::uint8_t, 4>>& symplectic4_all();
// All 6 elements of Sp(2, GF(2)).
const std::vector<std::array<std::uint8_t, 2>>& symplectic2_all();

// Uniform over the 11520 two-qubit Cliffords (modulo phase); a single
// counter draw decides (symplectic class, sign bits).
CliffordGate2 sample_uniform_clifford2(Stream& rng);
// Uniform over the 24 single-qubit Cliffords.
CliffordGate1 sample_uniform_clifford1(Stream& rng);

// Index of a gate's symplectic class in symplectic4_all() (test support).
std::uint32_t symplectic4_index(const std::array<std::uint8_t, 4>& image);

}  // namespace dcl
