#pragma once

#include <cstdint>
#include <vector>

#include "dcl/bits.hpp"
#include "dcl/clifford_group.hpp"
#include "dcl/pauli.hpp"
#include "dcl/rng.hpp"

namespace dcl {

using Region = std::vector<std::uint32_t>;

// Mixed stabilizer state on n qubits, held as k <= n independent commuting
// sign-tracked Pauli generators. Storage is column-major: one packed bit
// column per (qubit, x/z) pair, indexed by generator row, so two-site gates
// and rank queries run word-parallel over all generators at once.
class StabilizerState {
 public:
  StabilizerState(std::uint32_t n_qubits, std::uint32_t n_system);

  std::uint32_t n_qubits() const { return n_; }
  std::uint32_t n_system() const { return nsys_; }
  std::uint32_t n_references() const { return n_ - nsys_; }
  std::uint32_t n_generators() const { return rows_; }
  bool is_pure() const { return rows_ == n_; }

  Region system_region() const;
  Region reference_region() const;

  void append_generator(const PauliString& p);
  PauliString generator(std::uint32_t row) const;

  void apply_gate2(const CliffordGate2& g, std::uint32_t qi, std::uint32_t qj);
  void apply_gate1(const CliffordGate1& g, std::uint32_t q);

  // Canonical erasure: row-reduce so at most one generator carries X (or Y)
  // and at most one carries Z at the site, then delete them. Leaves
  // Tr_site(rho) (x) 1/2.
  void erase_qubit(std::uint32_t q);
  // Z-basis dephasing: delete the single row-reduced generator anticommuting
  // with Z at the site. Equals CNOT to a fresh |0> ancilla + partial trace.
  void dephase_qubit(std::uint32_t q);
  // Random single-qubit Clifford followed by dephase_qubit.
  void dephase_via_ancilla(std::uint32_t q, Stream& rng);

  // Entanglement entropy of `region` in bits:
  //   S = |region| - k + rank_GF2(generators restricted to the complement).
  int entropy(const Region& region) const;
  // I(A,R) = S_A + S_R - S_{A u R}; regions must be disjoint.
  int mutual_information(const Region& a, const Region& r) const;

  // O(k^2) commutation + independence check (tests/debug).
  bool verify() const;

 private:
  word_t* x_col(std::uint32_t q) { return cols_.data() + std::size_t(2 * q) * wcap_; }
  word_t* z_col(std::uint32_t q) { return cols_.data() + std::size_t(2 * q + 1) * wcap_; }
  const word_t* x_col(std::uint32_t q) const {
    return cols_.data() + std::size_t(2 * q) * wcap_;
  }
  const word_t* z_col(std::uint32_t q) const {
    return cols_.data() + std::size_t(2 * q + 1) * wcap_;
  }

  // Multiply every generator flagged in `mask` by generator `pivot`
  // (mask must not contain the pivot), with exact sign tracking.
  void mul_rows_by_pivot(const word_t* mask, std::uint32_t pivot);
  void delete_row(std::uint32_t row);
  int rank_of_qubit_columns(const Region& qubits) const;
  void check_region(const Region& region) const;

  std::uint32_t n_ = 0;     // total qubits (system + references)
  std::uint32_t nsys_ = 0;  // system qubits occupy indices [0, nsys_)
  std::uint32_t rows_ = 0;  // generator count k
  std::uint32_t wcap_ = 0;  // words per column
  std::vector<word_t> cols_;
  std::vector<word_t> signs_;
};

}  // namespace dcl
