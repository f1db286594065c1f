#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dcl/clifford_group.hpp"
#include "dcl/tableau.hpp"

// Dense density-matrix oracle, independent of the GF(2) machinery: states
// are 2^n x 2^n complex matrices, gates are exact unitaries reconstructed
// from {H, S, CNOT} words found by breadth-first search over the Clifford
// group, and entropies come from eigenvalues. Test-only; n <= 10.
namespace dcl::testing {

using Mat = Eigen::MatrixXcd;

// Exact unitary (up to global phase) realizing a tableau-specified gate.
Mat unitary_for_gate2(const CliffordGate2& g);
Mat unitary_for_gate1(const CliffordGate1& g);

class DenseState {
 public:
  explicit DenseState(int n);
  static DenseState from_tableau(const StabilizerState& s);

  int n_qubits() const { return n_; }
  const Mat& rho() const { return rho_; }

  void apply_unitary2(const Mat& u4, int qi, int qj);
  void apply_unitary1(const Mat& u2, int q);
  void erase(int site);      // Tr_site(rho) (x) 1/2
  void dephase_z(int site);  // (rho + Z rho Z)/2

  Mat reduced(const std::vector<std::uint32_t>& keep) const;
  double entropy_bits(const std::vector<std::uint32_t>& region) const;
  double mutual_information(const std::vector<std::uint32_t>& a,
                            const std::vector<std::uint32_t>& r) const;

 private:
  int n_;
  Mat rho_;
};

}  // namespace dcl::testing
