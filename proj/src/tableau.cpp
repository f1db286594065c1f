#include "dcl/tableau.hpp"

#include <algorithm>
#include <cassert>

#include "dcl/common.hpp"

namespace dcl {

StabilizerState::StabilizerState(std::uint32_t n_qubits, std::uint32_t n_system)
    : n_(n_qubits), nsys_(n_system), wcap_(words_for(n_qubits)) {
  require(n_qubits >= 1, "state needs at least one qubit");
  require(n_system <= n_qubits, "system size exceeds qubit count");
  cols_.assign(std::size_t(2 * n_) * wcap_, 0);
  signs_.assign(wcap_, 0);
}

Region StabilizerState::system_region() const {
  Region r(nsys_);
  for (std::uint32_t i = 0; i < nsys_; ++i) r[i] = i;
  return r;
}

Region StabilizerState::reference_region() const {
  Region r(n_ - nsys_);
  for (std::uint32_t i = nsys_; i < n_; ++i) r[i - nsys_] = i;
  return r;
}

void StabilizerState::append_generator(const PauliString& p) {
  require(p.n_qubits() == n_, "generator length mismatch");
  require(rows_ < n_, "too many generators");
  require(!p.is_identity(), "identity is not a valid generator");
  for (std::uint32_t q = 0; q < n_; ++q) {
    if (p.x.get(q)) set_bit(x_col(q), rows_, true);
    if (p.z.get(q)) set_bit(z_col(q), rows_, true);
  }
  set_bit(signs_.data(), rows_, p.sign);
  ++rows_;
}

PauliString StabilizerState::generator(std::uint32_t row) const {
  require(row < rows_, "generator row out of range");
  PauliString p(n_);
  for (std::uint32_t q = 0; q < n_; ++q) {
    p.x.set(q, get_bit(x_col(q), row));
    p.z.set(q, get_bit(z_col(q), row));
  }
  p.sign = get_bit(signs_.data(), row);
  return p;
}

void StabilizerState::apply_gate2(const CliffordGate2& g, std::uint32_t qi,
                                  std::uint32_t qj) {
  require(qi < n_ && qj < n_ && qi != qj, "gate site out of range");
  word_t* in[4] = {x_col(qi), z_col(qi), x_col(qj), z_col(qj)};
  for (std::uint32_t w = 0; w < wcap_; ++w) {
    const word_t v[4] = {in[0][w], in[1][w], in[2][w], in[3][w]};
    word_t out[4];
    for (int b = 0; b < 4; ++b) {
      const std::uint8_t sel = g.out_sel[b];
      word_t o = 0;
      if (sel & 1) o ^= v[0];
      if (sel & 2) o ^= v[1];
      if (sel & 4) o ^= v[2];
      if (sel & 8) o ^= v[3];
      out[b] = o;
    }
    word_t acc = 0;
    for (int m = 0; m < g.anf_count; ++m) {
      const std::uint8_t mask = g.anf[m];
      word_t term = ~word_t(0);
      if (mask & 1) term &= v[0];
      if (mask & 2) term &= v[1];
      if (mask & 4) term &= v[2];
      if (mask & 8) term &= v[3];
      acc ^= term;
    }
    signs_[w] ^= acc;
    in[0][w] = out[0];
    in[1][w] = out[1];
    in[2][w] = out[2];
    in[3][w] = out[3];
  }
}

void StabilizerState::apply_gate1(const CliffordGate1& g, std::uint32_t q) {
  require(q < n_, "gate site out of range");
  word_t* xc = x_col(q);
  word_t* zc = z_col(q);
  for (std::uint32_t w = 0; w < wcap_; ++w) {
    const word_t v[2] = {xc[w], zc[w]};
    word_t out[2];
    for (int b = 0; b < 2; ++b) {
      word_t o = 0;
      if ((g.image[0] >> b) & 1) o ^= v[0];
      if ((g.image[1] >> b) & 1) o ^= v[1];
      out[b] = o;
    }
    word_t acc = 0;
    for (int m = 0; m < g.anf_count; ++m) {
      const std::uint8_t mask = g.anf[m];
      word_t term = ~word_t(0);
      if (mask & 1) term &= v[0];
      if (mask & 2) term &= v[1];
      acc ^= term;
    }
    signs_[w] ^= acc;
    xc[w] = out[0];
    zc[w] = out[1];
  }
}

void StabilizerState::mul_rows_by_pivot(const word_t* mask, std::uint32_t pivot) {
  assert(!get_bit(mask, pivot));
  // 2-bit accumulators for the i-exponent of each row product, mod 4.
  static thread_local std::vector<word_t> acc;
  acc.assign(2 * wcap_, 0);
  word_t* a0 = acc.data();
  word_t* a1 = acc.data() + wcap_;
  for (std::uint32_t q = 0; q < n_; ++q) {
    const word_t* xc = x_col(q);
    const word_t* zc = z_col(q);
    const bool px = get_bit(xc, pivot);
    const bool pz = get_bit(zc, pivot);
    if (!px && !pz) continue;
    for (std::uint32_t w = 0; w < wcap_; ++w) {
      const word_t x = xc[w], z = zc[w];
      word_t d0, d1;
      if (px && !pz) {  // row * X: i-exponent z*(1+2x)
        d0 = z;
        d1 = x & z;
      } else if (!px && pz) {  // row * Z: i-exponent x*(3-2z)... = 3x+2xz
        d0 = x;
        d1 = x & ~z;
      } else {  // row * Y: i-exponent x+3z
        d0 = x ^ z;
        d1 = z & ~x;
      }
      const word_t carry = a0[w] & d0;
      a0[w] ^= d0;
      a1[w] ^= d1 ^ carry;
    }
  }
  // Commuting generators give an even i-exponent on every masked row.
  for (std::uint32_t w = 0; w < wcap_; ++w) assert((a0[w] & mask[w]) == 0);

  // Row bit update: every masked row XORs in the pivot's pattern.
  for (std::uint32_t col = 0; col < 2 * n_; ++col) {
    word_t* c = cols_.data() + std::size_t(col) * wcap_;
    if (!get_bit(c, pivot)) continue;
    for (std::uint32_t w = 0; w < wcap_; ++w) c[w] ^= mask[w];
  }
  const bool psign = get_bit(signs_.data(), pivot);
  for (std::uint32_t w = 0; w < wcap_; ++w) {
    word_t flip = a1[w];
    if (psign) flip ^= ~word_t(0);
    signs_[w] ^= flip & mask[w];
  }
}

void StabilizerState::delete_row(std::uint32_t row) {
  assert(row < rows_);
  const std::uint32_t last = rows_ - 1;
  for (std::uint32_t col = 0; col < 2 * n_; ++col) {
    word_t* c = cols_.data() + std::size_t(col) * wcap_;
    if (row != last) set_bit(c, row, get_bit(c, last));
    set_bit(c, last, false);
  }
  if (row != last) set_bit(signs_.data(), row, get_bit(signs_.data(), last));
  set_bit(signs_.data(), last, false);
  --rows_;
}

void StabilizerState::erase_qubit(std::uint32_t q) {
  require(q < n_, "erase site out of range");
  static thread_local std::vector<word_t> mask;

  int piv_x = lowest_set_bit(x_col(q), wcap_);
  if (piv_x >= 0) {
    mask.assign(x_col(q), x_col(q) + wcap_);
    set_bit(mask.data(), std::uint32_t(piv_x), false);
    if (any_bit(mask.data(), wcap_)) mul_rows_by_pivot(mask.data(), piv_x);
  }
  // Re-read the Z column: clearing X rows may have toggled Z bits.
  mask.assign(z_col(q), z_col(q) + wcap_);
  if (piv_x >= 0) set_bit(mask.data(), std::uint32_t(piv_x), false);
  int piv_z = lowest_set_bit(mask.data(), wcap_);
  if (piv_z >= 0) {
    set_bit(mask.data(), std::uint32_t(piv_z), false);
    if (any_bit(mask.data(), wcap_)) mul_rows_by_pivot(mask.data(), piv_z);
  }
  if (piv_x >= 0 && piv_z >= 0) {
    delete_row(std::uint32_t(std::max(piv_x, piv_z)));
    delete_row(std::uint32_t(std::min(piv_x, piv_z)));
  } else if (piv_x >= 0) {
    delete_row(std::uint32_t(piv_x));
  } else if (piv_z >= 0) {
    delete_row(std::uint32_t(piv_z));
  }
}

void StabilizerState::dephase_qubit(std::uint32_t q) {
  require(q < n_, "dephase site out of range");
  static thread_local std::vector<word_t> mask;
  const int piv = lowest_set_bit(x_col(q), wcap_);
  if (piv < 0) return;
  mask.assign(x_col(q), x_col(q) + wcap_);
  set_bit(mask.data(), std::uint32_t(piv), false);
  if (any_bit(mask.data(), wcap_)) mul_rows_by_pivot(mask.data(), piv);
  delete_row(std::uint32_t(piv));
}

void StabilizerState::dephase_via_ancilla(std::uint32_t q, Stream& rng) {
  apply_gate1(sample_uniform_clifford1(rng), q);
  dephase_qubit(q);
}

void StabilizerState::check_region(const Region& region) const {
  for (std::size_t i = 0; i < region.size(); ++i) {
    require(region[i] < n_, "region index out of range");
    for (std::size_t j = i + 1; j < region.size(); ++j)
      require(region[i] != region[j], "region has duplicate indices");
  }
}

int StabilizerState::rank_of_qubit_columns(const Region& qubits) const {
  std::vector<word_t> store;
  store.reserve(std::size_t(std::min<std::size_t>(rows_, 2 * qubits.size())) * wcap_);
  std::vector<std::uint32_t> pivot_rows;
  std::vector<word_t> tmp(wcap_);
  for (const std::uint32_t q : qubits) {
    for (int xz = 0; xz < 2; ++xz) {
      const word_t* src = xz ? z_col(q) : x_col(q);
      std::copy(src, src + wcap_, tmp.begin());
      for (std::size_t pi = 0; pi < pivot_rows.size(); ++pi) {
        if (get_bit(tmp.data(), pivot_rows[pi])) {
          const word_t* pc = store.data() + pi * wcap_;
          for (std::uint32_t w = 0; w < wcap_; ++w) tmp[w] ^= pc[w];
        }
      }
      const int r = lowest_set_bit(tmp.data(), wcap_);
      if (r >= 0) {
        pivot_rows.push_back(std::uint32_t(r));
        store.insert(store.end(), tmp.begin(), tmp.end());
      }
    }
  }
  return int(pivot_rows.size());
}

int StabilizerState::entropy(const Region& region) const {
  check_region(region);
  std::vector<bool> in(n_, false);
  for (const std::uint32_t q : region) in[q] = true;
  Region complement;
  complement.reserve(n_ - region.size());
  for (std::uint32_t q = 0; q < n_; ++q)
    if (!in[q]) complement.push_back(q);
  return int(region.size()) - int(rows_) + rank_of_qubit_columns(complement);
}

int StabilizerState::mutual_information(const Region& a, const Region& r) const {
  check_region(a);
  check_region(r);
  for (const std::uint32_t q : a)
    for (const std::uint32_t p : r)
      require(q != p, "mutual_information regions overlap");
  Region both;
  both.reserve(a.size() + r.size());
  both.insert(both.end(), a.begin(), a.end());
  both.insert(both.end(), r.begin(), r.end());
  return entropy(a) + entropy(r) - entropy(both);
}

bool StabilizerState::verify() const {
  // Pairwise commutation.
  for (std::uint32_t a = 0; a < rows_; ++a) {
    const PauliString pa = generator(a);
    for (std::uint32_t b = a + 1; b < rows_; ++b) {
      if (!pa.commutes_with(generator(b))) return false;
    }
  }
  // Independence: rank of the full (x|z) matrix equals k.
  Region all(n_);
  for (std::uint32_t q = 0; q < n_; ++q) all[q] = q;
  if (rank_of_qubit_columns(all) != int(rows_)) return false;
  // No stray bits above the row count.
  for (std::uint32_t col = 0; col < 2 * n_; ++col) {
    const word_t* c = cols_.data() + std::size_t(col) * wcap_;
    for (std::uint32_t r = rows_; r < wcap_ * kWordBits; ++r) {
      if (get_bit(c, r)) return false;
    }
  }
  return true;
}

}  // namespace dcl
