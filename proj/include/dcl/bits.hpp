#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace dcl {

using word_t = std::uint64_t;
inline constexpr std::uint32_t kWordBits = 64;

inline std::uint32_t words_for(std::uint32_t nbits) {
  return (nbits + kWordBits - 1) / kWordBits;
}

inline bool get_bit(const word_t* w, std::uint32_t i) {
  return (w[i / kWordBits] >> (i % kWordBits)) & 1u;
}

inline void set_bit(word_t* w, std::uint32_t i, bool v) {
  const word_t mask = word_t(1) << (i % kWordBits);
  if (v)
    w[i / kWordBits] |= mask;
  else
    w[i / kWordBits] &= ~mask;
}

inline void flip_bit(word_t* w, std::uint32_t i) {
  w[i / kWordBits] ^= word_t(1) << (i % kWordBits);
}

// Index of the lowest set bit across `nw` words; -1 if all zero.
inline int lowest_set_bit(const word_t* w, std::uint32_t nw) {
  for (std::uint32_t i = 0; i < nw; ++i) {
    if (w[i]) return int(i * kWordBits + std::countr_zero(w[i]));
  }
  return -1;
}

inline bool any_bit(const word_t* w, std::uint32_t nw) {
  for (std::uint32_t i = 0; i < nw; ++i)
    if (w[i]) return true;
  return false;
}

inline std::uint32_t popcount_words(const word_t* w, std::uint32_t nw) {
  std::uint32_t c = 0;
  for (std::uint32_t i = 0; i < nw; ++i) c += std::popcount(w[i]);
  return c;
}

// Fixed-width packed bit vector (used for Pauli strings and masks).
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::uint32_t nbits) : nbits_(nbits), w_(words_for(nbits), 0) {}

  std::uint32_t size() const { return nbits_; }
  std::uint32_t words() const { return std::uint32_t(w_.size()); }
  word_t* data() { return w_.data(); }
  const word_t* data() const { return w_.data(); }

  bool get(std::uint32_t i) const { return get_bit(w_.data(), i); }
  void set(std::uint32_t i, bool v) { set_bit(w_.data(), i, v); }
  void flip(std::uint32_t i) { flip_bit(w_.data(), i); }

  void clear() { std::fill(w_.begin(), w_.end(), word_t(0)); }
  bool any() const { return any_bit(w_.data(), words()); }
  std::uint32_t popcount() const { return popcount_words(w_.data(), words()); }

  BitVec& operator^=(const BitVec& o) {
    for (std::uint32_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.nbits_ == b.nbits_ && a.w_ == b.w_;
  }

 private:
  std::uint32_t nbits_ = 0;
  std::vector<word_t> w_;
};

}  // namespace dcl
