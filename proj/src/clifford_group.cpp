#include "dcl/clifford_group.hpp"

#include <bit>
#include <map>

#include "dcl/common.hpp"

namespace dcl {

namespace {

// Symplectic inner product of two patterns (1 = anticommute).
inline int sp4(std::uint8_t u, std::uint8_t v) {
  const int xi_u = u & 1, zi_u = (u >> 1) & 1, xj_u = (u >> 2) & 1, zj_u = (u >> 3) & 1;
  const int xi_v = v & 1, zi_v = (v >> 1) & 1, xj_v = (v >> 2) & 1, zj_v = (v >> 3) & 1;
  return ((xi_u & zi_v) ^ (zi_u & xi_v) ^ (xj_u & zj_v) ^ (zj_u & xj_v));
}

inline int sp2(std::uint8_t u, std::uint8_t v) {
  return ((u & 1) & ((v >> 1) & 1)) ^ (((u >> 1) & 1) & (v & 1));
}

// Pauli in the representation i^e * X^x Z^z over one or two qubits, with the
// pattern packed as above.
struct Rep2 {
  std::uint8_t pattern = 0;
  int e = 0;  // mod 4
};

inline int hermitian_e2(std::uint8_t v) {
  return ((v & 1) & ((v >> 1) & 1)) + (((v >> 2) & 1) & ((v >> 3) & 1));
}

inline Rep2 rep_mul2(Rep2 a, Rep2 b) {
  // Z^z(a) past X^x(b): one factor of -1 per overlapping qubit.
  const int zi_a = (a.pattern >> 1) & 1, zj_a = (a.pattern >> 3) & 1;
  const int xi_b = b.pattern & 1, xj_b = (b.pattern >> 2) & 1;
  Rep2 r;
  r.pattern = a.pattern ^ b.pattern;
  r.e = (a.e + b.e + 2 * ((zi_a & xi_b) + (zj_a & xj_b))) & 3;
  return r;
}

inline int hermitian_e1(std::uint8_t v) { return (v & 1) & ((v >> 1) & 1); }

inline Rep2 rep_mul1(Rep2 a, Rep2 b) {
  Rep2 r;
  r.pattern = a.pattern ^ b.pattern;
  r.e = (a.e + b.e + 2 * (((a.pattern >> 1) & 1) & (b.pattern & 1))) & 3;
  return r;
}

// Moebius transform: truth table (bit v of f) -> ANF coefficients.
template <int N>
void build_anf(std::uint32_t truth, std::uint8_t* masks, std::uint8_t* count) {
  const int size = 1 << N;
  std::array<int, 16> coef{};
  for (int v = 0; v < size; ++v) coef[v] = (truth >> v) & 1;
  for (int b = 0; b < N; ++b) {
    for (int v = 0; v < size; ++v) {
      if (v & (1 << b)) coef[v] ^= coef[v & ~(1 << b)];
    }
  }
  *count = 0;
  for (int v = 0; v < size; ++v) {
    if (coef[v]) masks[(*count)++] = std::uint8_t(v);
  }
}

}  // namespace

CliffordGate2 CliffordGate2::from_images(const std::array<std::uint8_t, 4>& image,
                                         const std::array<bool, 4>& sign) {
  // Images must be nonzero and reproduce the generator commutation relations.
  for (int t = 0; t < 4; ++t) {
    if (image[t] == 0 || image[t] > 15)
      throw ConfigError("clifford gate image is not a valid Pauli pattern");
  }
  static const int want[4][4] = {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      if (sp4(image[a], image[b]) != want[a][b])
        throw ConfigError("clifford gate table is not symplectic");
    }
  }

  CliffordGate2 g;
  g.image = image;
  g.image_sign = sign;

  std::array<Rep2, 4> img_rep;
  for (int t = 0; t < 4; ++t)
    img_rep[t] = Rep2{image[t], (hermitian_e2(image[t]) + 2 * int(sign[t])) & 3};

  for (int v = 0; v < 16; ++v) {
    Rep2 r{0, 0};
    for (int t = 0; t < 4; ++t) {
      if (v & (1 << t)) r = rep_mul2(r, img_rep[t]);
    }
    const int e = (r.e + hermitian_e2(std::uint8_t(v)) - hermitian_e2(r.pattern)) & 3;
    if (e != 0 && e != 2) throw NumericsError("non-Hermitian conjugation image");
    g.conj[v] = r.pattern;
    if (e == 2) g.conj_sign |= std::uint16_t(1) << v;
  }
  if (g.conj[0] != 0 || (g.conj_sign & 1))
    throw NumericsError("identity pattern must map to +identity");

  for (int b = 0; b < 4; ++b) {
    std::uint8_t sel = 0;
    for (int t = 0; t < 4; ++t) {
      if ((image[t] >> b) & 1) sel |= std::uint8_t(1) << t;
    }
    g.out_sel[b] = sel;
  }
  build_anf<4>(g.conj_sign, g.anf.data(), &g.anf_count);
  return g;
}

CliffordGate2 CliffordGate2::identity() {
  return from_images({1, 2, 4, 8}, {false, false, false, false});
}

CliffordGate2 CliffordGate2::cnot() {
  // X_i -> X_i X_j, Z_i -> Z_i, X_j -> X_j, Z_j -> Z_i Z_j.
  return from_images({std::uint8_t(1 | 4), 2, 4, std::uint8_t(2 | 8)},
                     {false, false, false, false});
}

CliffordGate2 CliffordGate2::swap() {
  return from_images({4, 8, 1, 2}, {false, false, false, false});
}

CliffordGate1 CliffordGate1::from_images(const std::array<std::uint8_t, 2>& image,
                                         const std::array<bool, 2>& sign) {
  if (image[0] == 0 || image[0] > 3 || image[1] == 0 || image[1] > 3)
    throw ConfigError("clifford gate image is not a valid Pauli pattern");
  if (sp2(image[0], image[1]) != 1)
    throw ConfigError("clifford gate table is not symplectic");

  CliffordGate1 g;
  g.image = image;
  g.image_sign = sign;
  std::array<Rep2, 2> img_rep;
  for (int t = 0; t < 2; ++t)
    img_rep[t] = Rep2{image[t], (hermitian_e1(image[t]) + 2 * int(sign[t])) & 3};
  for (int v = 0; v < 4; ++v) {
    Rep2 r{0, 0};
    for (int t = 0; t < 2; ++t) {
      if (v & (1 << t)) r = rep_mul1(r, img_rep[t]);
    }
    const int e = (r.e + hermitian_e1(std::uint8_t(v)) - hermitian_e1(r.pattern)) & 3;
    if (e != 0 && e != 2) throw NumericsError("non-Hermitian conjugation image");
    g.conj[v] = r.pattern;
    if (e == 2) g.conj_sign |= std::uint8_t(1) << v;
  }
  build_anf<2>(g.conj_sign, g.anf.data(), &g.anf_count);
  return g;
}

CliffordGate1 CliffordGate1::identity() {
  return from_images({1, 2}, {false, false});
}

const std::vector<std::array<std::uint8_t, 4>>& symplectic4_all() {
  static const std::vector<std::array<std::uint8_t, 4>> all = [] {
    std::vector<std::array<std::uint8_t, 4>> v;
    static const int want[4][4] = {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    for (int a = 1; a < 16; ++a) {
      for (int b = 1; b < 16; ++b) {
        if (sp4(a, b) != 1) continue;
        for (int c = 1; c < 16; ++c) {
          if (sp4(a, c) || sp4(b, c)) continue;
          for (int d = 1; d < 16; ++d) {
            if (sp4(a, d) || sp4(b, d) || sp4(c, d) != 1) continue;
            (void)want;
            v.push_back({std::uint8_t(a), std::uint8_t(b), std::uint8_t(c), std::uint8_t(d)});
          }
        }
      }
    }
    return v;
  }();
  return all;
}

const std::vector<std::array<std::uint8_t, 2>>& symplectic2_all() {
  static const std::vector<std::array<std::uint8_t, 2>> all = [] {
    std::vector<std::array<std::uint8_t, 2>> v;
    for (int a = 1; a < 4; ++a)
      for (int b = 1; b < 4; ++b)
        if (sp2(a, b) == 1) v.push_back({std::uint8_t(a), std::uint8_t(b)});
    return v;
  }();
  return all;
}

std::uint32_t symplectic4_index(const std::array<std::uint8_t, 4>& image) {
  static const std::map<std::array<std::uint8_t, 4>, std::uint32_t> index = [] {
    std::map<std::array<std::uint8_t, 4>, std::uint32_t> m;
    const auto& all = symplectic4_all();
    for (std::uint32_t i = 0; i < all.size(); ++i) m[all[i]] = i;
    return m;
  }();
  return index.at(image);
}

CliffordGate2 sample_uniform_clifford2(Stream& rng) {
  const auto& all = symplectic4_all();
  const std::uint64_t idx = rng.next_below(std::uint64_t(all.size()) * 16);
  const auto& image = all[idx >> 4];
  const std::uint64_t s = idx & 15;
  return CliffordGate2::from_images(
      image, {bool(s & 1), bool(s & 2), bool(s & 4), bool(s & 8)});
}

CliffordGate1 sample_uniform_clifford1(Stream& rng) {
  const auto& all = symplectic2_all();
  const std::uint64_t idx = rng.next_below(std::uint64_t(all.size()) * 4);
  const auto& image = all[idx >> 2];
  const std::uint64_t s = idx & 3;
  return CliffordGate1::from_images(image, {bool(s & 1), bool(s & 2)});
}

}  // namespace dcl
