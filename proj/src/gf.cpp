#include "scpdp/gf.hpp"

namespace scpdp::gf {

uint8_t gf256_mul(uint8_t a, uint8_t b) {
  uint8_t p = 0;
  for (int i = 0; i < 8; ++i) {
    if (b & 1) p ^= a;
    bool hi = a & 0x80;
    a <<= 1;
    if (hi) a ^= 0x1b;
    b >>= 1;
  }
  return p;
}

uint8_t gf256_inverse(uint8_t a) {
  if (a == 0) return 0;
  for (int b = 1; b < 256; ++b) {
    if (gf256_mul(a, static_cast<uint8_t>(b)) == 1) {
      return static_cast<uint8_t>(b);
    }
  }
  return 0;  // unreachable: every nonzero element has an inverse
}

uint8_t aes_affine(uint8_t x) {
  uint8_t out = 0;
  for (int i = 0; i < 8; ++i) {
    int bit = ((x >> i) ^ (x >> ((i + 4) % 8)) ^ (x >> ((i + 5) % 8)) ^
               (x >> ((i + 6) % 8)) ^ (x >> ((i + 7) % 8))) &
              1;
    out |= static_cast<uint8_t>(bit << i);
  }
  return out ^ 0x63;
}

std::array<uint8_t, 8> aes_affine_columns() {
  std::array<uint8_t, 8> cols{};
  for (int i = 0; i < 8; ++i) {
    cols[i] = aes_affine(static_cast<uint8_t>(1 << i)) ^ aes_affine(0);
  }
  return cols;
}

uint8_t canonical_sbox(uint8_t x) { return aes_affine(gf256_inverse(x)); }

uint8_t gf16_mul(uint8_t a, uint8_t b) {
  uint8_t p = 0;
  a &= 0xf;
  b &= 0xf;
  for (int i = 0; i < 4; ++i) {
    if (b & 1) p ^= a;
    bool hi = a & 0x8;
    a = static_cast<uint8_t>((a << 1) & 0xf);
    if (hi) a ^= kGf16Poly & 0xf;
    b >>= 1;
  }
  return p;
}

uint8_t gf16_square(uint8_t a) { return gf16_mul(a, a); }

uint8_t gf16_inverse(uint8_t a) {
  a &= 0xf;
  if (a == 0) return 0;
  for (int b = 1; b < 16; ++b) {
    if (gf16_mul(a, static_cast<uint8_t>(b)) == 1) {
      return static_cast<uint8_t>(b);
    }
  }
  return 0;
}

}  // namespace scpdp::gf
