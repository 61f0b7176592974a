#pragma once

#include <array>
#include <cstdint>

namespace scpdp::gf {

/// GF(2^8) with the AES reduction polynomial x^8 + x^4 + x^3 + x + 1.
uint8_t gf256_mul(uint8_t a, uint8_t b);

/// Multiplicative inverse by exhaustive search; inverse(0) := 0.
uint8_t gf256_inverse(uint8_t a);

/// The AES affine transform y = M x + 0x63 over GF(2).
uint8_t aes_affine(uint8_t x);

/// Column-of-M form of the affine matrix: column i is the image of bit i.
std::array<uint8_t, 8> aes_affine_columns();

/// Reference S-box: inverse in GF(2^8) followed by the affine transform.
uint8_t canonical_sbox(uint8_t x);

/// GF(2^4) with reduction polynomial x^4 + x + 1.
inline constexpr uint8_t kGf16Poly = 0x13;

uint8_t gf16_mul(uint8_t a, uint8_t b);
uint8_t gf16_square(uint8_t a);
/// inverse(0) := 0.
uint8_t gf16_inverse(uint8_t a);

}  // namespace scpdp::gf
