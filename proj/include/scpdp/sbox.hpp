#pragma once

#include <array>
#include <cstdint>

#include "scpdp/netlist.hpp"

namespace scpdp {

/// Parameters of the GF((2^4)^2) decomposition used by the S-box generator.
/// All 8x8 GF(2) matrices are stored column-wise: byte i is the image of
/// basis vector e_i. The defaults are derived deterministically (see
/// default_composite_params) and are validated solely by the 256-entry
/// oracle test, so any isomorphism works.
struct CompositeFieldParams {
  uint8_t gf16_poly = 0;   // reduction polynomial of the subfield
  uint8_t lambda = 0;      // extension y^2 + y + lambda
  std::array<uint8_t, 8> delta{};       // GF(2^8) -> GF(2^4)^2
  std::array<uint8_t, 8> delta_inv{};
  std::array<uint8_t, 8> affine{};      // AES affine matrix
  uint8_t affine_const = 0;             // 0x63
};

/// Fixed construction: subfield GF(2^4)/(x^4+x+1), the smallest lambda
/// making y^2+y+lambda irreducible, and delta columns gamma^i for the
/// smallest root gamma of the AES polynomial in the composite field.
const CompositeFieldParams& default_composite_params();

/// Throws std::invalid_argument when delta/delta_inv do not compose to the
/// identity, the extension polynomial is reducible, or the subfield
/// polynomial is unsupported.
void validate_params(const CompositeFieldParams& p);

/// Arithmetic in the composite representation (high nibble = coefficient of
/// y, low nibble = constant term). Exposed for the oracle-side tests.
uint8_t composite_mul(const CompositeFieldParams& p, uint8_t a, uint8_t b);
uint8_t apply_columns(const std::array<uint8_t, 8>& cols, uint8_t x);

/// 8-in/8-out netlist computing the S-box: isomorphic map, subfield norm
/// (square, scale by lambda, multiply), subfield inversion, the two output
/// multipliers, and a merged inverse-map+affine output stage. Inputs are
/// x0..x7 (LSB first), outputs y0..y7.
SingleRailNetlist build_sbox_netlist(
    const CompositeFieldParams& p = default_composite_params());

enum class Gf16Op { Multiply, Square, ScaleLambda, Invert };

/// Standalone fragment for one subfield block, inputs a0..a3 (and b0..b3 for
/// Multiply), outputs y0..y3. The same emission code underlies the full
/// S-box netlist.
SingleRailNetlist build_gf16_fragment(
    Gf16Op op, const CompositeFieldParams& p = default_composite_params());

}  // namespace scpdp
