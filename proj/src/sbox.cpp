#include "scpdp/sbox.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "scpdp/gf.hpp"

namespace scpdp {

using gf::gf16_mul;

uint8_t apply_columns(const std::array<uint8_t, 8>& cols, uint8_t x) {
  uint8_t r = 0;
  for (int i = 0; i < 8; ++i) {
    if (x >> i & 1) r ^= cols[i];
  }
  return r;
}

uint8_t composite_mul(const CompositeFieldParams& p, uint8_t u, uint8_t v) {
  uint8_t a1 = u >> 4, b1 = u & 0xf;
  uint8_t a2 = v >> 4, b2 = v & 0xf;
  uint8_t aa = gf16_mul(a1, a2);
  uint8_t hi = static_cast<uint8_t>(gf16_mul(a1, b2) ^ gf16_mul(a2, b1) ^ aa);
  uint8_t lo = static_cast<uint8_t>(gf16_mul(b1, b2) ^ gf16_mul(aa, p.lambda));
  return static_cast<uint8_t>(hi << 4 | lo);
}

namespace {

bool extension_irreducible(uint8_t lambda) {
  // y^2 + y + lambda has a root in GF(2^4) iff lambda is in the image of
  // x -> x^2 + x.
  for (int x = 0; x < 16; ++x) {
    if ((gf16_mul(x, x) ^ x) == lambda) return false;
  }
  return true;
}

std::array<uint8_t, 8> invert_columns(const std::array<uint8_t, 8>& cols) {
  // Gauss-Jordan over GF(2); rows held as 16-bit masks (matrix | identity).
  uint16_t rows[8];
  for (int i = 0; i < 8; ++i) {
    uint16_t r = 0;
    for (int j = 0; j < 8; ++j) {
      if (cols[j] >> i & 1) r |= uint16_t(1) << j;
    }
    r |= uint16_t(1) << (8 + i);
    rows[i] = r;
  }
  int rank = 0;
  for (int c = 0; c < 8; ++c) {
    int piv = -1;
    for (int i = rank; i < 8; ++i) {
      if (rows[i] >> c & 1) {
        piv = i;
        break;
      }
    }
    if (piv < 0) throw std::invalid_argument("matrix is singular");
    std::swap(rows[rank], rows[piv]);
    for (int i = 0; i < 8; ++i) {
      if (i != rank && (rows[i] >> c & 1)) rows[i] ^= rows[rank];
    }
    ++rank;
  }
  std::array<uint8_t, 8> inv{};
  for (int j = 0; j < 8; ++j) {
    uint8_t col = 0;
    for (int i = 0; i < 8; ++i) {
      if (rows[i] >> (8 + j) & 1) col |= uint8_t(1) << i;
    }
    inv[j] = col;
  }
  return inv;
}

CompositeFieldParams make_default_params() {
  CompositeFieldParams p;
  p.gf16_poly = gf::kGf16Poly;
  for (int l = 1; l < 16; ++l) {
    if (extension_irreducible(static_cast<uint8_t>(l))) {
      p.lambda = static_cast<uint8_t>(l);
      break;
    }
  }
  // The smallest root of the AES polynomial in the composite field defines
  // the basis change: column i of delta is gamma^i.
  auto cpow = [&](uint8_t g, int n) {
    uint8_t r = 1;
    for (int i = 0; i < n; ++i) r = composite_mul(p, r, g);
    return r;
  };
  uint8_t gamma = 0;
  for (int g = 2; g < 256; ++g) {
    uint8_t v = static_cast<uint8_t>(cpow(g, 8) ^ cpow(g, 4) ^ cpow(g, 3) ^
                                     g ^ 1);
    if (v == 0) {
      gamma = static_cast<uint8_t>(g);
      break;
    }
  }
  for (int i = 0; i < 8; ++i) p.delta[i] = cpow(gamma, i);
  p.delta_inv = invert_columns(p.delta);
  p.affine = gf::aes_affine_columns();
  p.affine_const = 0x63;
  return p;
}

}  // namespace

const CompositeFieldParams& default_composite_params() {
  static const CompositeFieldParams p = make_default_params();
  return p;
}

void validate_params(const CompositeFieldParams& p) {
  if (p.gf16_poly != gf::kGf16Poly) {
    throw std::invalid_argument("unsupported subfield polynomial");
  }
  if (!extension_irreducible(p.lambda)) {
    throw std::invalid_argument("extension polynomial y^2+y+lambda is reducible");
  }
  for (int i = 0; i < 8; ++i) {
    uint8_t e = static_cast<uint8_t>(1 << i);
    if (apply_columns(p.delta_inv, apply_columns(p.delta, e)) != e) {
      throw std::invalid_argument("delta * delta_inv is not the identity");
    }
  }
}

namespace {

using Nibble = std::vector<std::string>;  // 4 signal names, LSB first

/// out bit j = XOR of inputs i with bit j of cols[i] set.
Nibble emit_linear(NetlistBuilder& b, const std::vector<uint8_t>& cols,
                   const Nibble& in, int out_width, const std::string& prefix) {
  Nibble out;
  for (int j = 0; j < out_width; ++j) {
    std::vector<std::string> terms;
    for (size_t i = 0; i < cols.size(); ++i) {
      if (cols[i] >> j & 1) terms.push_back(in[i]);
    }
    if (terms.empty()) {
      out.push_back("const0");
    } else {
      out.push_back(b.xor_tree(prefix + std::to_string(j), terms));
    }
  }
  return out;
}

/// Multiplier over GF(2^4): 16 partial products, then the reduction of the
/// degree-6 polynomial product by x^4+x+1.
Nibble emit_gf16_mul(NetlistBuilder& b, const Nibble& x, const Nibble& y,
                     const std::string& prefix) {
  std::string pp[4][4];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      pp[i][j] = b.add_gate(GateOp::And,
                            prefix + "_pp" + std::to_string(i) + std::to_string(j),
                            x[i], y[j]);
    }
  }
  std::string p[7];
  for (int k = 0; k < 7; ++k) {
    std::vector<std::string> terms;
    for (int i = std::max(0, k - 3); i <= std::min(3, k); ++i) {
      terms.push_back(pp[i][k - i]);
    }
    p[k] = b.xor_tree(prefix + "_p" + std::to_string(k), terms);
  }
  // t^k mod (t^4 + t + 1) for k = 0..6
  uint8_t red[7];
  for (int k = 0; k < 7; ++k) {
    uint8_t v = 1;
    for (int i = 0; i < k; ++i) {
      bool hi = v & 8;
      v = static_cast<uint8_t>((v << 1) & 0xf);
      if (hi) v ^= gf::kGf16Poly & 0xf;
    }
    red[k] = v;
  }
  Nibble out;
  for (int j = 0; j < 4; ++j) {
    std::vector<std::string> terms;
    for (int k = 0; k < 7; ++k) {
      if (red[k] >> j & 1) terms.push_back(p[k]);
    }
    out.push_back(b.xor_tree(prefix + "_c" + std::to_string(j), terms));
  }
  return out;
}

std::vector<uint8_t> square_columns() {
  std::vector<uint8_t> cols(4);
  for (int i = 0; i < 4; ++i) cols[i] = gf::gf16_square(uint8_t(1) << i);
  return cols;
}

std::vector<uint8_t> scale_columns(uint8_t lambda) {
  std::vector<uint8_t> cols(4);
  for (int i = 0; i < 4; ++i) cols[i] = gf16_mul(lambda, uint8_t(1) << i);
  return cols;
}

/// Subfield inversion as a two-level xor/and network: the algebraic normal
/// form of each output bit, with monomial products shared across bits.
Nibble emit_gf16_inv(NetlistBuilder& b, const Nibble& in,
                     const std::string& prefix) {
  uint8_t anf[16];
  for (int x = 0; x < 16; ++x) anf[x] = gf::gf16_inverse(static_cast<uint8_t>(x));
  for (int i = 0; i < 4; ++i) {
    for (int x = 0; x < 16; ++x) {
      if (x >> i & 1) anf[x] ^= anf[x ^ (1 << i)];
    }
  }
  std::map<int, std::string> mono;
  std::function<std::string(int)> monomial = [&](int m) -> std::string {
    auto it = mono.find(m);
    if (it != mono.end()) return it->second;
    int top = 3;
    while (!(m >> top & 1)) --top;
    int rest = m ^ (1 << top);
    std::string sig =
        rest == 0 ? in[top]
                  : b.add_gate(GateOp::And, prefix + "_t" + std::to_string(m),
                               monomial(rest), in[top]);
    mono.emplace(m, sig);
    return sig;
  };
  Nibble out;
  for (int j = 0; j < 4; ++j) {
    std::vector<std::string> terms;
    for (int m = 1; m < 16; ++m) {
      if (anf[m] >> j & 1) terms.push_back(monomial(m));
    }
    std::string name = prefix + "_o" + std::to_string(j);
    std::string sig;
    if (terms.empty()) {
      sig = anf[0] >> j & 1 ? "const1" : "const0";
    } else {
      sig = b.xor_tree(name, terms);
      if (anf[0] >> j & 1) sig = b.add_gate(GateOp::Not, name + "n", sig);
    }
    out.push_back(sig);
  }
  return out;
}

Nibble emit_xor_nibble(NetlistBuilder& b, const Nibble& x, const Nibble& y,
                       const std::string& prefix) {
  Nibble out;
  for (int j = 0; j < 4; ++j) {
    out.push_back(b.add_gate(GateOp::Xor, prefix + std::to_string(j), x[j], y[j]));
  }
  return out;
}

void bind_outputs(NetlistBuilder& b, const std::vector<std::string>& sigs,
                  uint8_t invert_mask) {
  for (size_t j = 0; j < sigs.size(); ++j) {
    std::string y = "y" + std::to_string(j);
    b.add_gate(invert_mask >> j & 1 ? GateOp::Not : GateOp::Buf, y, sigs[j]);
    b.mark_output(y);
  }
}

}  // namespace

SingleRailNetlist build_sbox_netlist(const CompositeFieldParams& p) {
  validate_params(p);
  NetlistBuilder b;
  std::vector<std::string> x;
  for (int i = 0; i < 8; ++i) x.push_back(b.add_input("x" + std::to_string(i)));

  // Isomorphic map into the composite representation; low nibble is the
  // constant term, high nibble the coefficient of y.
  std::vector<uint8_t> delta_cols(p.delta.begin(), p.delta.end());
  auto m = emit_linear(b, delta_cols, x, 8, "m");
  Nibble lo(m.begin(), m.begin() + 4);
  Nibble hi(m.begin() + 4, m.end());

  // Norm d = hi^2 * lambda + (hi + lo) * lo, then invert in the subfield.
  auto sq = emit_linear(b, square_columns(), hi, 4, "sq");
  auto sl = emit_linear(b, scale_columns(p.lambda), sq, 4, "sl");
  auto t = emit_xor_nibble(b, hi, lo, "t");
  auto nm = emit_gf16_mul(b, t, lo, "nm");
  auto d = emit_xor_nibble(b, sl, nm, "d");
  auto di = emit_gf16_inv(b, d, "inv");

  // Inverse in the extension: high nibble hi*d^-1, low nibble (hi+lo)*d^-1.
  auto ch = emit_gf16_mul(b, hi, di, "mh");
  auto cl = emit_gf16_mul(b, t, di, "ml");

  std::vector<std::string> v;
  v.insert(v.end(), cl.begin(), cl.end());
  v.insert(v.end(), ch.begin(), ch.end());

  // Merged output stage: affine matrix composed with the inverse map, plus
  // the affine constant realized as free inversions.
  std::vector<uint8_t> out_cols(8);
  for (int i = 0; i < 8; ++i) out_cols[i] = apply_columns(p.affine, p.delta_inv[i]);
  auto s = emit_linear(b, out_cols, v, 8, "s");
  bind_outputs(b, s, p.affine_const);
  return b.build();
}

SingleRailNetlist build_gf16_fragment(Gf16Op op, const CompositeFieldParams& p) {
  validate_params(p);
  NetlistBuilder b;
  Nibble a;
  for (int i = 0; i < 4; ++i) a.push_back(b.add_input("a" + std::to_string(i)));
  Nibble out;
  switch (op) {
    case Gf16Op::Multiply: {
      Nibble bb;
      for (int i = 0; i < 4; ++i) {
        bb.push_back(b.add_input("b" + std::to_string(i)));
      }
      out = emit_gf16_mul(b, a, bb, "m");
      break;
    }
    case Gf16Op::Square:
      out = emit_linear(b, square_columns(), a, 4, "sq");
      break;
    case Gf16Op::ScaleLambda:
      out = emit_linear(b, scale_columns(p.lambda), a, 4, "sl");
      break;
    case Gf16Op::Invert:
      out = emit_gf16_inv(b, a, "inv");
      break;
  }
  bind_outputs(b, out, 0);
  return b.build();
}

}  // namespace scpdp
