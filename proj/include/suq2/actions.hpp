#pragma once

#include "suq2/algebra.hpp"

namespace suq2 {

enum class Side { left, right };

// Multiplies each bi-homogeneous component by v^(h * w), w the doubled weight on
// the chosen side.  On the left this is k^h; on the right the mirror action.
Element act_weight(const Element& x, Side side, int h);

// Shorthands built on act_weight.  Powers of sigma are passed doubled so that
// half-integer powers stay integral: sigma_L(x, 1) is sigma_L^{1/2}.
Element k_pow(const Element& x, int n);
Element sigma_L(const Element& x, int twice_s);
Element sigma_R(const Element& x, int twice_s);
Element theta(const Element& x, int p = 1);

Element act_e(const Element& x);
Element act_f(const Element& x);
Element act_H(const Element& x);

enum class HopfGen { k, k_inv, e, f };

// Pairing <g, x> of U_q(su2) generators with the coordinate algebra.
Scalar pairing(HopfGen g, const Monomial& mono);
// g |> x = sum x_(1) <g, x_(2)>, through the coproduct.
Element sweedler_oracle(HopfGen g, const Element& x);

}  // namespace suq2
