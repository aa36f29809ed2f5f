#pragma once

#include "suq2/algebra.hpp"

namespace suq2 {

// Haar state on the polynomial basis: h(b^m c^r) = delta_{mr} (-1)^r [r+1]^-1.
Scalar haar(const Element& x);

// Coefficient of the unit monomial.
Scalar int_one(const Element& x);

// <x, y> = h(x* y)
Scalar gns_inner(const Element& x, const Element& y);

}  // namespace suq2
