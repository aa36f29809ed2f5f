#pragma once

#include <array>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "suq2/algebra.hpp"

namespace suq2 {

using Tuple = std::vector<Element>;

// Formal combination of (n+1)-fold tensors.
struct Chain {
    int degree = 0;
    std::vector<std::pair<Scalar, Tuple>> terms;

    void add(const Scalar& c, Tuple t);
};

struct Cochain {
    int degree = 0;
    std::function<Scalar(const Tuple&)> eval;
    std::string name;

    Scalar operator()(const Tuple& t) const;
};

class DegreeMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class OutsideEvaluatedDomain : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

// (b phi)(a_0..a_{n+1}) with alternating signs and the last factor cycled through theta^-1.
Scalar twisted_boundary_eval(const Cochain& phi, const Tuple& t);
Scalar twisted_boundary_eval(const Cochain& phi, const Chain& chain);
Cochain twisted_boundary(const Cochain& phi);

enum class CupVariant { id, v132, v213, v312, v231, v321 };
inline constexpr std::array<CupVariant, 6> all_cup_variants{CupVariant::id,   CupVariant::v132, CupVariant::v213,
                                                            CupVariant::v312, CupVariant::v231, CupVariant::v321};
std::string variant_name(CupVariant v);
CupVariant cup_variant_from_string(const std::string& s);

Scalar cup_cocycle(CupVariant v, const Element& a0, const Element& a1, const Element& a2, const Element& a3);
Cochain cup_cochain(CupVariant v);

enum class PsiVariant { v132, v213 };
Scalar psi_cochain(PsiVariant v, const Element& a0, const Element& a1, const Element& a2);
Cochain psi(PsiVariant v);
// The second summand on the left of the psi coboundary identities: the cup
// product with the transported derivations.  It equals minus the matching
// permuted cocycle.
Scalar transported_cup(PsiVariant v, const Element& a0, const Element& a1, const Element& a2, const Element& a3);

Chain dvol();
Scalar pair(const Cochain& phi, const Chain& chain);

// Sum over m of M_m * Dhat^m, Dhat the rescaled modular operator.
struct ModularMatrix {
    using Block = std::array<std::array<Element, 2>, 2>;
    std::map<int, Block> parts;

    static ModularMatrix diag(const Element& x, const Element& y, int power = 0);
    static ModularMatrix scalar(const Element& x) { return diag(x, x); }
    static ModularMatrix off_diag(const Element& upper, const Element& lower, int power = 0);
    static ModularMatrix gamma(const Element& x) { return diag(x, -x); }

    void prune();
    friend bool operator==(const ModularMatrix& x, const ModularMatrix& y);
};

ModularMatrix mm_mul(const ModularMatrix& x, const ModularMatrix& y);
ModularMatrix mm_add(const ModularMatrix& x, const ModularMatrix& y);
// [D, alpha] as S(alpha) + T(alpha) Dhat.
ModularMatrix commutator_D(const Element& alpha);
ModularMatrix S_tilde(const Element& alpha);
ModularMatrix T_tilde(const Element& alpha);

Scalar tau_over_R(const ModularMatrix& m);
Scalar phi_res_over_R(const Element& a0, const Element& a1, const Element& a2, const Element& a3);
// q^2 (phi + phi_213 + phi_231) + (phi_132 + phi_312 + phi_321)
Scalar phi_res_combination(const Element& a0, const Element& a1, const Element& a2, const Element& a3);
Cochain phi_res_cochain();
std::pair<Element, Element> pi_split(const Element& a0, const Element& a1, const Element& a2, const Element& a3);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const std::string& variant, const Tuple& t, const Scalar& value);

}  // namespace suq2
