#include "suq2/hochschild.hpp"

#include "suq2/actions.hpp"
#include "suq2/functionals.hpp"

namespace suq2 {

void Chain::add(const Scalar& c, Tuple t) {
    if (!terms.empty() && static_cast<int>(t.size()) != degree + 1)
        throw DegreeMismatch("chain term has wrong tensor length");
    if (terms.empty()) degree = static_cast<int>(t.size()) - 1;
    terms.emplace_back(c, std::move(t));
}

Scalar Cochain::operator()(const Tuple& t) const {
    if (static_cast<int>(t.size()) != degree + 1)
        throw DegreeMismatch(name + ": expected " + std::to_string(degree + 1) + " arguments, got " +
                             std::to_string(t.size()));
    return eval(t);
}

Scalar twisted_boundary_eval(const Cochain& phi, const Tuple& t) {
    const int n = phi.degree;
    if (static_cast<int>(t.size()) != n + 2) throw DegreeMismatch("boundary: tuple length must be degree + 2");
    Scalar total;
    Tuple ys(n + 1);
    for (int i = 0; i <= n; ++i) {
        for (int k = 0, j = 0; k < n + 2; ++k, ++j) {
            if (k == i) {
                ys[j] = mul(t[i], t[i + 1]);
                ++k;
            } else {
                ys[j] = t[k];
            }
        }
        Scalar val = phi(ys);
        total += i % 2 ? -val : val;
    }
    ys[0] = mul(theta(t[n + 1], -1), t[0]);
    for (int k = 1; k <= n; ++k) ys[k] = t[k];
    Scalar val = phi(ys);
    total += (n + 1) % 2 ? -val : val;
    return total;
}

Scalar twisted_boundary_eval(const Cochain& phi, const Chain& chain) {
    if (!chain.terms.empty() && chain.degree != phi.degree + 1) throw DegreeMismatch("boundary: chain degree");
    Scalar total;
    for (const auto& [c, t] : chain.terms) total += c * twisted_boundary_eval(phi, t);
    return total;
}

Cochain twisted_boundary(const Cochain& phi) {
    return {phi.degree + 1, [phi](const Tuple& t) { return twisted_boundary_eval(phi, t); }, "b(" + phi.name + ")"};
}

std::string variant_name(CupVariant v) {
    switch (v) {
        case CupVariant::id: return "id";
        case CupVariant::v132: return "132";
        case CupVariant::v213: return "213";
        case CupVariant::v312: return "312";
        case CupVariant::v231: return "231";
        case CupVariant::v321: return "321";
    }
    return "?";
}

CupVariant cup_variant_from_string(const std::string& s) {
    for (auto v : all_cup_variants)
        if (variant_name(v) == s) return v;
    if (s == "phi") return CupVariant::id;
    throw std::invalid_argument("unknown cocycle variant '" + s + "'");
}

namespace {

Element prod(std::initializer_list<Element> xs) { return product(xs); }

Scalar q_coef(int k, long c) { return Scalar::q_pow(k, c); }

}  // namespace

Scalar cup_cocycle(CupVariant v, const Element& a0, const Element& a1, const Element& a2, const Element& a3) {
    switch (v) {
        case CupVariant::id:
            return int_one(prod({k_pow(mul(a0, act_H(a1)), -4), k_pow(act_e(a2), -3), k_pow(act_f(a3), -1)}));
        case CupVariant::v132:
            return q_coef(-2, -1) *
                   int_one(prod({k_pow(mul(a0, act_H(a1)), -4), k_pow(act_f(a2), -3), k_pow(act_e(a3), -1)}));
        case CupVariant::v213:
            return -int_one(
                prod({k_pow(a0, -4), k_pow(act_e(a1), -3), k_pow(act_H(a2), -2), k_pow(act_f(a3), -1)}));
        case CupVariant::v312:
            return q_coef(-2, 1) *
                   int_one(prod({k_pow(a0, -4), k_pow(act_f(a1), -3), k_pow(act_H(a2), -2), k_pow(act_e(a3), -1)}));
        case CupVariant::v231:
            return int_one(prod({k_pow(a0, -4), k_pow(act_e(a1), -3), k_pow(act_f(a2), -1), act_H(a3)}));
        case CupVariant::v321:
            return q_coef(-2, -1) *
                   int_one(prod({k_pow(a0, -4), k_pow(act_f(a1), -3), k_pow(act_e(a2), -1), act_H(a3)}));
    }
    return {};
}

Cochain cup_cochain(CupVariant v) {
    return {3, [v](const Tuple& t) { return cup_cocycle(v, t[0], t[1], t[2], t[3]); },
            v == CupVariant::id ? "phi" : "phi_" + variant_name(v)};
}

// sigma_0 = sigma_1 = k^-4, sigma_2 = k^-2, sigma_3 = id;
// d_1 = k^-4 dH, d_2 = k^-3 de, d_3 = k^-1 df.
Scalar psi_cochain(PsiVariant v, const Element& a0, const Element& a1, const Element& a2) {
    if (v == PsiVariant::v132)
        return int_one(
            prod({k_pow(a0, -4), k_pow(act_H(a1), -4), k_pow(act_e(k_pow(k_pow(act_f(a2), -1), 2)), -3)}));
    return -int_one(prod({k_pow(a0, -4), k_pow(act_H(k_pow(k_pow(act_e(a1), -3), 4)), -4), k_pow(act_f(a2), -1)}));
}

Cochain psi(PsiVariant v) {
    return {2, [v](const Tuple& t) { return psi_cochain(v, t[0], t[1], t[2]); },
            v == PsiVariant::v132 ? "psi_132" : "psi_213"};
}

Scalar transported_cup(PsiVariant v, const Element& a0, const Element& a1, const Element& a2, const Element& a3) {
    if (v == PsiVariant::v132)
        // d3~ = sigma_1 sigma_2^-1 d_3 = k^-3 df, d2~ = d_2 sigma_2^-1 sigma_3 = k^-3 de k^2
        return int_one(prod({k_pow(a0, -4), k_pow(act_H(a1), -4), k_pow(act_f(a2), -3),
                             k_pow(act_e(k_pow(a3, 2)), -3)}));
    // d2^ = sigma_0 sigma_1^-1 d_2 = k^-3 de, d1^ = d_1 sigma_1^-1 sigma_2 = k^-4 dH k^2
    return int_one(
        prod({k_pow(a0, -4), k_pow(act_e(a1), -3), k_pow(act_H(k_pow(a2, 2)), -4), k_pow(act_f(a3), -1)}));
}

Chain dvol() {
    const std::pair<Scalar, const char*> rows[] = {
        {Scalar(1), "dabc"},          {q_coef(0, -1), "dacb"}, {q_coef(1, 1), "dcab"},
        {q_coef(2, -1), "dcba"},      {q_coef(2, 1), "dbca"},  {q_coef(1, -1), "dbac"},
        {Scalar(1), "cbad"},          {q_coef(0, -1), "cbda"}, {q_coef(1, 1), "cdba"},
        {q_coef(0, -1), "cdab"},      {Scalar(1), "cadb"},     {q_coef(-1, -1), "cabd"},
        {q_coef(-1, 1) - q_coef(1, 1), "cbcb"},
    };
    Chain ch;
    for (const auto& [c, w] : rows) {
        Tuple t;
        for (const char* p = w; *p; ++p) t.push_back(Element::gen(gen_from_char(*p)));
        ch.add(c, std::move(t));
    }
    return ch;
}

Scalar pair(const Cochain& phi, const Chain& chain) {
    if (!chain.terms.empty() && chain.degree != phi.degree) throw DegreeMismatch("pair: degrees differ");
    Scalar total;
    for (const auto& [c, t] : chain.terms) total += c * phi(t);
    return total;
}

// ---- modular matrices

ModularMatrix ModularMatrix::diag(const Element& x, const Element& y, int power) {
    ModularMatrix m;
    m.parts[power] = {{{x, Element()}, {Element(), y}}};
    m.prune();
    return m;
}

ModularMatrix ModularMatrix::off_diag(const Element& upper, const Element& lower, int power) {
    ModularMatrix m;
    m.parts[power] = {{{Element(), upper}, {lower, Element()}}};
    m.prune();
    return m;
}

void ModularMatrix::prune() {
    for (auto it = parts.begin(); it != parts.end();) {
        const auto& b = it->second;
        bool zero = b[0][0].is_zero() && b[0][1].is_zero() && b[1][0].is_zero() && b[1][1].is_zero();
        it = zero ? parts.erase(it) : std::next(it);
    }
}

bool operator==(const ModularMatrix& x, const ModularMatrix& y) { return x.parts == y.parts; }

ModularMatrix mm_add(const ModularMatrix& x, const ModularMatrix& y) {
    ModularMatrix out = x;
    for (const auto& [p, b] : y.parts) {
        auto& o = out.parts[p];
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t) o[s][t] += b[s][t];
    }
    out.prune();
    return out;
}

// Dhat^p (m_st) = q^{2p(s-t)} sigma_L^{-p}(m_st) Dhat^p
ModularMatrix mm_mul(const ModularMatrix& x, const ModularMatrix& y) {
    ModularMatrix out;
    for (const auto& [p, A] : x.parts)
        for (const auto& [r, B] : y.parts) {
            ModularMatrix::Block moved;
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t)
                    moved[s][t] = sigma_L(B[s][t], -2 * p).scaled(Scalar::q_pow(2 * p * (s - t)));
            auto& C = out.parts[p + r];
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t)
                    for (int u = 0; u < 2; ++u) C[s][t] += mul(A[s][u], moved[u][t]);
        }
    out.prune();
    return out;
}

ModularMatrix S_tilde(const Element& alpha) { return ModularMatrix::gamma(act_H(alpha)); }

ModularMatrix T_tilde(const Element& alpha) {
    Element s = sigma_L(alpha, -1);
    return ModularMatrix::off_diag(act_e(s).scaled(Scalar::v_pow(-1)), act_f(s).scaled(Scalar::v_pow(1)));
}

ModularMatrix commutator_D(const Element& alpha) {
    ModularMatrix t = T_tilde(alpha);
    ModularMatrix out = S_tilde(alpha);
    for (auto& [p, b] : t.parts) out.parts[p + 1] = b;
    out.prune();
    return out;
}

Scalar tau_over_R(const ModularMatrix& m) {
    Scalar total;
    for (const auto& [p, b] : m.parts) {
        bool diag_zero = b[0][0].is_zero() && b[1][1].is_zero();
        if (p == 2) {
            total += int_one(b[0][0]) + int_one(b[1][1]);
        } else if (diag_zero) {
            continue;
        } else if (p == 0 && (b[0][0] + b[1][1]).is_zero()) {
            continue;
        } else {
            throw OutsideEvaluatedDomain("tau: diagonal part at modular power " + std::to_string(p) +
                                         " is not of the form (x, -x)");
        }
    }
    return total;
}

Scalar phi_res_over_R(const Element& a0, const Element& a1, const Element& a2, const Element& a3) {
    ModularMatrix x = ModularMatrix::scalar(a0);
    for (const Element* a : {&a1, &a2, &a3}) x = mm_mul(x, commutator_D(*a));
    return tau_over_R(x);
}

Scalar phi_res_combination(const Element& a0, const Element& a1, const Element& a2, const Element& a3) {
    auto c = [&](CupVariant v) { return cup_cocycle(v, a0, a1, a2, a3); };
    return Scalar::q_pow(2) * (c(CupVariant::id) + c(CupVariant::v213) + c(CupVariant::v231)) +
           (c(CupVariant::v132) + c(CupVariant::v312) + c(CupVariant::v321));
}

Cochain phi_res_cochain() {
    return {3, [](const Tuple& t) { return phi_res_over_R(t[0], t[1], t[2], t[3]); }, "phi_res/R"};
}

std::pair<Element, Element> pi_split(const Element& a0, const Element& a1, const Element& a2, const Element& a3) {
    auto s = [](const Element& x, int twice) { return sigma_L(x, twice); };
    Element pi1 = prod({a0, act_H(a1), act_e(s(a2, -1)), act_f(s(a3, -3))}) -
                  prod({a0, act_e(s(a1, -1)), act_H(s(a2, -2)), act_f(s(a3, -3))}) +
                  prod({a0, act_e(s(a1, -1)), act_f(s(a2, -3)), act_H(s(a3, -4))});
    Element pi2 = -prod({a0, act_H(a1), act_f(s(a2, -1)), act_e(s(a3, -3))}) +
                  prod({a0, act_f(s(a1, -1)), act_H(s(a2, -2)), act_e(s(a3, -3))}) -
                  prod({a0, act_f(s(a1, -1)), act_e(s(a2, -3)), act_H(s(a3, -4))});
    return {pi1, pi2};
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

void write_csv_header(std::ostream& os) { os << "variant,tuple,value\n"; }

void write_csv_row(std::ostream& os, const std::string& variant, const Tuple& t, const Scalar& value) {
    std::string tup;
    for (size_t i = 0; i < t.size(); ++i) tup += (i ? " | " : "") + t[i].to_string();
    os << csv_quote(variant) << ',' << csv_quote(tup) << ',' << csv_quote(value.to_string()) << '\n';
}

}  // namespace suq2
