#include "suq2/actions.hpp"

namespace suq2 {

Element act_weight(const Element& x, Side side, int h) {
    if (h == 0) return x;
    Element out;
    for (const auto& [mo, c] : x.terms()) {
        int w = side == Side::left ? mo.left_weight() : mo.right_weight();
        out.add_term(mo, c.times_v(h * w));
    }
    return out;
}

Element k_pow(const Element& x, int n) { return act_weight(x, Side::left, n); }

// sigma_L^s scales t^l_{ij} by q^{-2js} = v^{-J * 2s}
Element sigma_L(const Element& x, int twice_s) { return act_weight(x, Side::left, -twice_s); }
Element sigma_R(const Element& x, int twice_s) { return act_weight(x, Side::right, -twice_s); }

Element theta(const Element& x, int p) {
    Element out;
    for (const auto& [mo, c] : x.terms())
        out.add_term(mo, c.times_v(-2 * p * (mo.left_weight() + mo.right_weight())));
    return out;
}

namespace {

std::vector<Gen> letters_of(const Monomial& mo) {
    std::vector<Gen> w;
    w.insert(w.end(), mo.n, Gen::a);
    w.insert(w.end(), mo.m, Gen::b);
    w.insert(w.end(), mo.r, Gen::c);
    w.insert(w.end(), mo.s, Gen::d);
    return w;
}

// d(x1...xn) = sum_i k^-1(x1..x_{i-1}) d(x_i) k(x_{i+1}..x_n)
Element twisted_derivation(const Element& x, Gen from1, Gen to1, Gen from2, Gen to2) {
    Element out;
    for (const auto& [mo, c] : x.terms()) {
        auto w = letters_of(mo);
        int suffix_weight = mo.left_weight();
        int prefix_weight = 0;
        for (size_t i = 0; i < w.size(); ++i) {
            suffix_weight -= left_weight(w[i]);
            Gen g = w[i];
            if (g == from1 || g == from2) {
                Element t = Element::one();
                for (size_t k = 0; k < w.size(); ++k) t = rmul_gen(t, k == i ? (g == from1 ? to1 : to2) : w[k]);
                out += t.scaled(c.times_v(suffix_weight - prefix_weight));
            }
            prefix_weight += left_weight(w[i]);
        }
    }
    return out;
}

}  // namespace

Element act_e(const Element& x) { return twisted_derivation(x, Gen::a, Gen::b, Gen::c, Gen::d); }
Element act_f(const Element& x) { return twisted_derivation(x, Gen::b, Gen::a, Gen::d, Gen::c); }

Element act_H(const Element& x) {
    Element out;
    for (const auto& [mo, c] : x.terms()) out.add_term(mo, c * Scalar(mpq_class(mo.left_weight(), 2)));
    return out;
}

Scalar pairing(HopfGen g, const Monomial& mono) {
    auto w = letters_of(mono);
    auto kval = [](Gen x, int sign) -> std::pair<bool, int> {
        // <k, a> = q^-1/2, <k, d> = q^1/2, zero on b and c
        if (x == Gen::a) return {true, -sign};
        if (x == Gen::d) return {true, sign};
        return {false, 0};
    };
    if (g == HopfGen::k || g == HopfGen::k_inv) {
        int sign = g == HopfGen::k ? 1 : -1;
        int e = 0;
        for (Gen x : w) {
            auto [ok, k] = kval(x, sign);
            if (!ok) return Scalar();
            e += k;
        }
        return Scalar::v_pow(e);
    }
    // <e, x1..xn> = sum_i prod_{m<i} <k^-1, x_m> <e, x_i> prod_{m>i} <k, x_m>
    Gen hit = g == HopfGen::e ? Gen::c : Gen::b;
    Scalar total;
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] != hit) continue;
        int e = 0;
        bool ok = true;
        for (size_t m = 0; m < w.size() && ok; ++m) {
            if (m == i) continue;
            auto [good, k] = kval(w[m], m < i ? -1 : 1);
            ok = good;
            e += k;
        }
        if (ok) total += Scalar::v_pow(e);
    }
    return total;
}

Element sweedler_oracle(HopfGen g, const Element& x) {
    Element out;
    for (const auto& [pair_key, c] : coproduct(x)) {
        Scalar p = pairing(g, pair_key.second);
        if (!p.is_zero()) out.add_term(pair_key.first, c * p);
    }
    return out;
}

}  // namespace suq2
