#include "suq2/functionals.hpp"

#include <mutex>
#include <vector>

namespace suq2 {

namespace {

Scalar inverse_q_number(int k) {
    static std::vector<Scalar> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= k) {
        int j = static_cast<int>(cache.size());
        cache.push_back(j == 0 ? Scalar() : q_number(2 * j).inverse());
    }
    return cache[k];
}

}  // namespace

Scalar haar(const Element& x) {
    Scalar total;
    for (const auto& [mo, c] : x.terms()) {
        if (mo.n != 0 || mo.s != 0 || mo.m != mo.r) continue;
        Scalar h = inverse_q_number(mo.r + 1);
        total += mo.r % 2 ? -(c * h) : c * h;
    }
    return total;
}

Scalar int_one(const Element& x) { return x.coeff(Monomial::unit()); }

Scalar gns_inner(const Element& x, const Element& y) { return haar(mul(star(x), y)); }

}  // namespace suq2
