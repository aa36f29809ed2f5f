#include <doctest.h>

#include <random>

#include "suq2/actions.hpp"
#include "suq2/functionals.hpp"

using namespace suq2;

namespace {

const Element A = Element::gen(Gen::a), B = Element::gen(Gen::b), C = Element::gen(Gen::c), D = Element::gen(Gen::d);

Element random_monomial(std::mt19937& rng, int maxdeg) {
    std::string w;
    int len = static_cast<int>(rng() % (maxdeg + 1));
    for (int i = 0; i < len; ++i) w += "abcd"[rng() % 4];
    Element x = word(w);
    // keep a single basis monomial
    if (x.is_zero()) return Element::one();
    auto it = x.terms().begin();
    std::advance(it, rng() % x.terms().size());
    return Element::monomial(it->first);
}

}  // namespace

TEST_CASE("haar examples") {
    CHECK(haar(Element::one()) == Scalar(1));
    CHECK(haar(word("bc")) == -(Scalar::q_pow(-1) + Scalar::q_pow(1)).inverse());
    CHECK(haar(A) == Scalar());
    CHECK(haar(word("bbcc")) == (Scalar::q_pow(-2) + Scalar(1) + Scalar::q_pow(2)).inverse());
}

TEST_CASE("int_one examples") {
    CHECK(int_one(Element::one()) == Scalar(1));
    CHECK(int_one(A) == Scalar());
    CHECK(int_one(Element::one() + word("bc").scaled(Scalar(3))) == Scalar(1));
}

TEST_CASE("gns inner product") {
    CHECK(gns_inner(Element::one(), Element::one()) == Scalar(1));
    Scalar two = Scalar::q_pow(-1) + Scalar::q_pow(1);
    // -q * haar(bc), matching the norm formula with i = -1/2
    CHECK(gns_inner(B, B) == Scalar::q_pow(1) / two);
    CHECK(gns_inner(A, B) == Scalar());
    // norm formula q^{-2i} [2l+1]^-1 for the four generators (l = 1/2)
    CHECK(gns_inner(A, A) == Scalar::q_pow(1) / two);
    CHECK(gns_inner(C, C) == Scalar::q_pow(-1) / two);
    CHECK(gns_inner(D, D) == Scalar::q_pow(-1) / two);
}

TEST_CASE("haar twisted trace law") {
    std::mt19937 rng(314);
    for (int t = 0; t < 500; ++t) {
        Element x = random_monomial(rng, 5), y = random_monomial(rng, 5);
        REQUIRE(haar(mul(x, y)) == haar(mul(theta(y), x)));
    }
}

TEST_CASE("int_one twisted trace law and sigma_L invariance") {
    std::mt19937 rng(2718);
    for (int t = 0; t < 500; ++t) {
        Element x = random_monomial(rng, 5), y = random_monomial(rng, 5);
        REQUIRE(int_one(mul(x, y)) == int_one(mul(sigma_L(theta(y, -1), 4), x)));
        REQUIRE(int_one(sigma_L(x, 2)) == int_one(x));
    }
}

TEST_CASE("positivity") {
    std::mt19937 rng(42);
    for (int t = 0; t < 100; ++t) {
        Element x;
        while (x.is_zero())
            for (int k = 0; k < 3; ++k)
                x += random_monomial(rng, 3).scaled(Scalar(static_cast<long>(rng() % 7) - 3));
        CHECK(eval_at_q(gns_inner(x, x), 0.5) > 0.0);
    }
}
