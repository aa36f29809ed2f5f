#include <doctest.h>

#include <random>

#include "suq2/algebra.hpp"

using namespace suq2;

namespace {

const Element A = Element::gen(Gen::a), B = Element::gen(Gen::b), C = Element::gen(Gen::c), D = Element::gen(Gen::d);

Scalar qp(int k, long c = 1) { return Scalar::q_pow(k, c); }

std::string random_word(std::mt19937& rng, int maxlen) {
    std::string w;
    int len = static_cast<int>(rng() % (maxlen + 1));
    for (int i = 0; i < len; ++i) w += "abcd"[rng() % 4];
    return w;
}

Element right_to_left(const std::string& w) {
    Element x = Element::one();
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = mul(Element::gen(gen_from_char(*it)), x);
    return x;
}

Element random_element(std::mt19937& rng, int maxdeg) {
    Element x;
    int terms = 1 + rng() % 3;
    for (int t = 0; t < terms; ++t)
        x += word(random_word(rng, maxdeg)).scaled(Scalar::v_pow(static_cast<int>(rng() % 5) - 2, 1 + rng() % 3));
    return x;
}

}  // namespace

TEST_CASE("normalize_word examples") {
    CHECK(normalize_word("da") == Element::one() + (B * C).scaled(qp(-1)));
    CHECK(normalize_word("ba") == word("ab").scaled(qp(-1)));
    CHECK(normalize_word("add") == D + Element::monomial(Monomial::D(1, 1, 1), qp(1)));
    CHECK(normalize_word("") == Element::one());
    CHECK(normalize_word("abd") == word("abd"));
}

TEST_CASE("mul examples") {
    CHECK(mul(A, D) == Element::one() + Element::monomial(Monomial::D(1, 1, 0), qp(1)));
    std::mt19937 rng(5);
    for (int t = 0; t < 10; ++t) {
        Element x = random_element(rng, 4);
        CHECK(mul(Element::one(), x) == x);
        CHECK(mul(x, Element::one()) == x);
    }
    CHECK(mul(B, C) == Element::monomial(Monomial::D(1, 1, 0)));
    CHECK(mul(C, B) == Element::monomial(Monomial::D(1, 1, 0)));
    // the defining relations
    CHECK(word("ab") == word("ba").scaled(qp(1)));
    CHECK(word("ac") == word("ca").scaled(qp(1)));
    CHECK(word("bd") == word("db").scaled(qp(1)));
    CHECK(word("cd") == word("dc").scaled(qp(1)));
    CHECK(word("da") == Element::one() + word("bc").scaled(qp(-1)));
}

TEST_CASE("confluence of rewriting against the multiplication table") {
    std::mt19937 rng(2024);
    for (int t = 0; t < 1000; ++t) {
        std::string w = random_word(rng, 8);
        Element x = normalize_word(w);
        REQUIRE(x == word(w));
        REQUIRE(x == right_to_left(w));
        size_t cut = w.empty() ? 0 : rng() % (w.size() + 1);
        REQUIRE(x == mul(word(w.substr(0, cut)), word(w.substr(cut))));
    }
}

TEST_CASE("associativity on monomial triples") {
    std::mt19937 rng(99);
    for (int t = 0; t < 300; ++t) {
        Element x = word(random_word(rng, 4)), y = word(random_word(rng, 4)), z = word(random_word(rng, 4));
        REQUIRE(mul(mul(x, y), z) == mul(x, mul(y, z)));
    }
}

TEST_CASE("star") {
    CHECK(star(A) == D);
    CHECK(star(B) == C.scaled(qp(1, -1)));
    CHECK(star(word("ab")) == Element::monomial(Monomial::D(0, 1, 1), qp(1, -1)));
    std::mt19937 rng(17);
    for (int t = 0; t < 150; ++t) {
        Element x = random_element(rng, 4), y = random_element(rng, 4);
        REQUIRE(star(star(x)) == x);
        REQUIRE(star(mul(x, y)) == mul(star(y), star(x)));
    }
}

TEST_CASE("coproduct") {
    CHECK(coproduct(Element::one()) == tensor_of(Element::one(), Element::one()));
    Tensor2 da = tensor_of(A, A);
    for (auto& [k, c] : tensor_of(B, C)) da[k] += c;
    CHECK(coproduct(A) == da);
    CHECK(coproduct(word("ab")) == tensor_mul(coproduct(A), coproduct(B)));
    // multiplicativity on products of random monomials
    std::mt19937 rng(8);
    for (int t = 0; t < 30; ++t) {
        Element x = word(random_word(rng, 3)), y = word(random_word(rng, 3));
        REQUIRE(coproduct(mul(x, y)) == tensor_mul(coproduct(x), coproduct(y)));
    }
}

TEST_CASE("coassociativity") {
    // compare (Delta x id)Delta and (id x Delta)Delta as triple tensors
    using Key3 = std::tuple<Monomial, Monomial, Monomial>;
    auto lhs = [](const Element& x) {
        std::map<Key3, Scalar> out;
        for (const auto& [k, c] : coproduct(x))
            for (const auto& [k2, c2] : coproduct(Element::monomial(k.first)))
                out[{k2.first, k2.second, k.second}] += c * c2;
        for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return out;
    };
    auto rhs = [](const Element& x) {
        std::map<Key3, Scalar> out;
        for (const auto& [k, c] : coproduct(x))
            for (const auto& [k2, c2] : coproduct(Element::monomial(k.second)))
                out[{k.first, k2.first, k2.second}] += c * c2;
        for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return out;
    };
    for (const char* w : {"a", "b", "c", "d", "ab", "ac", "bc", "bd", "cd", "bb", "cc", "aa", "dd", "da"}) {
        Element x = word(w);
        CHECK(lhs(x) == rhs(x));
    }
}

TEST_CASE("weight decomposition") {
    auto wb = weight_decompose(B);
    REQUIRE(wb.size() == 1);
    CHECK(wb.begin()->first == std::pair{1, -1});
    auto wbc = weight_decompose(word("bc"));
    CHECK(wbc.begin()->first == std::pair{0, 0});
    auto wad = weight_decompose(A + D);
    CHECK(wad.at({-1, -1}) == A);
    CHECK(wad.at({1, 1}) == D);
    std::mt19937 rng(4);
    for (int t = 0; t < 100; ++t) {
        Element x = word(random_word(rng, 4)), y = word(random_word(rng, 4));
        auto wx = weight_decompose(x), wy = weight_decompose(y), wxy = weight_decompose(mul(x, y));
        if (x.is_zero() || y.is_zero()) continue;
        auto [jx, ix] = wx.begin()->first;
        auto [jy, iy] = wy.begin()->first;
        REQUIRE(wxy.size() <= 1);
        if (!wxy.empty()) REQUIRE(wxy.begin()->first == std::pair{jx + jy, ix + iy});
        Element sum;
        for (auto& [k, e] : weight_decompose(x + y)) sum += e;
        REQUIRE(sum == x + y);
    }
}

TEST_CASE("json and parsing") {
    std::mt19937 rng(12);
    for (int t = 0; t < 20; ++t) {
        Element x = random_element(rng, 5);
        CHECK(element_from_json(to_json(x)) == x);
    }
    CHECK(parse_element("d a") == normalize_word("da"));
    CHECK(parse_element("a^2 b") == word("aab"));
    CHECK(parse_element("3/2 v^-2 b c + d") == word("bc").scaled(Scalar::v_pow(-2, mpq_class(3, 2))) + D);
    CHECK(parse_element("1 - q^-1 bc") == Element::one() - word("bc").scaled(qp(-1)));
    CHECK(normalize_word("da").to_string() == "1 + q^-1*bc");
}
