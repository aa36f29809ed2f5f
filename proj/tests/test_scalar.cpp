#include <doctest.h>

#include <cmath>
#include <random>

#include "suq2/scalar.hpp"

using namespace suq2;

namespace {

Scalar v(int k, long c = 1) { return Scalar::v_pow(k, c); }

Laurent random_laurent(std::mt19937& rng, int span) {
    std::uniform_int_distribution<int> coef(-3, 3), lo(-4, 4), len(1, span);
    Laurent p;
    int l = lo(rng), n = len(rng);
    for (int k = 0; k < n; ++k) p += Laurent(mpq_class(coef(rng), 1 + (rng() % 3)), l + k);
    return p;
}

Scalar random_scalar(std::mt19937& rng, bool allow_den = true) {
    Laurent num = random_laurent(rng, 4);
    if (!allow_den || rng() % 2) return Scalar(num);
    Laurent den;
    while (den.is_zero()) den = random_laurent(rng, 3);
    return Scalar(num, den);
}

// multiply out a known factorization: the oracle for exact division
Laurent poly(std::initializer_list<std::pair<int, long>> terms) {
    Laurent p;
    for (auto [e, c] : terms) p += Laurent(mpq_class(c), e);
    return p;
}

}  // namespace

TEST_CASE("scalar examples") {
    CHECK(v(1) + v(1) == v(1, 2));
    CHECK(v(1) * v(1) == Scalar::q_pow(1));
    Scalar lhs = (Scalar(1) / (v(-1) - v(1))) * (v(-2) - v(2));
    // (v^-1 + v)(v^-1 - v) = v^-2 - v^2
    CHECK(poly({{-1, 1}, {1, 1}}) * poly({{-1, 1}, {1, -1}}) == poly({{-2, 1}, {2, -1}}));
    CHECK(lhs == v(-1) + v(1));
    CHECK(lhs.is_polynomial());
}

TEST_CASE("q numbers") {
    CHECK(q_number(2) == Scalar(1));
    CHECK(q_number(0) == Scalar(0));
    CHECK(q_number(4) == Scalar::q_pow(-1) + Scalar::q_pow(1));
    CHECK(q_number(6) == Scalar::q_pow(-2) + Scalar(1) + Scalar::q_pow(2));
    CHECK(q_number(-4) == -q_number(4));
    // half-integer: [1/2] = 1/(v^-1 + v)
    CHECK(q_number(1) * (v(-1) + v(1)) == Scalar(1));
}

TEST_CASE("q number difference of squares") {
    for (int x2 = -20; x2 <= 20; ++x2)
        for (int y2 = -20; y2 <= 20; ++y2) {
            if ((x2 - y2) % 2 != 0) continue;
            Scalar l = q_number(x2) * q_number(x2) - q_number(y2) * q_number(y2);
            Scalar r = q_number(x2 + y2) * q_number(x2 - y2);
            REQUIRE(l == r);
        }
}

TEST_CASE("eval at q") {
    CHECK(eval_at_q(q_number(4), 0.5) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(eval_at_q(Scalar(1), 0.3) == 1.0);
    CHECK(eval_at_q(Scalar::Q(), 0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(eval_at_q(Scalar(1), 1.5), std::invalid_argument);
    // a Laurent polynomial of degree 200 keeps full relative accuracy
    Laurent big;
    for (int k = 0; k <= 200; ++k) big += Laurent(mpq_class(1), k);
    double qv = 0.81, vv = 0.9;
    double ref = (1 - std::pow(vv, 201)) / (1 - vv);
    CHECK(std::fabs(eval_at_q(Scalar(big), qv) - ref) <= 1e-12 * ref);
}

TEST_CASE("division by zero") {
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), DivisionByZero);
    CHECK_THROWS_AS(scalar_arith(ArithOp::div, v(2), Scalar()), DivisionByZero);
}

TEST_CASE("field laws on random scalars") {
    std::mt19937 rng(7);
    for (int t = 0; t < 150; ++t) {
        Scalar x = random_scalar(rng), y = random_scalar(rng), z = random_scalar(rng);
        REQUIRE((x + y) + z == x + (y + z));
        REQUIRE((x * y) * z == x * (y * z));
        REQUIRE(x * (y + z) == x * y + x * z);
        REQUIRE(x + y == y + x);
        REQUIRE(x * y == y * x);
        if (!y.is_zero()) {
            REQUIRE((x / y) * y == x);
            REQUIRE(y * y.inverse() == Scalar(1));
        }
        REQUIRE(x - x == Scalar());
    }
}

TEST_CASE("canonical form") {
    // (v^2 - 1)/(v - 1) reduces to v + 1
    Scalar s(poly({{2, 1}, {0, -1}}), poly({{1, 1}, {0, -1}}));
    CHECK(s == v(1) + Scalar(1));
    CHECK(s.is_polynomial());
    // denominator normalized to constant term 1
    Scalar t(poly({{0, 1}}), poly({{1, 2}, {2, 4}}));
    CHECK(t.den().low() == 0);
    CHECK(t.den().coeff(0) == 1);
    CHECK(t * Scalar(poly({{1, 2}, {2, 4}})) == Scalar(1));
}

TEST_CASE("eval is a ring homomorphism") {
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
        Scalar x = random_scalar(rng), y = random_scalar(rng);
        double q = 0.2 + 0.6 * (t % 10) / 10.0;
        double ex = eval_at_q(x, q), ey = eval_at_q(y, q);
        double s = eval_at_q(x + y, q), p = eval_at_q(x * y, q);
        CHECK(std::fabs(s - (ex + ey)) <= 1e-10 * (std::fabs(ex) + std::fabs(ey) + 1));
        CHECK(std::fabs(p - ex * ey) <= 1e-10 * (std::fabs(ex * ey) + 1e-300));
    }
}

TEST_CASE("json round trip") {
    std::mt19937 rng(3);
    for (int t = 0; t < 50; ++t) {
        Scalar x = random_scalar(rng);
        CHECK(scalar_from_json(to_json(x)) == x);
    }
    auto j = to_json(v(-2, 3) / Scalar(mpq_class(2)));
    CHECK(j["num"][0][0] == -2);
    CHECK(j["num"][0][1] == "3/2");
}
