#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "suq2/scalar.hpp"

namespace suq2 {

// Polynomial basis monomial: a^n b^m c^r (n >= 1, s = 0) or b^m c^r d^s (n = 0).
struct Monomial {
    int n = 0, m = 0, r = 0, s = 0;

    bool a_type() const { return n > 0; }
    static Monomial A(int n, int m, int r) { return {n, m, r, 0}; }
    static Monomial D(int m, int r, int s) { return {0, m, r, s}; }
    static Monomial unit() { return {}; }

    int degree() const { return n + m + r + s; }
    // doubled left weight 2j and right weight 2i
    int left_weight() const { return -n + m - r + s; }
    int right_weight() const { return -n - m + r + s; }
    std::string letters() const;

    friend bool operator<(const Monomial& x, const Monomial& y) {
        // A-type before D-type, then lexicographic on exponents
        if (x.a_type() != y.a_type()) return x.a_type();
        return std::array{x.n, x.m, x.r, x.s} < std::array{y.n, y.m, y.r, y.s};
    }
    friend bool operator==(const Monomial& x, const Monomial& y) {
        return x.n == y.n && x.m == y.m && x.r == y.r && x.s == y.s;
    }
};

enum class Gen : int { a = 0, b = 1, c = 2, d = 3 };

Gen gen_from_char(char ch);
char gen_char(Gen g);
int left_weight(Gen g);
int right_weight(Gen g);

class Element {
public:
    using Terms = std::map<Monomial, Scalar>;

    Element() = default;
    Element(const Scalar& c);
    Element(long c) : Element(Scalar(c)) {}
    static Element monomial(const Monomial& mono, const Scalar& c = Scalar(1));
    static Element gen(Gen g);
    static Element one() { return Element(Scalar(1)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(const Monomial& mono) const;

    void add_term(const Monomial& mono, const Scalar& c);
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element operator-() const;
    Element scaled(const Scalar& c) const;
    friend Element operator+(Element x, const Element& y) { return x += y; }
    friend Element operator-(Element x, const Element& y) { return x -= y; }
    friend Element operator*(const Scalar& c, const Element& x) { return x.scaled(c); }
    friend bool operator==(const Element& x, const Element& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }

    std::string to_string() const;

private:
    Terms terms_;
};

// right multiplication of a basis monomial by a generator (multiplication table)
std::vector<std::pair<Monomial, int>> rmul_gen(const Monomial& mono, Gen g);
Element rmul_gen(const Element& x, Gen g);

Element mul(const Element& x, const Element& y);
Element operator*(const Element& x, const Element& y);
Element product(std::initializer_list<Element> xs);

// Independent normal ordering by rewriting; the empty word is the unit.
Element normalize_word(const std::vector<Gen>& word);
Element normalize_word(const std::string& letters);

// word in generators, evaluated through the multiplication table
Element word(const std::string& letters);

Element star(const Element& x);

// Elements of the tensor square, keyed by monomial pairs.
using Tensor2 = std::map<std::pair<Monomial, Monomial>, Scalar>;
Tensor2 coproduct(const Element& x);
Tensor2 coproduct_gen(Gen g);
Tensor2 tensor_mul(const Tensor2& x, const Tensor2& y);
Tensor2 tensor_of(const Element& x, const Element& y);

std::map<std::pair<int, int>, Element> weight_decompose(const Element& x);

nlohmann::json to_json(const Element& x);
Element element_from_json(const nlohmann::json& j);

// Parses "d a", "a^2 b", "3/2 v^-2 b c + d" style input.
Element parse_element(const std::string& text);

}  // namespace suq2
