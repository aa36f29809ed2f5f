#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace suq2 {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero scalar") {}
};

struct EvaluationSingularity : std::domain_error {
    using std::domain_error::domain_error;
};

// Laurent polynomial in v with rational coefficients.
// Stored densely from the lowest exponent; zero is the empty polynomial.
class Laurent {
public:
    Laurent() = default;
    explicit Laurent(const mpq_class& c, int exp = 0);

    static Laurent monomial(const mpq_class& c, int exp) { return Laurent(c, exp); }

    bool is_zero() const { return coef_.empty(); }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(coef_.size()) - 1; }
    const mpq_class& at_offset(size_t k) const { return coef_[k]; }
    mpq_class coeff(int exp) const;
    size_t size() const { return coef_.size(); }
    bool is_one() const { return coef_.size() == 1 && low_ == 0 && coef_[0] == 1; }

    Laurent shifted(int k) const;
    Laurent operator-() const;
    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent& operator*=(const mpq_class& c);
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.low_ == b.low_ && a.coef_ == b.coef_;
    }

    // polynomial helpers used by canonicalization (exponents assumed >= 0)
    static void divmod(const Laurent& a, const Laurent& b, Laurent& quot, Laurent& rem);
    static Laurent gcd(Laurent a, Laurent b);

    long double eval(long double v) const;

private:
    void trim();
    int low_ = 0;
    std::vector<mpq_class> coef_;
};

// Element of Q(v), v^2 = q.  Canonical: gcd(num, den) = 1, den is an ordinary
// polynomial with constant term 1.
class Scalar {
public:
    Scalar() : den_(mpq_class(1)) {}
    Scalar(long n) : num_(mpq_class(n)), den_(mpq_class(1)) {}
    Scalar(const mpq_class& c) : num_(c), den_(mpq_class(1)) {}
    Scalar(const Laurent& num, const Laurent& den);
    explicit Scalar(const Laurent& num) : num_(num), den_(mpq_class(1)) {}

    static Scalar v_pow(int k, const mpq_class& c = 1) { return Scalar(Laurent(c, k)); }
    static Scalar q_pow(int k, const mpq_class& c = 1) { return v_pow(2 * k, c); }
    static Scalar Q();

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }

    Scalar times_v(int k) const;
    Scalar inverse() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string to_string() const;

private:
    void canonicalize();
    Laurent num_, den_;
};

enum class ArithOp { add, sub, mul, div };
Scalar scalar_arith(ArithOp op, const Scalar& x, const Scalar& y);

// [a]_q with a = twice_a / 2.
Scalar q_number(int twice_a);

double eval_at_q(const Scalar& x, double q_value);

nlohmann::json to_json(const Scalar& x);
Scalar scalar_from_json(const nlohmann::json& j);

}  // namespace suq2
