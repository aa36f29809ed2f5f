#include "suq2/scalar.hpp"

#include <cmath>
#include <sstream>

namespace suq2 {

Laurent::Laurent(const mpq_class& c, int exp) : low_(exp) {
    if (c != 0) {
        coef_.push_back(c);
        coef_.back().canonicalize();
    }
}

void Laurent::trim() {
    size_t b = 0;
    while (b < coef_.size() && coef_[b] == 0) ++b;
    if (b == coef_.size()) {
        coef_.clear();
        low_ = 0;
        return;
    }
    size_t e = coef_.size();
    while (coef_[e - 1] == 0) --e;
    if (b > 0 || e < coef_.size()) {
        coef_ = std::vector<mpq_class>(coef_.begin() + b, coef_.begin() + e);
        low_ += static_cast<int>(b);
    }
}

mpq_class Laurent::coeff(int exp) const {
    if (is_zero() || exp < low_ || exp > high()) return 0;
    return coef_[exp - low_];
}

Laurent Laurent::shifted(int k) const {
    Laurent r = *this;
    if (!r.is_zero()) r.low_ += k;
    return r;
}

Laurent Laurent::operator-() const {
    Laurent r = *this;
    for (auto& c : r.coef_) c = -c;
    return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    int lo = std::min(low_, o.low_), hi = std::max(high(), o.high());
    if (lo != low_ || hi != high()) {
        std::vector<mpq_class> c(hi - lo + 1);
        for (size_t k = 0; k < coef_.size(); ++k) c[low_ - lo + k] = coef_[k];
        coef_.swap(c);
        low_ = lo;
    }
    for (size_t k = 0; k < o.coef_.size(); ++k) coef_[o.low_ - low_ + k] += o.coef_[k];
    trim();
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent& Laurent::operator*=(const mpq_class& c) {
    if (c == 0) {
        coef_.clear();
        low_ = 0;
        return *this;
    }
    for (auto& x : coef_) x *= c;
    return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    if (a.is_zero() || b.is_zero()) return r;
    r.low_ = a.low_ + b.low_;
    r.coef_.assign(a.coef_.size() + b.coef_.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.coef_.size(); ++i) {
        if (a.coef_[i] == 0) continue;
        for (size_t j = 0; j < b.coef_.size(); ++j) r.coef_[i + j] += a.coef_[i] * b.coef_[j];
    }
    r.trim();
    return r;
}

void Laurent::divmod(const Laurent& a, const Laurent& b, Laurent& quot, Laurent& rem) {
    if (b.is_zero()) throw DivisionByZero();
    quot = Laurent();
    rem = a;
    const mpq_class& lead = b.coef_.back();
    while (!rem.is_zero() && rem.high() >= b.high()) {
        int k = rem.high() - b.high();
        mpq_class f = rem.coef_.back() / lead;
        Laurent t(f, k);
        quot += t;
        rem -= t * b;
    }
}

Laurent Laurent::gcd(Laurent a, Laurent b) {
    while (!b.is_zero()) {
        Laurent qq, r;
        divmod(a, b, qq, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a *= mpq_class(1) / a.coef_.back();
    return a;
}

long double Laurent::eval(long double v) const {
    long double acc = 0;
    for (size_t k = coef_.size(); k-- > 0;) acc = acc * v + static_cast<long double>(coef_[k].get_d());
    return acc * std::pow(v, static_cast<long double>(low_));
}

Scalar::Scalar(const Laurent& num, const Laurent& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw DivisionByZero();
    canonicalize();
}

void Scalar::canonicalize() {
    if (num_.is_zero()) {
        den_ = Laurent(mpq_class(1));
        return;
    }
    if (den_.is_one()) return;
    // move the v-power of the denominator into the numerator
    int dl = den_.low();
    den_ = den_.shifted(-dl);
    num_ = num_.shifted(-dl);
    if (den_.size() > 1) {
        int nl = num_.low();
        Laurent n0 = num_.shifted(-nl);
        Laurent g = Laurent::gcd(n0, den_);
        if (g.size() > 1) {
            Laurent qq, r;
            Laurent::divmod(n0, g, qq, r);
            n0 = qq;
            Laurent::divmod(den_, g, qq, r);
            den_ = qq;
        }
        num_ = n0.shifted(nl);
    }
    mpq_class c0 = den_.at_offset(0);
    if (c0 != 1) {
        mpq_class inv = mpq_class(1) / c0;
        num_ *= inv;
        den_ *= inv;
    }
}

Scalar Scalar::Q() {
    // (q^-1 - q)^-1 = v^2 / (1 - v^4)
    Laurent den(mpq_class(1));
    den -= Laurent(mpq_class(1), 4);
    return Scalar(Laurent(mpq_class(1), 2), den);
}

Scalar Scalar::times_v(int k) const {
    Scalar r = *this;
    r.num_ = r.num_.shifted(k);
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    return Scalar(den_, num_);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.is_zero()) return *this;
    if (den_.is_one() && o.den_.is_one()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    canonicalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (den_.is_one() && o.den_.is_one()) {
        num_ = num_ * o.num_;
        return *this;
    }
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    canonicalize();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw DivisionByZero();
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    canonicalize();
    return *this;
}

namespace {

std::string laurent_string(const Laurent& p) {
    if (p.is_zero()) return "0";
    bool all_even = true;
    for (int e = p.low(); e <= p.high(); ++e)
        if (p.coeff(e) != 0 && e % 2 != 0) all_even = false;
    std::ostringstream os;
    bool first = true;
    for (int e = p.low(); e <= p.high(); ++e) {
        mpq_class c = p.coeff(e);
        if (c == 0) continue;
        bool neg = c < 0;
        mpq_class a = neg ? mpq_class(-c) : c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (e == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << "*";
        if (all_even) {
            os << "q";
            if (e != 2) os << "^" << e / 2;
        } else {
            os << "v";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

}  // namespace

std::string Scalar::to_string() const {
    if (den_.is_one()) return laurent_string(num_);
    return "(" + laurent_string(num_) + ")/(" + laurent_string(den_) + ")";
}

Scalar scalar_arith(ArithOp op, const Scalar& x, const Scalar& y) {
    switch (op) {
        case ArithOp::add: return x + y;
        case ArithOp::sub: return x - y;
        case ArithOp::mul: return x * y;
        case ArithOp::div: return x / y;
    }
    throw std::invalid_argument("unknown arithmetic op");
}

Scalar q_number(int twice_a) {
    Laurent num = Laurent(mpq_class(1), -twice_a) - Laurent(mpq_class(1), twice_a);
    Laurent den = Laurent(mpq_class(1), -2) - Laurent(mpq_class(1), 2);
    if (twice_a % 2 == 0) {
        Laurent qq, r;
        Laurent::divmod(num.shifted(2), den.shifted(2), qq, r);
        if (r.is_zero()) return Scalar(qq);
    }
    return Scalar(num, den);
}

double eval_at_q(const Scalar& x, double q_value) {
    if (!(q_value > 0.0 && q_value < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
    long double v = std::sqrt(static_cast<long double>(q_value));
    long double d = x.den().eval(v);
    if (std::fabs(static_cast<double>(d)) < 1e-300) throw EvaluationSingularity("denominator vanishes at q");
    return static_cast<double>(x.num().eval(v) / d);
}

namespace {

nlohmann::json laurent_json(const Laurent& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (int e = p.low(); !p.is_zero() && e <= p.high(); ++e) {
        mpq_class c = p.coeff(e);
        if (c != 0) arr.push_back({e, c.get_str()});
    }
    return arr;
}

Laurent laurent_from(const nlohmann::json& arr) {
    Laurent p;
    for (const auto& t : arr) {
        mpq_class c(t.at(1).get<std::string>());
        c.canonicalize();
        p += Laurent(c, t.at(0).get<int>());
    }
    return p;
}

}  // namespace

nlohmann::json to_json(const Scalar& x) { return {{"num", laurent_json(x.num())}, {"den", laurent_json(x.den())}}; }

Scalar scalar_from_json(const nlohmann::json& j) {
    Laurent den = j.contains("den") ? laurent_from(j.at("den")) : Laurent(mpq_class(1));
    return Scalar(laurent_from(j.at("num")), den);
}

}  // namespace suq2
