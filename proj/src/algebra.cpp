#include "suq2/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace suq2 {

Gen gen_from_char(char ch) {
    switch (ch) {
        case 'a': return Gen::a;
        case 'b': return Gen::b;
        case 'c': return Gen::c;
        case 'd': return Gen::d;
    }
    throw std::invalid_argument(std::string("not a generator: ") + ch);
}

char gen_char(Gen g) { return "abcd"[static_cast<int>(g)]; }

int left_weight(Gen g) {
    static constexpr int w[4] = {-1, 1, -1, 1};
    return w[static_cast<int>(g)];
}

int right_weight(Gen g) {
    static constexpr int w[4] = {-1, -1, 1, 1};
    return w[static_cast<int>(g)];
}

std::string Monomial::letters() const {
    return std::string(n, 'a') + std::string(m, 'b') + std::string(r, 'c') + std::string(s, 'd');
}

Element::Element(const Scalar& c) {
    if (!c.is_zero()) terms_.emplace(Monomial::unit(), c);
}

Element Element::monomial(const Monomial& mono, const Scalar& c) {
    Element e;
    e.add_term(mono, c);
    return e;
}

Element Element::gen(Gen g) {
    switch (g) {
        case Gen::a: return monomial(Monomial::A(1, 0, 0));
        case Gen::b: return monomial(Monomial::D(1, 0, 0));
        case Gen::c: return monomial(Monomial::D(0, 1, 0));
        case Gen::d: return monomial(Monomial::D(0, 0, 1));
    }
    return {};
}

Scalar Element::coeff(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Scalar() : it->second;
}

void Element::add_term(const Monomial& mono, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Element& Element::operator+=(const Element& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

Element Element::operator-() const {
    Element r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

Element Element::scaled(const Scalar& c) const {
    if (c.is_zero()) return {};
    Element r = *this;
    for (auto& [k, x] : r.terms_) x *= c;
    return r;
}

namespace {

std::string mono_string(const Monomial& mo) {
    std::string out;
    auto put = [&](char ch, int k) {
        if (k == 0) return;
        out += ch;
        if (k > 1) out += "^" + std::to_string(k);
    };
    put('a', mo.n);
    put('b', mo.m);
    put('c', mo.r);
    put('d', mo.s);
    return out;
}

}  // namespace

std::string Element::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // unit first, then by total degree
    std::vector<std::pair<Monomial, Scalar>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& x, const auto& y) { return x.first.degree() < y.first.degree(); });
    for (const auto& [mo, c] : ordered) {
        std::string cs = c.to_string();
        bool simple = cs.find_first_of(" /") == std::string::npos || cs.front() == '(';
        bool neg = cs.front() == '-' && cs.find(' ') == std::string::npos;
        if (neg) cs.erase(0, 1);
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        std::string ms = mono_string(mo);
        if (ms.empty()) {
            os << cs;
        } else if (cs == "1") {
            os << ms;
        } else {
            if (!simple && cs.front() != '(') cs = "(" + cs + ")";
            os << cs << "*" << ms;
        }
    }
    return os.str();
}

std::vector<std::pair<Monomial, int>> rmul_gen(const Monomial& mo, Gen g) {
    const int n = mo.n, m = mo.m, r = mo.r, s = mo.s;
    if (mo.a_type()) {
        switch (g) {
            case Gen::a: return {{Monomial::A(n + 1, m, r), -2 * (m + r)}};
            case Gen::b: return {{Monomial::A(n, m + 1, r), 0}};
            case Gen::c: return {{Monomial::A(n, m, r + 1), 0}};
            case Gen::d: {
                // a^n b^m c^r d = q^{m+r} a^{n-1} (1 + q bc) b^m c^r
                Monomial k1 = n > 1 ? Monomial::A(n - 1, m, r) : Monomial::D(m, r, 0);
                Monomial k2 = n > 1 ? Monomial::A(n - 1, m + 1, r + 1) : Monomial::D(m + 1, r + 1, 0);
                return {{k1, 2 * (m + r)}, {k2, 2 * (m + r) + 2}};
            }
        }
    } else {
        switch (g) {
            case Gen::a:
                if (s == 0) return {{Monomial::A(1, m, r), -2 * (m + r)}};
                // d^s a = d^{s-1} + q^{-1-2(s-1)} b c d^{s-1}
                return {{Monomial::D(m, r, s - 1), 0}, {Monomial::D(m + 1, r + 1, s - 1), -2 - 4 * (s - 1)}};
            case Gen::b: return {{Monomial::D(m + 1, r, s), -2 * s}};
            case Gen::c: return {{Monomial::D(m, r + 1, s), -2 * s}};
            case Gen::d: return {{Monomial::D(m, r, s + 1), 0}};
        }
    }
    return {};
}

Element rmul_gen(const Element& x, Gen g) {
    Element out;
    for (const auto& [mo, c] : x.terms())
        for (const auto& [k, e] : rmul_gen(mo, g)) out.add_term(k, e == 0 ? c : c.times_v(e));
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

}  // namespace

Element mul(const Element& x, const Element& y) {
    Element out;
    if (x.is_zero() || y.is_zero()) return out;
    for (const auto& [mo, c] : y.terms()) {
        Element cur = x;
        for (Gen g : letters_of(mo)) cur = rmul_gen(cur, g);
        out += cur.scaled(c);
    }
    return out;
}

Element operator*(const Element& x, const Element& y) { return mul(x, y); }

Element product(std::initializer_list<Element> xs) {
    Element r = Element::one();
    for (const auto& x : xs) r = mul(r, x);
    return r;
}

// Rewriting normal form.  Phase one removes every a-d pair by sliding the
// left letter of a nearest pair across the b/c letters between them and then
// applying ad = 1 + q bc or da = 1 + q^-1 bc.  Phase two sorts to a<b<c<d.
Element normalize_word(const std::vector<Gen>& word) {
    using Word = std::vector<Gen>;
    std::map<Word, Scalar> pending{{word, Scalar(1)}};
    std::map<Word, Scalar> sorted_words;
    auto push = [](std::map<Word, Scalar>& into, Word w, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, ins] = into.try_emplace(std::move(w), c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) into.erase(it);
        }
    };
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        Word w = std::move(node.key());
        Scalar c = node.mapped();
        // nearest a/d pair of different letters, only b/c between
        int left = -1, right = -1, last = -1;
        for (int i = 0; i < static_cast<int>(w.size()); ++i) {
            if (w[i] != Gen::a && w[i] != Gen::d) continue;
            if (last >= 0 && w[last] != w[i]) {
                left = last;
                right = i;
                break;
            }
            last = i;
        }
        if (left < 0) {
            push(sorted_words, std::move(w), c);
            continue;
        }
        Gen lg = w[left];
        int vexp = 0;
        // slide the left letter to position right-1
        for (int i = left; i < right - 1; ++i) {
            // a x = q x a ; d x = q^-1 x d   for x in {b, c}
            vexp += lg == Gen::a ? 2 : -2;
            std::swap(w[i], w[i + 1]);
        }
        Word head(w.begin(), w.begin() + right - 1), tail(w.begin() + right + 1, w.end());
        Scalar cc = c.times_v(vexp);
        Word joined = head;
        joined.insert(joined.end(), tail.begin(), tail.end());
        push(pending, std::move(joined), cc);
        Word mid = head;
        mid.push_back(Gen::b);
        mid.push_back(Gen::c);
        mid.insert(mid.end(), tail.begin(), tail.end());
        push(pending, std::move(mid), cc.times_v(lg == Gen::a ? 2 : -2));
    }
    Element out;
    for (auto& [w0, c0] : sorted_words) {
        Word w = w0;
        int vexp = 0;
        for (size_t pass = 0; pass < w.size(); ++pass) {
            bool moved = false;
            for (size_t i = 0; i + 1 < w.size(); ++i) {
                if (static_cast<int>(w[i]) <= static_cast<int>(w[i + 1])) continue;
                Gen x = w[i], y = w[i + 1];
                // ba = q^-1 ab, ca = q^-1 ac, db = q^-1 bd, dc = q^-1 cd, cb = bc
                if (!(x == Gen::c && y == Gen::b)) vexp -= 2;
                std::swap(w[i], w[i + 1]);
                moved = true;
            }
            if (!moved) break;
        }
        Monomial mo;
        for (Gen g : w) {
            switch (g) {
                case Gen::a: ++mo.n; break;
                case Gen::b: ++mo.m; break;
                case Gen::c: ++mo.r; break;
                case Gen::d: ++mo.s; break;
            }
        }
        out.add_term(mo, c0.times_v(vexp));
    }
    return out;
}

Element normalize_word(const std::string& letters) {
    std::vector<Gen> w;
    for (char ch : letters)
        if (!std::isspace(static_cast<unsigned char>(ch))) w.push_back(gen_from_char(ch));
    return normalize_word(w);
}

Element word(const std::string& letters) {
    Element x = Element::one();
    for (char ch : letters)
        if (!std::isspace(static_cast<unsigned char>(ch))) x = rmul_gen(x, gen_from_char(ch));
    return x;
}

namespace {

Element star_gen(Gen g) {
    switch (g) {
        case Gen::a: return Element::gen(Gen::d);
        case Gen::b: return Element::gen(Gen::c).scaled(Scalar::v_pow(2, -1));
        case Gen::c: return Element::gen(Gen::b).scaled(Scalar::v_pow(-2, -1));
        case Gen::d: return Element::gen(Gen::a);
    }
    return {};
}

}  // namespace

Element star(const Element& x) {
    Element out;
    for (const auto& [mo, c] : x.terms()) {
        auto w = letters_of(mo);
        Element y = Element::one();
        for (auto it = w.rbegin(); it != w.rend(); ++it) y = mul(y, star_gen(*it));
        out += y.scaled(c);
    }
    return out;
}

Tensor2 tensor_of(const Element& x, const Element& y) {
    Tensor2 t;
    for (const auto& [m1, c1] : x.terms())
        for (const auto& [m2, c2] : y.terms()) t[{m1, m2}] += c1 * c2;
    return t;
}

Tensor2 coproduct_gen(Gen g) {
    auto A = Element::gen(Gen::a), B = Element::gen(Gen::b), C = Element::gen(Gen::c), D = Element::gen(Gen::d);
    // matrix coalgebra on (a b; c d)
    auto sum = [](Tensor2 s, const Tensor2& t) {
        for (const auto& [k, c] : t) s[k] += c;
        return s;
    };
    switch (g) {
        case Gen::a: return sum(tensor_of(A, A), tensor_of(B, C));
        case Gen::b: return sum(tensor_of(A, B), tensor_of(B, D));
        case Gen::c: return sum(tensor_of(C, A), tensor_of(D, C));
        case Gen::d: return sum(tensor_of(C, B), tensor_of(D, D));
    }
    return {};
}

Tensor2 tensor_mul(const Tensor2& x, const Tensor2& y) {
    Tensor2 out;
    for (const auto& [k1, c1] : x) {
        Element l1 = Element::monomial(k1.first), r1 = Element::monomial(k1.second);
        for (const auto& [k2, c2] : y) {
            Element l = mul(l1, Element::monomial(k2.first));
            Element r = mul(r1, Element::monomial(k2.second));
            Scalar c = c1 * c2;
            for (const auto& [ml, cl] : l.terms())
                for (const auto& [mr, cr] : r.terms()) out[{ml, mr}] += c * cl * cr;
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

Tensor2 coproduct(const Element& x) {
    Tensor2 out;
    for (const auto& [mo, c] : x.terms()) {
        Tensor2 t = tensor_of(Element::one(), Element::one());
        for (Gen g : letters_of(mo)) t = tensor_mul(t, coproduct_gen(g));
        for (const auto& [k, v] : t) out[k] += c * v;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

std::map<std::pair<int, int>, Element> weight_decompose(const Element& x) {
    std::map<std::pair<int, int>, Element> out;
    for (const auto& [mo, c] : x.terms()) out[{mo.left_weight(), mo.right_weight()}].add_term(mo, c);
    return out;
}

nlohmann::json to_json(const Element& x) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [mo, c] : x.terms())
        arr.push_back({{"kind", mo.a_type() ? "A" : "D"},
                       {"n", mo.n},
                       {"m", mo.m},
                       {"r", mo.r},
                       {"s", mo.s},
                       {"coeff", to_json(c)}});
    return {{"terms", arr}};
}

Element element_from_json(const nlohmann::json& j) {
    Element x;
    for (const auto& t : j.at("terms")) {
        Monomial mo{t.value("n", 0), t.value("m", 0), t.value("r", 0), t.value("s", 0)};
        if (mo.n > 0 && mo.s > 0) throw std::invalid_argument("monomial mixes a and d");
        x.add_term(mo, scalar_from_json(t.at("coeff")));
    }
    return x;
}

namespace {

int parse_power(const std::string& tok, size_t pos) {
    if (pos >= tok.size()) return 1;
    if (tok[pos] != '^') throw std::invalid_argument("bad token: " + tok);
    return std::stoi(tok.substr(pos + 1));
}

}  // namespace

Element parse_element(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    Element total;
    Scalar coeff(1);
    std::vector<Gen> w;
    bool have = false;
    auto flush = [&]() {
        if (have) total += normalize_word(w).scaled(coeff);
        coeff = Scalar(1);
        w.clear();
        have = false;
    };
    while (is >> tok) {
        if (tok == "+") {
            flush();
            continue;
        }
        if (tok == "-") {
            flush();
            coeff = Scalar(-1);
            continue;
        }
        have = true;
        if (tok == "*") continue;
        char h = tok[0];
        if (std::isdigit(static_cast<unsigned char>(h)) || h == '-') {
            mpq_class c(tok);
            c.canonicalize();
            coeff *= Scalar(c);
        } else if (h == 'v' || h == 'q') {
            int k = parse_power(tok, 1);
            coeff = coeff.times_v(h == 'v' ? k : 2 * k);
        } else if (tok.size() > 1 && tok[1] == '^') {
            w.insert(w.end(), parse_power(tok, 1), gen_from_char(h));
        } else {
            for (char ch : tok) w.push_back(gen_from_char(ch));
        }
    }
    flush();
    return total;
}

}  // namespace suq2
