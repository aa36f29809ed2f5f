#include "suq2/peter_weyl.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include "suq2/actions.hpp"
#include "suq2/functionals.hpp"

namespace suq2 {

Scalar pw_norm_formula(int l2, int I) { return Scalar::q_pow(-I) / q_number(2 * (l2 + 1)); }

namespace {

Scalar q_factorial(int k) {
    Scalar r(1);
    for (int t = 1; t <= k; ++t) r *= q_number(2 * t);
    return r;
}

int total_degree(const Element& x) {
    int d = 0;
    for (const auto& [mo, c] : x.terms()) d = std::max(d, mo.n + mo.m + mo.r + mo.s);
    return d;
}

}  // namespace

std::vector<PWVector> pw_ladder(int l2) {
    if (l2 < 0) throw std::invalid_argument("pw_ladder: negative spin");
    std::vector<PWVector> out;
    for (int I = -l2; I <= l2; I += 2) {
        int nA = (l2 - I) / 2, nC = (l2 + I) / 2;
        std::string w(nA, 'a');
        w.append(nC, 'c');
        PWVector v{l2, I, -l2, word(w), Scalar::q_pow(-nA * nC) * q_factorial(l2) / (q_factorial(nA) * q_factorial(nC))};
        out.push_back(v);
        while (v.J < l2) {
            // [l+1/2]^2 - [j+1/2]^2 = [l+j+1][l-j]
            Scalar beta2 = q_number(l2 + v.J + 2) * q_number(l2 - v.J);
            v.u = act_e(v.u);
            v.rho = v.rho / beta2;
            v.J += 2;
            out.push_back(v);
        }
    }
    return out;
}

std::map<std::pair<int, int>, PWBasisBlock> pw_orthobasis(int l2max) {
    if (l2max > 8) throw CutoffTooLarge("pw_orthobasis: exact mode supports 2l <= 8, got " + std::to_string(l2max));
    std::map<std::pair<int, int>, PWBasisBlock> out;
    for (int l2 = 0; l2 <= l2max; ++l2)
        for (auto& v : pw_ladder(l2)) {
            auto& blk = out[{v.I, v.J}];
            blk.I = v.I;
            blk.J = v.J;
            blk.vectors.push_back(std::move(v));
        }
    return out;
}

Monomial weight_block_base(int I, int J) {
    if ((I + J) % 2 != 0) throw std::invalid_argument("weight_block_base: weights of mixed parity");
    int d = (J - I) / 2;
    int m = d > 0 ? d : 0, r = d < 0 ? -d : 0;
    if (I + J < 0) return Monomial::A(-(I + J) / 2, m, r);
    return Monomial::D(m, r, (I + J) / 2);
}

std::vector<Element> gram_schmidt_block(int I, int J, int count) {
    std::vector<Element> ws;
    std::vector<Scalar> norms;
    Element u = Element::monomial(weight_block_base(I, J));
    const Element bc = word("bc");
    for (int k = 0; k < count; ++k, u = mul(u, bc)) {
        Element w = u;
        for (size_t i = 0; i < ws.size(); ++i) w -= ws[i].scaled(gns_inner(ws[i], u) / norms[i]);
        norms.push_back(gns_inner(w, w));
        ws.push_back(std::move(w));
    }
    return ws;
}

std::optional<Scalar> proportionality(const Element& x, const Element& y) {
    if (y.is_zero()) return x.is_zero() ? std::optional<Scalar>(Scalar()) : std::nullopt;
    const auto& [mo, c] = *y.terms().begin();
    Scalar k = x.coeff(mo) / c;
    if (y.scaled(k) != x) return std::nullopt;
    return k;
}

PWOracleReport verify_pw_oracle(int l2max) {
    PWOracleReport rep;
    for (const auto& [w, blk] : pw_orthobasis(l2max)) {
        ++rep.blocks;
        auto gs = gram_schmidt_block(blk.I, blk.J, static_cast<int>(blk.vectors.size()));
        for (size_t k = 0; k < blk.vectors.size(); ++k) {
            const auto& v = blk.vectors[k];
            ++rep.vectors;
            auto c = proportionality(v.u, gs[k]);
            if (!c || c->is_zero()) rep.proportional = false;
            if (v.rho * gns_inner(v.u, v.u) != pw_norm_formula(v.l2, v.I)) rep.norms = false;
            for (size_t k2 = 0; k2 < k; ++k2) {
                if (!gns_inner(gs[k2], gs[k]).is_zero()) rep.orthogonal = false;
                if (!gns_inner(blk.vectors[k2].u, v.u).is_zero()) rep.orthogonal = false;
            }
        }
    }
    return rep;
}

MultOpMatrix mult_op_matrix(const Element& x, int l2max, double q) {
    MultOpMatrix out;
    for (int l2 = 0; l2 <= l2max; ++l2)
        for (auto& v : pw_ladder(l2)) out.basis.push_back(std::move(v));
    const size_t n = out.basis.size();
    out.m = Eigen::MatrixXd::Zero(n, n);
    out.edge.assign(n, false);
    auto shifts = weight_decompose(x);
    const int deg = total_degree(x);
    std::vector<Scalar> self(n);
    std::vector<double> rho(n);
    for (size_t k = 0; k < n; ++k) {
        self[k] = gns_inner(out.basis[k].u, out.basis[k].u);
        rho[k] = eval_at_q(out.basis[k].rho, q);
    }
    for (size_t col = 0; col < n; ++col) {
        const auto& t = out.basis[col];
        out.edge[col] = t.l2 + deg > l2max;
        Element y = mul(x, t.u);
        for (size_t row = 0; row < n; ++row) {
            const auto& tp = out.basis[row];
            if (!shifts.count({tp.J - t.J, tp.I - t.I})) continue;
            Scalar c = gns_inner(tp.u, y) / self[row];
            if (c.is_zero()) continue;
            out.m(row, col) = eval_at_q(c, q) * std::sqrt(rho[col] / rho[row]);
        }
    }
    return out;
}

namespace {

// q-independent parts of a Dirac sector: e and f coefficients between u-vectors.
struct ExactSector {
    std::vector<PWVector> vecs;                  // J = -l2..l2
    std::vector<Scalar> e_coef, f_coef;          // e: u_k -> u_{k+1}, f: u_{k+1} -> u_k
};

const ExactSector& exact_sector(int l2, int I) {
    static std::map<std::pair<int, int>, ExactSector> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({l2, I});
    if (it != cache.end()) return it->second;
    ExactSector s;
    for (auto& v : pw_ladder(l2))
        if (v.I == I) s.vecs.push_back(std::move(v));
    for (size_t k = 0; k + 1 < s.vecs.size(); ++k) {
        const Element& lo = s.vecs[k].u;
        const Element& hi = s.vecs[k + 1].u;
        s.e_coef.push_back(gns_inner(hi, act_e(lo)) / gns_inner(hi, hi));
        s.f_coef.push_back(gns_inner(lo, act_f(hi)) / gns_inner(lo, lo));
    }
    return cache.emplace(std::pair{l2, I}, std::move(s)).first->second;
}

}  // namespace

Eigen::MatrixXd dirac_sector_exact(int l2, int I, double q) {
    const ExactSector& s = exact_sector(l2, I);
    const int N = l2 + 1;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2 * N, 2 * N);
    std::vector<double> rho(N);
    for (int k = 0; k < N; ++k) rho[k] = eval_at_q(s.vecs[k].rho, q);
    for (int k = 0; k < N; ++k) {
        int J = s.vecs[k].J;
        D(k, k) = (J - 1) / 2.0;
        D(N + k, N + k) = -(J + 1) / 2.0;
    }
    // norms are constant in j, so t-basis coefficients are orthonormal-basis entries
    for (int k = 0; k + 1 < N; ++k) {
        int Jhi = s.vecs[k + 1].J, Jlo = s.vecs[k].J;
        double e = eval_at_q(s.e_coef[k], q) * std::sqrt(rho[k] / rho[k + 1]);
        double f = eval_at_q(s.f_coef[k], q) * std::sqrt(rho[k + 1] / rho[k]);
        D(k + 1, N + k) = std::pow(q, (Jhi - 1) / 2.0) * e;  // top j <- bottom j-1 via Dhat^1/2 e
        D(N + k, k + 1) = std::pow(q, (Jlo + 1) / 2.0) * f;  // bottom j-1 <- top j via Dhat^1/2 f
    }
    return D;
}

}  // namespace suq2
