#include "suq2/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "suq2/actions.hpp"
#include "suq2/functionals.hpp"
#include "suq2/hochschild.hpp"
#include "suq2/peter_weyl.hpp"
#include "suq2/spectral.hpp"

namespace suq2 {

std::string CriterionResult::line() const {
    std::ostringstream os;
    os << (pass ? "[PASS] " : "[FAIL] ") << id << " " << name << ": " << detail;
    os.precision(2);
    os << std::fixed << " (" << seconds << " s)";
    return os.str();
}

nlohmann::json CriterionResult::to_json() const {
    // no timings: reruns must give identical files
    return {{"id", id}, {"name", name}, {"pass", pass}, {"detail", detail}};
}

namespace {

using Rng = std::mt19937_64;

const Element GA = Element::gen(Gen::a), GB = Element::gen(Gen::b), GC = Element::gen(Gen::c),
              GD = Element::gen(Gen::d);
const Element GENS[4] = {GA, GB, GC, GD};

std::string fmt(double x, int prec = 6) {
    std::ostringstream os;
    os.precision(prec);
    os << x;
    return os.str();
}

std::vector<Monomial> basis_upto(int deg) {
    std::vector<Monomial> out;
    for (int n = 0; n <= deg; ++n)
        for (int m = 0; m + n <= deg; ++m)
            for (int r = 0; r + m + n <= deg; ++r) {
                if (n > 0) {
                    out.push_back(Monomial::A(n, m, r));
                    continue;
                }
                for (int s = 0; s + m + r <= deg; ++s) out.push_back(Monomial::D(m, r, s));
            }
    return out;
}

std::string random_word(Rng& rng, int maxlen) {
    std::string w;
    int len = static_cast<int>(rng() % (maxlen + 1));
    for (int i = 0; i < len; ++i) w += "abcd"[rng() % 4];
    return w;
}

// up to `terms` basis monomials of degree <= deg with small Laurent coefficients
Element random_element(Rng& rng, int deg, int terms) {
    const auto basis = basis_upto(deg);
    Element x;
    int k = 1 + static_cast<int>(rng() % terms);
    for (int t = 0; t < k; ++t)
        x.add_term(basis[rng() % basis.size()],
                   Scalar::v_pow(static_cast<int>(rng() % 5) - 2, static_cast<long>(1 + rng() % 3)));
    return x.is_zero() ? Element::one() : x;
}

Tuple generator_tuple(int code, int len) {
    Tuple t;
    for (int i = 0; i < len; ++i, code /= 4) t.push_back(GENS[code % 4]);
    return t;
}

Tuple random_tuple(Rng& rng, int len) {
    Tuple t;
    for (int i = 0; i < len; ++i) t.push_back(random_element(rng, 3, 2));
    return t;
}

// ---- 1
CriterionResult c_algebra(Rng& rng) {
    int bad_conf = 0, bad_assoc = 0, bad_star = 0;
    for (int t = 0; t < 1000; ++t) {
        std::string w = random_word(rng, 8);
        Element x = normalize_word(w);
        size_t cut = w.empty() ? 0 : rng() % (w.size() + 1);
        if (x != word(w) || x != mul(word(w.substr(0, cut)), word(w.substr(cut)))) ++bad_conf;
    }
    for (int t = 0; t < 200; ++t) {
        Element x = random_element(rng, 3, 2), y = random_element(rng, 3, 2), z = random_element(rng, 3, 2);
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) ++bad_assoc;
        if (star(mul(x, y)) != mul(star(y), star(x)) || star(star(x)) != x) ++bad_star;
    }
    return {1, "algebra suite", bad_conf + bad_assoc + bad_star == 0,
            "1000 words, 200 triples; mismatches: confluence " + std::to_string(bad_conf) + ", associativity " +
                std::to_string(bad_assoc) + ", star " + std::to_string(bad_star)};
}

// ---- 2
CriterionResult c_actions(Rng&) {
    int bad = 0, count = 0;
    for (const auto& mo : basis_upto(4)) {
        Element x = Element::monomial(mo);
        ++count;
        if (act_e(x) != sweedler_oracle(HopfGen::e, x)) ++bad;
        if (act_f(x) != sweedler_oracle(HopfGen::f, x)) ++bad;
        if (act_weight(x, Side::left, 1) != sweedler_oracle(HopfGen::k, x)) ++bad;
        if (act_weight(x, Side::left, -1) != sweedler_oracle(HopfGen::k_inv, x)) ++bad;
    }
    return {2, "action oracle", bad == 0,
            std::to_string(count) + " monomials of degree <= 4, " + std::to_string(bad) + " disagreements"};
}

// ---- 3
CriterionResult c_haar(Rng& rng) {
    int bad_h = 0, bad_i = 0;
    for (int t = 0; t < 500; ++t) {
        Element x = random_element(rng, 5, 2), y = random_element(rng, 5, 2);
        if (haar(mul(x, y)) != haar(mul(theta(y), x))) ++bad_h;
        if (int_one(mul(x, y)) != int_one(mul(sigma_L(theta(y, -1), 4), x))) ++bad_i;
    }
    return {3, "haar twisted trace", bad_h + bad_i == 0,
            "500 pairs; failures: haar " + std::to_string(bad_h) + ", int_one " + std::to_string(bad_i)};
}

// ---- 4
CriterionResult c_closure(Rng& rng) {
    std::vector<Cochain> bs;
    for (auto v : all_cup_variants) bs.push_back(twisted_boundary(cup_cochain(v)));
    bs.push_back(twisted_boundary(phi_res_cochain()));
    int bad = 0;
    for (int code = 0; code < 1024; ++code) {
        Tuple t = generator_tuple(code, 5);
        for (const auto& b : bs) bad += !b(t).is_zero();
    }
    for (int k = 0; k < 200; ++k) {
        Tuple t = random_tuple(rng, 5);
        for (const auto& b : bs) bad += !b(t).is_zero();
    }
    return {4, "cocycle closure", bad == 0,
            "7 cochains on 1024 generator and 200 random 5-tuples, " + std::to_string(bad) + " nonzero"};
}

// ---- 5
CriterionResult c_salmon(Rng&) {
    Cochain b132 = twisted_boundary(psi(PsiVariant::v132)), b213 = twisted_boundary(psi(PsiVariant::v213));
    int bad = 0, literal = 0;
    for (int code = 0; code < 256; ++code) {
        Tuple t = generator_tuple(code, 4);
        Scalar phi = cup_cocycle(CupVariant::id, t[0], t[1], t[2], t[3]);
        Scalar l132 = b132(t), l213 = b213(t);
        if (l132 != phi + transported_cup(PsiVariant::v132, t[0], t[1], t[2], t[3])) ++bad;
        if (l213 != phi + transported_cup(PsiVariant::v213, t[0], t[1], t[2], t[3])) ++bad;
        if (l132 != phi + cup_cocycle(CupVariant::v132, t[0], t[1], t[2], t[3])) ++literal;
    }
    return {5, "coboundary identities", bad == 0,
            "b(psi) = phi + transported cup on 256 tuples, " + std::to_string(bad) +
                " failures (the transported term is -phi_132 with the printed prefactors; the reading "
                "b(psi_132) = phi + phi_132 fails on " +
                std::to_string(literal) + " tuples)"};
}

// ---- 6
CriterionResult c_pairings(Rng& rng) {
    Chain vol = dvol();
    Scalar p_phi = pair(cup_cochain(CupVariant::id), vol);
    Scalar p_res = pair(phi_res_cochain(), vol);
    bool ok_phi = p_phi == Scalar(1);
    bool ok_res = p_res == (Scalar::q_pow(-1) + Scalar::q_pow(1)) * Scalar(3);
    int bad = 0;
    for (int k = 0; k < 200; ++k) {
        Tuple t = random_tuple(rng, 4);
        bad += phi_res_over_R(t[0], t[1], t[2], t[3]) != phi_res_combination(t[0], t[1], t[2], t[3]);
    }
    return {6, "pairings with dvol", ok_phi && ok_res && bad == 0,
            "phi(dvol) = " + p_phi.to_string() + " (want 1), phi_res/R(dvol) = " + p_res.to_string() +
                " (want 3(q^-1 + q)), combination identity failures " + std::to_string(bad) + "/200"};
}

// ---- 7
CriterionResult c_pi_split(Rng& rng) {
    int bad = 0;
    for (int k = 0; k < 200; ++k) {
        Tuple t = random_tuple(rng, 4);
        auto [p1, p2] = pi_split(t[0], t[1], t[2], t[3]);
        bad += int_one(p1) + int_one(p2) != phi_res_over_R(t[0], t[1], t[2], t[3]);
    }
    return {7, "pi-split cross-check", bad == 0, std::to_string(bad) + "/200 mismatches"};
}

// ---- 8
CriterionResult c_peter_weyl(Rng&) {
    auto rep = verify_pw_oracle(4);
    return {8, "Peter-Weyl oracle", rep.ok(),
            std::to_string(rep.vectors) + " vectors in " + std::to_string(rep.blocks) +
                " weight blocks; orthogonal " + (rep.orthogonal ? "yes" : "no") + ", proportional to Gram-Schmidt " +
                (rep.proportional ? "yes" : "no") + ", norms exact " + (rep.norms ? "yes" : "no")};
}

// ---- 9
CriterionResult c_dirac(Rng&) {
    double eig = 0.0, ratio = 0.0;
    for (double q : {0.3, 0.5, 0.8})
        for (int l2 = 0; l2 <= 6; ++l2)
            for (int I = -l2; I <= l2; I += 2) {
                auto chk = check_dirac_sector(dirac_sector_exact(l2, I, q), l2, q);
                eig = std::max(eig, chk.max_eig_err);
                ratio = std::max(ratio, chk.max_ratio_err);
            }
    return {9, "Dirac spectrum", eig <= 1e-9 && ratio <= 1e-8,
            "sectors 2l <= 6 at q = 0.3, 0.5, 0.8: max eigenvalue error " + fmt(eig, 3) + " (tol 1e-9), ratio error " +
                fmt(ratio, 3) + " (tol 1e-8)"};
}

// ---- 10
CriterionResult c_clebsch(Rng&) {
    double err = 0.0, diag = 0.0;
    for (double q : {0.3, 0.5, 0.8}) {
        auto m = mult_op_matrix(GC, 5, q);
        auto at = [&](int l2, int I, int J) {
            for (size_t k = 0; k < m.basis.size(); ++k)
                if (m.basis[k].l2 == l2 && m.basis[k].I == I && m.basis[k].J == J) return static_cast<int>(k);
            return -1;
        };
        for (size_t col = 0; col < m.basis.size(); ++col) {
            const auto& t = m.basis[col];
            if (t.l2 > 4) continue;
            int up = at(t.l2 + 1, t.I + 1, t.J - 1), down = at(t.l2 - 1, t.I + 1, t.J - 1);
            for (int row = 0; row < m.m.rows(); ++row) {
                double want = row == up ? cg_c_plus(t.l2, t.I, t.J, q)
                              : row == down ? cg_c_minus(t.l2, t.I, t.J, q)
                                            : 0.0;
                err = std::max(err, std::fabs(m.m(row, col) - want));
            }
        }
        auto cc = mult_op_matrix(mul(star(GC), GC), 4, q);
        for (size_t k = 0; k < cc.basis.size(); ++k) {
            const auto& t = cc.basis[k];
            diag = std::max(diag, std::fabs(cc.m(k, k) - cstarc_diag(t.l2, t.I, t.J, q)));
        }
    }
    return {10, "Clebsch-Gordan", err <= 1e-10 && diag <= 1e-10,
            "c in t-basis for 2l <= 4: max error " + fmt(err, 3) + "; c*c diagonal max error " + fmt(diag, 3) +
                " (tol 1e-10)"};
}

// ---- 11
CriterionResult c_residue(Rng&) {
    bool ok = true;
    std::string detail;
    for (double q : {0.3, 0.5, 0.8}) {
        auto rep = residue_extract(omega_deltaL2_e11(), q);
        double R = residue_R(q), rel = std::fabs(rep.estimate - R) / R;
        ok = ok && rel <= 0.01;
        detail += "q=" + fmt(q, 2) + ": " + fmt(rep.estimate, 7) + " +- " + fmt(rep.error_bar, 2) + " vs R " +
                  fmt(R, 7) + " (ratio " + fmt(rep.estimate / R, 5) + "); ";
    }
    return {11, "residue of Delta_L^2 E11", ok, detail + "tol 1%"};
}

// ---- 12
CriterionResult c_cstarc(Rng&) {
    const double q = 0.5;
    auto rep = residue_extract(omega_cstarc(), q, refined_eps_schedule);
    auto base = residue_extract(omega_cstarc(), q, default_eps_schedule);
    bool ok = std::fabs(rep.estimate) <= 1e-3 && rep.converged;
    std::string vals;
    for (size_t k = 0; k < base.values.size(); ++k) vals += (k ? ", " : "") + fmt(base.values[k], 4);
    return {12, "no pole at 3 for c*c", ok,
            "extrapolated (z-3) Upsilon_z = " + fmt(rep.estimate, 3) + " +- " + fmt(rep.error_bar, 2) +
                " on eps 0.4..0.0125 (tol 1e-3); four-point schedule gives " + fmt(base.estimate, 3) + " +- " +
                fmt(base.error_bar, 2) + "; raw (z-3) Upsilon_z at eps 0.4..0.05: " + vals};
}

// ---- 13
CriterionResult c_gamma(Rng&) {
    bool ok = true;
    std::vector<double> zs;
    for (int k = 0; k < 20; ++k) zs.push_back(2.05 + 0.2 * k);
    for (double q : {0.3, 0.5, 0.8}) {
        SpectralGrid grid(q, 120);
        for (const auto& r : upsilon_scan(omega_gamma(), zs, grid)) ok = ok && r.partial_sum == 0.0;
        for (double z : {2.5, 3.05, 4.0})
            for (double s : upsilon_partial_sums(omega_gamma(), z, grid)) ok = ok && s == 0.0;
    }
    return {13, "Upsilon(Gamma) = 0", ok, "every truncation 2l <= 120, 20 z-values, q = 0.3, 0.5, 0.8"};
}

// ---- 14
CriterionResult c_mero(Rng&) {
    const double q = 0.5, Q = big_Q(q);
    double worst = 0.0;  // largest |direct - closed| / err bound
    for (HParams p : {HParams{0.5, std::sqrt(1 / q) * Q, std::log(1 / q), 3}, HParams{1.0, 1.5, 0.7, 2}})
        for (int k = 0; k < 20; ++k) {
            double z = 3.2 + 0.8 * k / 19.0;
            HValue h = h_closed(p, z);
            worst = std::max(worst, std::fabs(h_direct(p, z) - h.closed) / h.err_bound);
        }
    std::vector<double> vals;
    for (double e : default_eps_schedule) vals.push_back(e * f_value(3.0 + e, q));
    double fres = richardson_diagonal(default_eps_schedule, vals).back();
    double want = residue_f_expected(q), rel = std::fabs(fres - want) / want;
    return {14, "meromorphic references", worst <= 1.0 && rel <= 0.01,
            "h: max |direct - closed| / err bound = " + fmt(worst, 3) + " over 2 x 20 points; f residue " +
                fmt(fres, 7) + " vs " + fmt(want, 7) + " (rel " + fmt(rel, 2) + ", tol 1%)"};
}

using Runner = std::function<CriterionResult(Rng&)>;

const std::vector<Runner>& runners() {
    static const std::vector<Runner> r{c_algebra, c_actions,   c_haar,     c_closure, c_salmon,
                                       c_pairings, c_pi_split, c_peter_weyl, c_dirac,   c_clebsch,
                                       c_residue,  c_cstarc,   c_gamma,    c_mero};
    return r;
}

}  // namespace

CriterionResult run_criterion(int id, unsigned seed) {
    if (id < 1 || id > acceptance_count) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
    Rng rng(seed * 1000003ull + id);
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = runners()[id - 1](rng);
    } catch (const std::exception& e) {
        r = {id, "criterion " + std::to_string(id), false, std::string("threw: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // runtime budgets; the residue budget covers its three q-values
    static const std::map<int, double> budget{{1, 10.0}, {2, 30.0}, {4, 300.0}, {11, 360.0}};
    if (auto it = budget.find(id); it != budget.end() && r.seconds > it->second) {
        r.pass = false;
        r.detail += "; over the " + fmt(it->second, 4) + " s budget";
    }
    return r;
}

std::vector<CriterionResult> run_acceptance(unsigned seed) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= acceptance_count; ++id) out.push_back(run_criterion(id, seed));
    return out;
}

}  // namespace suq2
