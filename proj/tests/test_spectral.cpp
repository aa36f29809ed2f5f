#include <doctest.h>

#include <cmath>

#include "suq2/spectral.hpp"

using namespace suq2;

TEST_CASE("q brackets and lambda") {
    CHECK(q_bracket(2, 0.5) == doctest::Approx(1.0));
    CHECK(q_bracket(4, 0.5) == doctest::Approx(2.5));
    CHECK(big_Q(0.5) == doctest::Approx(2.0 / 3.0));
    CHECK(lambda_eigen(1, 0, 0.5) == doctest::Approx(1.0));
    CHECK(lambda_eigen(2, 1, 0.5) == doctest::Approx(std::sqrt(1.5)));
    CHECK_THROWS_AS(lambda_eigen(2, 4, 0.5), std::out_of_range);
    // large n stays finite
    CHECK(std::isfinite(lambda_sq(5001, 5000, 0.3)));
    CHECK(lambda_sq(5001, 5000, 0.3) == doctest::Approx(2500.0 * 2500.0 + 1.0 / (0.3 * (1 / 0.3 - 0.3)))
                                            .epsilon(1e-12));
}

TEST_CASE("J sets") {
    CHECK(J_set(1) == std::vector<int>{0});
    CHECK(J_set(2) == std::vector<int>{1});
    CHECK(J_set(3) == std::vector<int>{0, 2});
    CHECK(J_set(4) == std::vector<int>{1, 3});
    CHECK(J_set(0).empty());
}

TEST_CASE("closed-form Dirac sectors") {
    for (double q : {0.3, 0.5, 0.8})
        for (int l2 = 0; l2 <= 9; ++l2) {
            auto chk = check_dirac_sector(dirac_sector(l2, q), l2, q);
            CHECK(chk.max_eig_err < 1e-9 * std::pow(q, -l2));
            CHECK(chk.max_ratio_err < 1e-8);
        }
    auto ev = dirac_expected_spectrum(1, 0.5);
    CHECK(ev == std::vector<double>{-1.0, -1.0, -1.0, 1.0});
}

TEST_CASE("gamma weight vanishes identically") {
    SpectralGrid grid(0.5, 60);
    for (const auto& r : upsilon_scan(omega_gamma(), {2.5, 3.0, 3.7, 4.0}, grid)) CHECK(r.partial_sum == 0.0);
    for (double s : upsilon_partial_sums(omega_gamma(), 3.3, grid)) CHECK(s == 0.0);
}

TEST_CASE("z <= 2 is rejected") {
    SpectralGrid grid(0.5, 10);
    CHECK_THROWS_AS(upsilon_scan(omega_identity(), {2.0}, grid), std::domain_error);
    CHECK_THROWS_AS(upsilon_direct_pw(1.5, 0.5, 4), std::domain_error);
    CHECK_THROWS_AS(omega_from_tag("nope"), std::invalid_argument);
}

TEST_CASE("identity weight is monotone") {
    const double q = 0.5;
    auto p = upsilon_partial_sums(omega_identity(), 4.0, SpectralGrid(q, 30));
    for (size_t k = 1; k < p.size(); ++k) CHECK(p[k] > p[k - 1]);
    auto rows = upsilon_scan(omega_identity(), {3.0, 3.5, 4.0, 5.0}, SpectralGrid(q, 30));
    for (size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].partial_sum < rows[k - 1].partial_sum);
}

TEST_CASE("trace formula bookkeeping against the Peter-Weyl trace") {
    for (double q : {0.3, 0.5, 0.8})
        for (int lmax : {3, 8, 20}) {
            double direct = upsilon_direct_pw(4.0, q, lmax);
            double formula = upsilon_scan(omega_identity(), {4.0}, SpectralGrid(q, lmax))[0].partial_sum;
            CHECK(std::fabs(direct - formula) <= 1e-12 * std::fabs(formula));
        }
}

TEST_CASE("scan is deterministic") {
    SpectralGrid grid(0.5, 80);
    std::vector<double> zs;
    for (int k = 0; k < 16; ++k) zs.push_back(3.1 + 0.1 * k);
    auto a = upsilon_scan(omega_deltaL2(), zs, grid), b = upsilon_scan(omega_deltaL2(), zs, grid);
    for (size_t k = 0; k < zs.size(); ++k) CHECK(a[k].partial_sum == b[k].partial_sum);
}

TEST_CASE("summed weights agree with the per-i weights") {
    for (const char* tag : {"cstarc", "deltaL2-e11", "deltaL2-e22", "deltaL2"}) {
        OmegaSpec fast = omega_from_tag(tag), plain = fast;
        REQUIRE(fast.summed);
        plain.summed = nullptr;
        for (double q : {0.3, 0.5, 0.8}) {
            SpectralGrid grid(q, 40);
            auto a = upsilon_partial_sums(fast, 3.5, grid), b = upsilon_partial_sums(plain, 3.5, grid);
            for (size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("separable sums against brute force") {
    for (double q : {0.3, 0.5}) {
        SpectralGrid grid(q, 1600);
        for (const char* tag : {"deltaL2-e11", "deltaL2-e22", "deltaL2"}) {
            OmegaSpec om = omega_from_tag(tag);
            auto row = upsilon_scan(om, {5.0}, grid)[0];
            double full = separable_sum(om.separable(q), 5.0, q, 1, 2);
            // what is missing from the truncated sum is the remainder
            CHECK(full - row.partial_sum > 0.0);
            CHECK(full - row.partial_sum == doctest::Approx(row.tail_bound).epsilon(0.3));
        }
    }
    CHECK_THROWS_AS(separable_sum({{1.0, 0, -1}}, 2.9, 0.5, 1, 2), std::domain_error);
}

TEST_CASE("tail estimate tracks the true remainder") {
    const double q = 0.5;
    auto om = omega_deltaL2_e11();
    double full = separable_sum(om.separable(q), 4.0, q, 1, 2);
    auto row = upsilon_scan(om, {4.0}, SpectralGrid(q, 800))[0];
    CHECK(full - row.partial_sum == doctest::Approx(row.tail_bound).epsilon(0.1));
}

TEST_CASE("Richardson and least squares on a known Laurent series") {
    std::vector<double> eps = default_eps_schedule, vals;
    for (double e : eps) vals.push_back(e * (2.5 / e + 1.0 - 3.0 * e + 0.5 * e * e));
    auto d = richardson_diagonal(eps, vals);
    CHECK(d.back() == doctest::Approx(2.5).epsilon(1e-12));
    std::vector<double> lin;
    for (double e : eps) lin.push_back(e * (2.5 / e + 1.0 - 3.0 * e));
    CHECK(laurent_fit_residue(eps, lin) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("residue extraction") {
    auto g = residue_extract(omega_gamma(), 0.5);
    CHECK(g.estimate == 0.0);
    CHECK(g.converged);
    auto r = residue_extract(omega_deltaL2(), 0.5);
    CHECK(r.estimate == doctest::Approx(residue_R(0.5)).epsilon(1e-3));
    CHECK(r.least_squares == doctest::Approx(residue_R(0.5)).epsilon(1e-2));
    CHECK(r.converged);
    auto e11 = residue_extract(omega_deltaL2_e11(), 0.5);
    CHECK(e11.estimate == doctest::Approx(residue_R(0.5) / 2).epsilon(1e-3));
    auto j = r.to_json();
    CHECK(j["omega"] == "deltaL2");
    CHECK(j["schedule"].size() == 4);
    CHECK_THROWS_AS(residue_extract(omega_gamma(), 0.5, {0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("c*c has no pole at 3") {
    auto r = residue_extract(omega_cstarc(), 0.5, refined_eps_schedule);
    CHECK(std::fabs(r.estimate) < 1e-4);
    CHECK(r.converged);
    CHECK(r.max_tail < 1e-2);
}

TEST_CASE("h closed form within its error bound") {
    const double q = 0.5, Q = big_Q(q);
    for (HParams p : {HParams{0.5, std::sqrt(1 / q) * Q, std::log(1 / q), 3}, HParams{1.0, 1.5, 0.7, 2}})
        for (int k = 0; k < 20; ++k) {
            double z = 3.2 + 0.8 * k / 19.0;
            HValue h = h_closed(p, z);
            CHECK(std::fabs(h_direct(p, z) - h.closed) <= h.err_bound);
        }
    CHECK_THROWS_AS(h_closed({0.5, 1, 1, 0}, 3.5), std::invalid_argument);
    CHECK_THROWS_AS(h_direct({0.5, 1, 1, 1}, 2.9), std::domain_error);
}

TEST_CASE("h direct sum against brute force") {
    HParams p{1.0, 1.5, 0.7, 2};
    const double z = 4.5, s = z / 2;
    CompensatedSum brute;
    for (int m = 2; m < 120; ++m)
        for (int n = 1; n < 20000; ++n) {
            double e = std::exp(p.r * m);
            brute.add(e * std::pow(n * n + 2.25 * e, -s));
        }
    // brute force misses n >= 20000, about sum_m e^{rm} / (3 * 20000^3)
    CHECK(h_direct(p, z) == doctest::Approx(brute.value()).epsilon(1e-6));
}

TEST_CASE("f residue") {
    const double q = 0.5;
    CHECK(residue_f_expected(q) == doctest::Approx(6.4921).epsilon(1e-4));
    double est = richardson_diagonal({0.1, 0.05, 0.025, 0.0125},
                                     {0.1 * f_value(3.1, q), 0.05 * f_value(3.05, q), 0.025 * f_value(3.025, q),
                                      0.0125 * f_value(3.0125, q)})
                     .back();
    CHECK(est == doctest::Approx(residue_f_expected(q)).epsilon(1e-6));
}

TEST_CASE("f1 and f2 converge at z = 4") {
    for (auto part : {&f1_partial, &f2_partial}) {
        auto res = cauchy_doubling([part](int L) { return part(4.0, 0.5, L); }, 250, 64000, 1e-8);
        CHECK(res.converged);
    }
}

TEST_CASE("commutator growth is unbounded") {
    double prev = 0.0;
    for (int l2 = 2; l2 <= 64; l2 *= 2) {
        double g = commutator_growth(l2, 0.5);
        CHECK(g > prev);
        prev = g;
    }
    CHECK(prev > 1e6);
}
