#include "suq2/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace suq2 {

void CompensatedSum::add(double x) {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
        comp += (sum - t) + x;
    else
        comp += (x - t) + sum;
    sum = t;
}

double q_bracket(int twice_x, double q) {
    double x = twice_x / 2.0;
    return (std::pow(q, -x) - std::pow(q, x)) / (1.0 / q - q);
}

double big_Q(double q) { return 1.0 / (1.0 / q - q); }

double lambda_sq(int l2, int n, double q) {
    if (l2 < 0 || std::abs(n) > l2 + 1)
        throw std::out_of_range("lambda: n = " + std::to_string(n) + " outside [-(2l+1), 2l+1] for 2l = " +
                                std::to_string(l2));
    // q^n [l+1/2+n/2][l+1/2-n/2] = Q^2 (q^{-a} - q^{2n+a})(q^{-a} - q^a), a = (2l+1-n)/2,
    // written so that no factor overflows when n is large
    const double Q = big_Q(q), a = (l2 + 1 - n) / 2.0;
    return 0.25 * n * static_cast<double>(n) + Q * Q * (std::pow(q, -a) - std::pow(q, 2 * n + a)) * (std::pow(q, -a) - std::pow(q, a));
}

double lambda_eigen(int l2, int n, double q) { return std::sqrt(lambda_sq(l2, n, q)); }

std::vector<int> J_set(int l2) {
    std::vector<int> out;
    for (int n = (l2 % 2 == 1) ? 0 : 1; n <= l2 - 1; n += 2) out.push_back(n);
    return out;
}

SpectralGrid::SpectralGrid(double q_, int lmax_) : q(q_), lmax(lmax_) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("SpectralGrid: q must lie in (0, 1)");
    if (lmax < 1) throw std::invalid_argument("SpectralGrid: lmax must be positive");
    lambda2.resize(lmax + 1);
    for (int l2 = 1; l2 <= lmax; ++l2)
        for (int n : J_set(l2)) lambda2[l2].push_back(lambda_sq(l2, n, q));
}

double SpectralGrid::delta_L(int J) const { return std::pow(q, J); }
double SpectralGrid::delta_R(int I) const { return std::pow(q, I); }
double SpectralGrid::delta_F(int I, int J) const { return std::pow(q, I + J); }

// ---- Dirac sectors

Eigen::MatrixXd dirac_sector(int l2, double q) {
    const int N = l2 + 1;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2 * N, 2 * N);
    for (int k = 0; k < N; ++k) {
        int J = -l2 + 2 * k;
        D(k, k) = (J - 1) / 2.0;
        D(N + k, N + k) = -(J + 1) / 2.0;
    }
    for (int k = 0; k + 1 < N; ++k) {
        int Jhi = -l2 + 2 * (k + 1);
        // q^{j-1/2} sqrt([l+1/2]^2 - [j-1/2]^2), the bracket difference as [l+j][l-j+1]
        double beta = std::sqrt(q_bracket(l2 + Jhi, q) * q_bracket(l2 - Jhi + 2, q));
        double off = std::pow(q, (Jhi - 1) / 2.0) * beta;
        D(k + 1, N + k) = off;
        D(N + k, k + 1) = off;
    }
    return D;
}

std::vector<double> dirac_expected_spectrum(int l2, double q) {
    std::vector<double> ev{-(l2 + 1) / 2.0, -(l2 + 1) / 2.0};
    for (int Jhi = -l2 + 2; Jhi <= l2; Jhi += 2) {
        double lam = lambda_eigen(l2, Jhi - 1, q);
        ev.push_back(lam);
        ev.push_back(-lam);
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

double C_ratio(int l2, int J, int sign, double q) {
    double lam = lambda_eigen(l2, J - 1, q);
    double beta = std::sqrt(q_bracket(l2 + J, q) * q_bracket(l2 - J + 2, q));
    return (sign * lam - (J - 1) / 2.0) / (std::pow(q, (J - 1) / 2.0) * beta);
}

DiracCheck check_dirac_sector(const Eigen::MatrixXd& D, int l2, double q) {
    DiracCheck out;
    out.max_asym = (D - D.transpose()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
    auto expected = dirac_expected_spectrum(l2, q);
    const auto& ev = es.eigenvalues();
    for (int k = 0; k < ev.size(); ++k) out.max_eig_err = std::max(out.max_eig_err, std::fabs(ev[k] - expected[k]));
    const int N = l2 + 1;
    for (int k = 0; k + 1 < N; ++k) {
        int Jhi = -l2 + 2 * (k + 1);
        double lam = lambda_eigen(l2, Jhi - 1, q);
        for (int sign : {+1, -1}) {
            int best = 0;
            for (int t = 1; t < ev.size(); ++t)
                if (std::fabs(ev[t] - sign * lam) < std::fabs(ev[best] - sign * lam)) best = t;
            Eigen::VectorXd v = es.eigenvectors().col(best);
            if (v(k + 1) < 0) v = -v;  // upper slot positive
            double ratio = v(N + k) / v(k + 1);
            double ref = C_ratio(l2, Jhi, sign, q);
            out.max_ratio_err = std::max(out.max_ratio_err, std::fabs(ratio - ref) / std::max(1.0, std::fabs(ref)));
        }
    }
    return out;
}

// ---- Clebsch-Gordan closed forms

double cg_c_plus(int l2, int I, int J, double q) {
    return std::pow(q, (I + J) / 4.0) * std::sqrt(q_bracket(l2 + I + 2, q) * q_bracket(l2 - J + 2, q)) /
           q_bracket(2 * (l2 + 1), q);
}

double cg_c_minus(int l2, int I, int J, double q) {
    return -std::pow(q, (I + J) / 4.0) * std::sqrt(q_bracket(l2 - I, q) * q_bracket(l2 + J, q)) /
           q_bracket(2 * (l2 + 1), q);
}

double cstarc_diag(int l2, int I, int J, double q) {
    const double Q = big_Q(q);
    auto eps = [&](int k) { return Q * (1.0 - std::pow(q, 2 * k)); };
    double c1 = eps((l2 + I) / 2 + 1) * eps((l2 - J) / 2 + 1) / (eps(l2 + 1) * eps(l2 + 2));
    double c2 = l2 == 0 ? 0.0 : eps((l2 - I) / 2) * eps((l2 + J) / 2) / (eps(l2) * eps(l2 + 1));
    return std::pow(q, l2) * (std::pow(q, J) * c1 + std::pow(q, I) * c2);
}

// ---- weights for the trace formula

namespace {

double deltaL2_summed(int l2, int n, double q, double mult) {
    const int m = l2 - n;
    return mult * big_Q(q) * (std::pow(q, -m - 1) - std::pow(q, 2 * n + m + 1));
}

std::vector<SeparableTerm> deltaL2_terms(double q, double mult) {
    // sum_i q^{-2i-n} q^{2n} = [2l+1] q^n = Q (q^{-m-1} - q^{2n+m+1})
    const double Q = big_Q(q);
    return {{mult * Q / q, 0, -1}, {-mult * Q * q, 2, 1}};
}

}  // namespace

OmegaSpec omega_gamma() {
    return {"gamma", [](int, int, int, Slot s, double) { return s == Slot::top ? 1.0 : -1.0; }, nullptr};
}

OmegaSpec omega_deltaL2_e11() {
    return {"deltaL2-e11", [](int, int, int n, Slot s, double q) { return s == Slot::top ? std::pow(q, 2 * n) : 0.0; },
            [](double q) { return deltaL2_terms(q, 1.0); },
            [](int l2, int n, double q) { return deltaL2_summed(l2, n, q, 1.0); }};
}

OmegaSpec omega_deltaL2_e22() {
    return {"deltaL2-e22",
            [](int, int, int n, Slot s, double q) { return s == Slot::bottom ? std::pow(q, 2 * n) : 0.0; },
            [](double q) { return deltaL2_terms(q, 1.0); },
            [](int l2, int n, double q) { return deltaL2_summed(l2, n, q, 1.0); }};
}

OmegaSpec omega_deltaL2() {
    return {"deltaL2", [](int, int, int n, Slot, double q) { return std::pow(q, 2 * n); },
            [](double q) { return deltaL2_terms(q, 2.0); },
            [](int l2, int n, double q) { return deltaL2_summed(l2, n, q, 2.0); }};
}

OmegaSpec omega_cstarc() {
    return {"cstarc",
            [](int l2, int I, int n, Slot s, double q) {
                return cstarc_diag(l2, I, s == Slot::top ? n + 1 : n - 1, q);
            },
            nullptr,
            [](int l2, int n, double q) {
                // the i-dependence is geometric: sum_i q^{-2i} eps_{l+i+1} and sum_i eps_{l-i}
                const double Q = big_Q(q);
                auto eps = [&](int k) { return Q * (1.0 - std::pow(q, 2 * k)); };
                const double qS = Q * (1.0 / q - std::pow(q, 2 * l2 + 1));  // q^{2l} [2l+1]
                const double sum1 = Q * (qS - (l2 + 1) * std::pow(q, 2 * l2 + 2));  // q^{2l} sum_i q^{-2i} eps_{l+i+1}
                const double sum2 = Q * ((l2 + 1) - qS);                            // sum_i eps_{l-i}
                double w = 0.0;
                for (int J : {n + 1, n - 1}) {
                    w += std::pow(q, J - n) * eps((l2 - J) / 2 + 1) / (eps(l2 + 1) * eps(l2 + 2)) * sum1;
                    if (l2 > 0) w += std::pow(q, l2 - n) * eps((l2 + J) / 2) / (eps(l2) * eps(l2 + 1)) * sum2;
                }
                return w;
            }};
}

OmegaSpec omega_identity() {
    return {"identity", [](int, int, int, Slot, double) { return 1.0; }, nullptr};
}

std::vector<std::string> omega_tags() { return {"gamma", "deltaL2-e11", "deltaL2-e22", "deltaL2", "cstarc", "identity"}; }

OmegaSpec omega_from_tag(const std::string& tag) {
    if (tag == "gamma") return omega_gamma();
    if (tag == "deltaL2-e11") return omega_deltaL2_e11();
    if (tag == "deltaL2-e22") return omega_deltaL2_e22();
    if (tag == "deltaL2") return omega_deltaL2();
    if (tag == "cstarc") return omega_cstarc();
    if (tag == "identity") return omega_identity();
    throw std::invalid_argument("unknown omega spec '" + tag + "'");
}

// ---- trace sums

namespace {

// W[l2][k] = sum_i q^{-2i-n} (g_+ + g_-)
std::vector<std::vector<double>> trace_weights(const OmegaSpec& omega, const SpectralGrid& grid) {
    std::vector<std::vector<double>> W(grid.lmax + 1);
    for (int l2 = 1; l2 <= grid.lmax; ++l2) {
        auto ns = J_set(l2);
        for (int n : ns) {
            if (omega.summed) {
                W[l2].push_back(omega.summed(l2, n, grid.q));
                continue;
            }
            CompensatedSum acc;
            for (int I = -l2; I <= l2; I += 2) {
                double g = omega.g(l2, I, n, Slot::top, grid.q) + omega.g(l2, I, n, Slot::bottom, grid.q);
                if (g != 0.0) acc.add(std::pow(grid.q, -I - n) * g);
            }
            W[l2].push_back(acc.value());
        }
    }
    return W;
}

void check_z(double z) {
    if (!(z > 2.0)) throw std::domain_error("Upsilon_z requires z > 2, got " + std::to_string(z));
}

struct ScanValue {
    double total;
    std::vector<double> partial;  // cumulative by l2
};

ScanValue scan_one(const std::vector<std::vector<double>>& W, const SpectralGrid& grid, double z) {
    const double s = z / 2.0;
    CompensatedSum total;
    std::vector<CompensatedSum> per_l(grid.lmax + 1);
    // n outer, l inner; n sits at index (n - n0)/2 of J_set(l2)
    for (int n = 0; n < grid.lmax; ++n)
        for (int l2 = n + 1; l2 <= grid.lmax; l2 += 2) {
            int k = (n - (l2 % 2 == 1 ? 0 : 1)) / 2;
            double w = W[l2][k];
            if (w == 0.0) continue;
            double f = std::pow(1.0 + grid.lambda2[l2][k], -s);
            if (f == 0.0) continue;  // weights may overflow where the spectral factor has underflowed
            double term = w * f;
            total.add(term);
            per_l[l2].add(term);
        }
    ScanValue out{total.value(), std::vector<double>(grid.lmax + 1, 0.0)};
    CompensatedSum run;
    for (int l2 = 1; l2 <= grid.lmax; ++l2) {
        run.add(per_l[l2].value());
        out.partial[l2] = run.value();
    }
    return out;
}

// Signed estimate of the part beyond the cutoff: the increments over successive
// doublings of the cutoff are treated as a geometric series.
double tail_estimate(const std::vector<double>& partial, int lmax, double z) {
    if (lmax < 4) return partial[lmax];
    double d1 = partial[lmax / 2] - partial[lmax / 4], d2 = partial[lmax] - partial[lmax / 2];
    double r = d1 != 0.0 ? d2 / d1 : 0.0;
    if (r > 0.0 && r < 1.0) return d2 * r / (1.0 - r);
    // no clean geometric decay: fall back to the fastest rate the trace can have
    return 2.0 * d2 / (std::pow(2.0, z - 1.0) - 1.0);
}

}  // namespace

std::vector<UpsilonRow> upsilon_scan(const OmegaSpec& omega, const std::vector<double>& zs, const SpectralGrid& grid) {
    for (double z : zs) check_z(z);
    auto W = trace_weights(omega, grid);
    std::vector<UpsilonRow> rows(zs.size());
    auto work = [&](size_t k) {
        ScanValue v = scan_one(W, grid, zs[k]);
        rows[k] = {omega.tag, grid.q, zs[k], grid.lmax, v.total, std::fabs(tail_estimate(v.partial, grid.lmax, zs[k]))};
    };
    // each z is independent and written to its own slot, so the output does not depend on scheduling
    const size_t nthreads = std::max<size_t>(1, std::min<size_t>(zs.size(), std::thread::hardware_concurrency()));
    std::vector<std::future<void>> jobs;
    for (size_t t = 0; t < nthreads; ++t)
        jobs.push_back(std::async(std::launch::async, [&, t] {
            for (size_t k = t; k < zs.size(); k += nthreads) work(k);
        }));
    for (auto& j : jobs) j.get();
    return rows;
}

std::vector<double> upsilon_partial_sums(const OmegaSpec& omega, double z, const SpectralGrid& grid) {
    check_z(z);
    return scan_one(trace_weights(omega, grid), grid, z).partial;
}

// ---- complete sums for separable weights

namespace {

double log_add(double a, double b) {
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// exp(lnpref) * sum_{n >= N} (a2 n^2 + A)^{-s}, A = exp(lnA), by Euler-Maclaurin.
double quad_tail(double s, double a2, double lnA, int N, double lnpref) {
    const double x = N;
    const double lnu = log_add(lnA, std::log(a2 * x * x));
    // integral: A^{1/2-s} a2^{-1/2} * (1/2) B(t; s-1/2, 1/2), t = A / (A + a2 N^2)
    double t = std::exp(lnA - lnu);
    double integral;
    if (t < 1e-250) {
        integral = std::exp(lnpref + (0.5 - s) * lnu - 0.5 * std::log(a2)) * 0.5 / (s - 0.5);
    } else {
        double b = boost::math::beta(s - 0.5, 0.5, t);
        integral = std::exp(lnpref + (0.5 - s) * lnA - 0.5 * std::log(a2) + std::log(0.5 * b));
    }
    // F^{(k)}(x) = sum_j k!/(j!(k-2j)!) a2^j (2 a2 x)^{k-2j} g^{(k-j)}(u), g(u) = u^{-s}
    auto deriv = [&](int k) {
        double total = 0.0;
        for (int j = 0; 2 * j <= k; ++j) {
            int p = k - j;
            double fall = 1.0;
            for (int i = 0; i < p; ++i) fall *= (-s - i);
            double comb = std::tgamma(k + 1.0) / (std::tgamma(j + 1.0) * std::tgamma(k - 2 * j + 1.0));
            double poly = comb * std::pow(a2, j) * std::pow(2.0 * a2 * x, k - 2 * j) * fall;
            total += poly * std::exp(lnpref - (s + p) * lnu);
        }
        return total;
    };
    double f0 = std::exp(lnpref - s * lnu);
    return integral + 0.5 * f0 - deriv(1) / 12.0 + deriv(3) / 720.0 - deriv(5) / 30240.0;
}

double binom_general(double a, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (a - i) / (i + 1);
    return r;
}

}  // namespace

double separable_sum(const std::vector<SeparableTerm>& terms, double z, double q, int m0, int step) {
    const double s = z / 2.0, Q = big_Q(q), Q2 = Q * Q, lq = std::log(q);
    // past m_cut, q^m is below double resolution and B_m is astronomically large
    int m_cut = std::max(m0, static_cast<int>(std::ceil(40.0 / -lq)));
    m_cut += ((m0 - m_cut) % step + step) % step;
    const int n_head = static_cast<int>(std::ceil(20.0 / -lq)) + 5;
    CompensatedSum total;
    for (int m = m0; m < m_cut; m += step) {
        const double B = 1.0 + Q2 * (std::pow(q, -m - 1) - 1.0);
        const double corr = Q2 * (1.0 - std::pow(q, m + 1));
        auto denom = [&](int n) { return 0.25 * n * n + B - corr * std::pow(q, 2 * n); };
        for (const auto& t : terms) {
            const double pref = t.coeff * std::pow(q, t.beta * m);
            if (t.alpha < 0) throw std::invalid_argument("separable_sum: negative alpha diverges");
            CompensatedSum inner;
            if (t.alpha > 0) {
                for (int n = 0;; ++n) {
                    double term = std::pow(q, t.alpha * n) * std::pow(denom(n), -s);
                    inner.add(term);
                    if (term < 1e-19 * std::fabs(inner.value())) break;
                }
            } else {
                for (int n = 0; n < n_head; ++n) inner.add(std::pow(denom(n), -s));
                inner.add(quad_tail(s, 0.25, std::log(B), n_head, 0.0));
            }
            total.add(pref * inner.value());
        }
    }
    // m >= m_cut: sum_n (n^2/4 + B)^{-s} = G B^{1/2-s} + B^{-s}/2 up to e^{-4 pi sqrt B},
    // B = Q^2 q^{-m-1} (1 + rho q^{m+1}) expanded binomially; geometric in m.
    const double G = std::sqrt(M_PI) * std::exp(boost::math::lgamma(s - 0.5) - boost::math::lgamma(s));
    const double rho = (1.0 - Q2) / Q2;
    for (const auto& t : terms) {
        if (t.alpha != 0) continue;  // these decay like q^{m(beta+s)} and are negligible here
        for (auto [coef, tt] : {std::pair{G, s - 0.5}, std::pair{0.5, s}}) {
            for (int k = 0; k <= 4; ++k) {
                double e = t.beta + tt + k;
                if (e <= 0) throw std::domain_error("separable_sum: m-series diverges at this z");
                double lead = t.coeff * coef * std::pow(Q2, -tt) * binom_general(-tt, k) * std::pow(rho, k) *
                              std::pow(q, tt + k);
                total.add(lead * std::exp(m_cut * e * lq) / (1.0 - std::exp(step * e * lq)));
            }
        }
    }
    return total.value();
}

// ---- residues

std::vector<double> richardson_diagonal(const std::vector<double>& eps, const std::vector<double>& values) {
    const size_t n = eps.size();
    std::vector<std::vector<double>> T(n, std::vector<double>(n, 0.0));
    std::vector<double> diag;
    for (size_t i = 0; i < n; ++i) {
        T[i][0] = values[i];
        for (size_t j = 1; j <= i; ++j)
            T[i][j] = T[i][j - 1] + (T[i][j - 1] - T[i - 1][j - 1]) * eps[i] / (eps[i - j] - eps[i]);
        diag.push_back(T[i][i]);
    }
    return diag;
}

double laurent_fit_residue(const std::vector<double>& eps, const std::vector<double>& scaled) {
    // scaled = eps * Upsilon = c_{-1} + c_0 eps + c_1 eps^2
    Eigen::MatrixXd A(eps.size(), 3);
    Eigen::VectorXd b(eps.size());
    for (size_t k = 0; k < eps.size(); ++k) {
        A(k, 0) = 1.0;
        A(k, 1) = eps[k];
        A(k, 2) = eps[k] * eps[k];
        b(k) = scaled[k];
    }
    return A.colPivHouseholderQr().solve(b)(0);
}

nlohmann::json ResidueReport::to_json() const {
    nlohmann::json sched = nlohmann::json::array();
    for (size_t k = 0; k < eps.size(); ++k) sched.push_back({{"eps", eps[k]}, {"scaled_value", values[k]}});
    return {{"omega", omega},       {"q", q},
            {"estimate", estimate}, {"error_bar", error_bar},
            {"method", method},     {"least_squares", least_squares},
            {"lmax", lmax},         {"max_tail", max_tail},
            {"converged", converged}, {"tail_ok", tail_ok},
            {"schedule", sched}};
}

ResidueReport residue_extract(const OmegaSpec& omega, double q, const std::vector<double>& eps, int lmax_cap) {
    if (eps.size() < 2) throw std::invalid_argument("residue_extract: need at least two schedule points");
    for (size_t k = 0; k < eps.size(); ++k)
        if (!(eps[k] > 0.0 && eps[k] <= 1.0) || (k && eps[k] >= eps[k - 1]))
            throw std::invalid_argument("residue_extract: schedule must decrease within (0, 1]");
    ResidueReport rep;
    rep.omega = omega.tag;
    rep.q = q;
    rep.eps = eps;
    if (omega.separable) {
        auto terms = omega.separable(q);
        for (double e : eps) rep.values.push_back(e * separable_sum(terms, 3.0 + e, q, 1, 2));
        rep.method = "richardson/complete-separable";
    } else {
        // cutoff sums plus the extrapolated remainder beyond it; the cutoff doubles until
        // every remainder is below 1e-6 of its sum or the ceiling is reached
        rep.method = "richardson/direct-with-tail";
        for (int lmax = std::min(50, lmax_cap);; lmax = std::min(2 * lmax, lmax_cap)) {
            SpectralGrid grid(q, lmax);
            rep.values.clear();
            rep.max_tail = 0.0;
            rep.tail_ok = true;
            for (double e : eps) {
                auto partial = upsilon_partial_sums(omega, 3.0 + e, grid);
                double tail = tail_estimate(partial, lmax, 3.0 + e);
                rep.values.push_back(e * (partial[lmax] + tail));
                rep.max_tail = std::max(rep.max_tail, e * std::fabs(tail));
                rep.tail_ok = rep.tail_ok && std::fabs(tail) <= 1e-6 * std::fabs(partial[lmax]);
            }
            rep.lmax = lmax;
            if (rep.tail_ok || lmax >= lmax_cap) break;
        }
    }
    auto diag = richardson_diagonal(eps, rep.values);
    rep.estimate = diag.back();
    rep.error_bar = std::fabs(diag.back() - diag[diag.size() - 2]);
    if (diag.size() >= 3) {
        double prev = std::fabs(diag[diag.size() - 2] - diag[diag.size() - 3]);
        // a growing bar is tolerated while it stays below the schedule's attainable accuracy
        rep.converged = rep.error_bar <= prev || rep.error_bar <= 1e-3 * std::max(1.0, std::fabs(rep.estimate));
    }
    rep.least_squares = laurent_fit_residue(eps, rep.values);
    return rep;
}

double residue_R(double q) { return 4.0 * (1.0 / q - q) / std::log(1.0 / q); }

double residue_f_expected(double q) {
    double Q = big_Q(q);
    return 4.0 * q / (Q * Q * std::log(1.0 / q));
}

// ---- meromorphic references

HValue h_closed(const HParams& p, double z) {
    if (!(p.x > 0 && p.y > 0 && p.r > 0 && p.w >= 1)) throw std::invalid_argument("h: need x, y, r > 0 and w >= 1");
    if (!(z > 2.0) || z == 3.0) throw std::domain_error("h closed form needs z > 2, z != 3");
    double g = std::exp(boost::math::lgamma((z - 1) / 2) - boost::math::lgamma(z / 2));
    double pole = std::sqrt(M_PI) / (2 * p.x * std::pow(p.y, z - 1)) * g * std::exp(-p.r * p.w * (z - 3) / 2) /
                  (1 - std::exp(-p.r * (z - 3) / 2));
    double geo = std::exp(-p.r * p.w * (z - 2) / 2) / (1 - std::exp(-p.r * (z - 2) / 2));
    double second = geo / (2 * std::pow(p.y, z));
    return {pole - second, second};
}

double h_direct(const HParams& p, double z) {
    if (!(p.x > 0 && p.y > 0 && p.r > 0 && p.w >= 1)) throw std::invalid_argument("h: need x, y, r > 0 and w >= 1");
    if (!(z > 3.0)) throw std::domain_error("h direct sum needs z > 3");
    const double s = z / 2.0, a2 = p.x * p.x;
    const int n_head = 30;
    CompensatedSum total;
    double last = 0.0;
    for (int m = p.w;; ++m) {
        const double lnA = 2 * std::log(p.y) + p.r * m, lnpref = p.r * m;
        CompensatedSum inner;
        for (int n = 1; n < n_head; ++n) inner.add(std::exp(lnpref - s * log_add(lnA, std::log(a2 * n * n))));
        inner.add(quad_tail(s, a2, lnA, n_head, lnpref));
        last = inner.value();
        total.add(last);
        if (m > p.w + 10 && last < 1e-17 * total.value()) break;
    }
    // the remaining m-terms shrink by e^{r(3/2 - s)} each
    double ratio = std::exp(p.r * (1.5 - s));
    total.add(last * ratio / (1 - ratio));
    return total.value();
}

double f_value(double z, double q) { return separable_sum({{1.0, 0, -1}}, z, q, 1, 1); }

namespace {

template <class Weight>
double jl_partial(double z, double q, int lmax, Weight weight) {
    const double s = z / 2.0;
    CompensatedSum total;
    for (int n = 0; n < lmax; ++n) {
        CompensatedSum row;
        for (int l2 = n + 1; l2 <= lmax; l2 += 2) {
            double term = weight(l2, n) * std::pow(1.0 + lambda_sq(l2, n, q), -s);
            row.add(term);
            if (l2 - n > 40 && term < 1e-19 * row.value()) break;
        }
        total.add(row.value());
    }
    return total.value();
}

}  // namespace

double f1_partial(double z, double q, int lmax) {
    // sum_i q^{2l-2i} = q^{2l} [2l+1]
    return jl_partial(z, q, lmax, [q](int l2, int) { return big_Q(q) * (1.0 / q - std::pow(q, 2 * l2 + 1)); });
}

double f2_partial(double z, double q, int lmax) {
    return jl_partial(z, q, lmax, [q](int l2, int n) { return (l2 + 1) * std::pow(q, l2 - n); });
}

CauchyResult cauchy_doubling(const std::function<double(int)>& partial, int lmax0, int lmax_limit, double tol) {
    CauchyResult out;
    for (int L = lmax0; L <= lmax_limit; L *= 2) {
        out.lmax.push_back(L);
        out.sums.push_back(partial(L));
        size_t k = out.sums.size();
        if (k >= 2 && std::fabs(out.sums[k - 1] - out.sums[k - 2]) < tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

double commutator_growth(int l2, double q) {
    // T(a) Dhat sends a bottom t_{ij} to q^{2j} b t_{ij}; |b t|^2 = q^2 <t, c*c t>
    double best = 0.0;
    for (int I = -l2; I <= l2; I += 2)
        for (int J = -l2; J <= l2; J += 2)
            best = std::max(best, std::pow(q, J + 1) * std::sqrt(cstarc_diag(l2, I, J, q)));
    return best;
}

double upsilon_direct_pw(double z, double q, int lmax) {
    check_z(z);
    const double s = z / 2.0;
    CompensatedSum total;
    for (int l2 = 1; l2 <= lmax; ++l2) {
        const int N = l2 + 1;
        Eigen::MatrixXd D = dirac_sector(l2, q);
        // Rows kept by the trace: top j >= 1/2 and bottom -1/2 <= j <= l-1.  They span an
        // invariant subspace; the rest carries entries of size q^{-2l} that would swamp
        // the solver's absolute precision.
        std::vector<int> rows;
        std::vector<double> wts;
        for (int k = 0; k < N; ++k) {
            int J = -l2 + 2 * k;
            if (J >= 1) rows.push_back(k), wts.push_back(-(J - 1));
        }
        for (int k = 0; k < N; ++k) {
            int J = -l2 + 2 * k;
            if (J >= -1 && J <= l2 - 2) rows.push_back(N + k), wts.push_back(-(J + 1));
        }
        if (rows.empty()) continue;
        const int n = static_cast<int>(rows.size());
        Eigen::MatrixXd sub(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) sub(a, b) = D(rows[a], rows[b]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
        Eigen::VectorXd f = (1.0 + es.eigenvalues().array().square()).pow(-s).matrix();
        Eigen::MatrixXd F = es.eigenvectors() * f.asDiagonal() * es.eigenvectors().transpose();
        for (int I = -l2; I <= l2; I += 2)
            for (int a = 0; a < n; ++a) total.add(std::pow(q, -I + wts[a]) * F(a, a));
    }
    return total.value();
}

}  // namespace suq2
