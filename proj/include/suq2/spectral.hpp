#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace suq2 {

class NonConvergence : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
    double sum = 0.0, comp = 0.0;
    void add(double x);
    double value() const { return sum + comp; }
};

// [x]_q for real x, argument passed doubled.
double q_bracket(int twice_x, double q);
double big_Q(double q);  // 1/(q^-1 - q)

// lambda_{l,n} with l2 = 2l; requires |n| <= l2 + 1.
double lambda_eigen(int l2, int n, double q);
double lambda_sq(int l2, int n, double q);
// {0, 2, ..., 2l-1} for half-odd l, {1, 3, ..., 2l-1} for integer l.
std::vector<int> J_set(int l2);

struct SpectralGrid {
    double q;
    int lmax;  // largest 2l kept
    std::vector<std::vector<double>> lambda2;  // [l2][k] for n = J_set(l2)[k]

    SpectralGrid(double q, int lmax);
    // eigenvalues q^{2j}, q^{2i}, q^{2i+2j}, weights doubled
    double delta_L(int J) const;
    double delta_R(int I) const;
    double delta_F(int I, int J) const;
};

// Closed-form Dirac sector (l, i): same row layout as dirac_sector_exact.
Eigen::MatrixXd dirac_sector(int l2, double q);
// Expected sector spectrum, sorted ascending.
std::vector<double> dirac_expected_spectrum(int l2, double q);
// C^l_{j,+-}: ratio of bottom (t_{j-1}) to top (t_j) component.
double C_ratio(int l2, int J, int sign, double q);

struct DiracCheck {
    double max_eig_err = 0.0, max_ratio_err = 0.0, max_asym = 0.0;
};
// Diagonalize a sector matrix and compare with the closed forms.
DiracCheck check_dirac_sector(const Eigen::MatrixXd& D, int l2, double q);

// Clebsch-Gordan closed forms for left multiplication by c, and the c*c diagonal.
double cg_c_plus(int l2, int I, int J, double q);
double cg_c_minus(int l2, int I, int J, double q);
double cstarc_diag(int l2, int I, int J, double q);

enum class Slot { top, bottom };

// Summand weight q^{alpha n + beta m} (m = 2l - n) after summing over i and both slots.
struct SeparableTerm {
    double coeff;
    int alpha, beta;
};

struct OmegaSpec {
    std::string tag;
    std::function<double(int l2, int I, int n, Slot slot, double q)> g;
    // empty when the spec has no closed separable form
    std::function<std::vector<SeparableTerm>(double q)> separable;
    // optional closed form of sum_i q^{-2i-n} (g_+ + g_-); must agree with g
    std::function<double(int l2, int n, double q)> summed = nullptr;
};

OmegaSpec omega_gamma();
OmegaSpec omega_deltaL2_e11();
OmegaSpec omega_deltaL2_e22();
OmegaSpec omega_deltaL2();
OmegaSpec omega_cstarc();
OmegaSpec omega_identity();
OmegaSpec omega_from_tag(const std::string& tag);
std::vector<std::string> omega_tags();

struct UpsilonRow {
    std::string tag;
    double q, z;
    int lmax;
    double partial_sum, tail_bound;
};

// Truncated trace sums for each z; rejects z <= 2.
std::vector<UpsilonRow> upsilon_scan(const OmegaSpec& omega, const std::vector<double>& zs, const SpectralGrid& grid);
// Partial sums indexed by the cutoff 2l = 1..lmax.
std::vector<double> upsilon_partial_sums(const OmegaSpec& omega, double z, const SpectralGrid& grid);
// Full (untruncated) value for a separable spec; m runs over m0, m0+step, ...
double separable_sum(const std::vector<SeparableTerm>& terms, double z, double q, int m0, int step);

struct ResidueReport {
    std::string omega, method;
    double q = 0, estimate = 0, error_bar = 0, least_squares = 0, max_tail = 0;
    int lmax = 0;
    bool converged = true;
    bool tail_ok = true;  // direct sums: every remainder estimate below 1e-6 of its sum
    std::vector<double> eps, values;  // values are (z-3) * Upsilon_z
    nlohmann::json to_json() const;
};

inline const std::vector<double> default_eps_schedule{0.4, 0.2, 0.1, 0.05};
// the default schedule continued by two more halvings
inline const std::vector<double> refined_eps_schedule{0.4, 0.2, 0.1, 0.05, 0.025, 0.0125};

// Richardson extrapolation to 0 of samples taken at decreasing eps; returns the
// final diagonal entries of the Neville table.
std::vector<double> richardson_diagonal(const std::vector<double>& eps, const std::vector<double>& values);
// c_{-1} of the least-squares fit c_{-1}/eps + c_0 + c_1 eps to values/eps.
double laurent_fit_residue(const std::vector<double>& eps, const std::vector<double>& scaled);

ResidueReport residue_extract(const OmegaSpec& omega, double q, const std::vector<double>& eps = default_eps_schedule,
                              int lmax_cap = 400);

double residue_R(double q);          // 4(q^-1 - q)/ln q^-1
double residue_f_expected(double q);  // 4 q Q^-2 / ln q^-1

// Meromorphic references.
struct HParams {
    double x, y, r;
    int w;
};
struct HValue {
    double closed, err_bound;
};
HValue h_closed(const HParams& p, double z);
double h_direct(const HParams& p, double z);
double f_value(double z, double q);

struct CauchyResult {
    std::vector<int> lmax;
    std::vector<double> sums;
    bool converged = false;
};
double f1_partial(double z, double q, int lmax);
double f2_partial(double z, double q, int lmax);
CauchyResult cauchy_doubling(const std::function<double(int)>& partial, int lmax0, int lmax_limit, double tol);

// Norm of T(a) Dhat applied to the unit vectors of sector l (bottom slot), maximised over i, j.
double commutator_growth(int l2, double q);

// Identity-weight trace at z computed from per-sector eigendecompositions,
// for comparison with the reparameterized trace formula.
double upsilon_direct_pw(double z, double q, int lmax);

}  // namespace suq2
