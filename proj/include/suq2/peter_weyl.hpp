#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "suq2/algebra.hpp"

namespace suq2 {

// t^l_{ij} = sqrt(rho) * u with u a polynomial and rho in Q(v).
// Spins and weights are stored doubled: l2 = 2l, I = 2i, J = 2j.
struct PWVector {
    int l2 = 0, I = 0, J = 0;
    Element u;
    Scalar rho;
};

class CutoffTooLarge : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

// q^{-2i} [2l+1]^{-1}, the squared norm of t^l_{ij}.
Scalar pw_norm_formula(int l2, int I);

// All 2l+1 x 2l+1 vectors of spin l: u_{i,-l} = a^{l-i} c^{l+i}, then u_{i,j+1} = e |> u_{ij}.
std::vector<PWVector> pw_ladder(int l2);

struct PWBasisBlock {
    int I = 0, J = 0;
    std::vector<PWVector> vectors;  // increasing l
};

std::map<std::pair<int, int>, PWBasisBlock> pw_orthobasis(int l2max);

// Lowest-degree monomial of weight (I, J); the block is spanned by base * (bc)^k.
Monomial weight_block_base(int I, int J);
// Exact Gram-Schmidt over base * (bc)^k, k < count.
std::vector<Element> gram_schmidt_block(int I, int J, int count);

// The scalar c with x = c * y, if there is one.
std::optional<Scalar> proportionality(const Element& x, const Element& y);

struct PWOracleReport {
    int blocks = 0, vectors = 0;
    bool orthogonal = true, proportional = true, norms = true;
    bool ok() const { return orthogonal && proportional && norms; }
};
PWOracleReport verify_pw_oracle(int l2max);

// Left multiplication by x in the t-basis: entry (t', t) = <t', x t>/<t', t'>.
struct MultOpMatrix {
    std::vector<PWVector> basis;
    Eigen::MatrixXd m;
    std::vector<bool> edge;  // column may leave the cutoff
};
MultOpMatrix mult_op_matrix(const Element& x, int l2max, double q);

// Sector (l, i) of the Dirac operator on the doubled space, assembled from the
// e and f actions on the Peter-Weyl vectors.  Rows: top j = -l..l, then bottom.
Eigen::MatrixXd dirac_sector_exact(int l2, int I, double q);

}  // namespace suq2
