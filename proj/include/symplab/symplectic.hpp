// Sp(2n,R) geometry: the space of compatible complex structures with the
// operator-norm distance, Lagrangian subspaces, Maslov data of triples, the
// parallel-set model of positive definite forms with its causal cone order,
// and the unitary polar factor with its complex determinant.
//
// Conventions.  The symplectic form is <u,v> = u^T Omega v with
// Omega = [[0, I], [-I, 0]].  A compatible structure J satisfies J^2 = -I
// with Q_J := Omega J symmetric positive definite; the base point is
// J0 = Omega^T (so Q_{J0} = I).  For a transverse Lagrangian frame the
// parallel set is coordinatized by SPD matrices Z with Q = diag(Z, Z^{-1}).

#pragma once

#include "symplab/config.hpp"
#include "symplab/linalg.hpp"
#include "symplab/rng.hpp"

#include <complex>
#include <vector>

namespace symplab::sp {

Matrix standard_form(int n);  // Omega
Matrix standard_j(int n);     // J0 = Omega^T, Q = I

bool is_symplectic(const Matrix& m, double tol = 1e-9);

struct CompatibleJ {
    Matrix j;
    int n = 0;

    Matrix q() const;  // Omega * j, symmetric positive definite
};

// validate and wrap; throws on invariant violation
CompatibleJ make_compatible_j(const Matrix& j, const Tolerances& tol = {});

// the action g(J) = g^-1 J g from the ambient group (a right action);
// revalidates the result
CompatibleJ act_on_j(const Matrix& g, const CompatibleJ& j,
                     const Tolerances& tol = {});
// covariant left action g . J = g J g^-1 (used by equivariance statements)
CompatibleJ conj_j(const Matrix& g, const CompatibleJ& j,
                   const Tolerances& tol = {});

// |log ||Id||_{J1,J2}| + |log ||Id||_{J2,J1}| via the relative spectrum of
// the two metric Gram matrices
double d_sp(const CompatibleJ& j1, const CompatibleJ& j2);

struct Lagrangian {
    Matrix basis;  // 2n x n, orthonormal columns
    int n = 0;
};

bool is_lagrangian(const Matrix& basis, double isotropy_tol = 1e-9,
                   double rank_tol = 1e-10);
Lagrangian make_lagrangian(const Matrix& basis, const Tolerances& tol = {});
bool transverse(const Lagrangian& a, const Lagrangian& b, double tol = 1e-8);
// principal-angle distance, 0 iff equal subspaces
double lagrangian_distance(const Lagrangian& a, const Lagrangian& b);
Lagrangian apply(const Matrix& g, const Lagrangian& l, const Tolerances& tol = {});

Lagrangian standard_l_minus(int n);  // span(e_1..e_n)
Lagrangian standard_l_plus(int n);   // span(e_{n+1}..e_{2n})

// L0 = graph(T^-): x + T^- x for x in L-, and dually T^+; the matrices are
// expressed in the stored orthonormal bases of the frame
struct GraphMaps {
    Matrix t_minus;  // L- -> L+
    Matrix t_plus;   // L+ -> L-
};
GraphMaps graph_map(const Lagrangian& lminus, const Lagrangian& lplus,
                    const Lagrangian& l0, double transversality_tol = 1e-8);

// complex structure candidate of a pairwise transverse triple
Matrix triple_j(const Lagrangian& lminus, const Lagrangian& l0,
                const Lagrangian& lplus, double transversality_tol = 1e-8);

struct TripleVerdict {
    bool maximal = false;
    int signature = 0;  // signature of <., J_{L0} .>, in {-2n..2n}
};
TripleVerdict is_maximal_triple(const Lagrangian& lminus, const Lagrangian& l0,
                                const Lagrangian& lplus,
                                double transversality_tol = 1e-8);

// symplectic frame adapted to a transverse Lagrangian pair:
// F = [F_- | F_+'] with F^T Omega F = Omega
struct YFrame {
    Lagrangian lminus, lplus;
    Matrix f;      // 2n x 2n symplectic
    Matrix f_inv;
    int n = 0;
};
YFrame make_frame(const Lagrangian& lminus, const Lagrangian& lplus,
                  double transversality_tol = 1e-8);
YFrame standard_frame(int n);

struct PosDefForm {
    Matrix z;  // n x n SPD
    int n = 0;
};
PosDefForm make_posdef(const Matrix& z, const Tolerances& tol = {});

CompatibleJ y_embed(const PosDefForm& z, const YFrame& frame,
                    const Tolerances& tol = {});
// throws if J does not exchange the frame Lagrangians (off-block mass)
PosDefForm y_project(const CompatibleJ& j, const YFrame& frame,
                     const Tolerances& tol = {});

// Thompson-type closed form of d_sp restricted to the parallel set:
// log max(lmax(Z^-1 Z'), lmax(Z'^-1 Z))
double d_y(const PosDefForm& a, const PosDefForm& b);
// the evaluation used in the causal-curve argument:
// |log lmax| + |log lmin| of Z^-1 Z'
double d_proof(const PosDefForm& a, const PosDefForm& b);

bool in_cone(const PosDefForm& z, const PosDefForm& zprime,
             double margin = 1e-12);

struct CausalCurve {
    std::vector<PosDefForm> samples;  // piecewise linear between samples
};
CausalCurve make_causal_curve(std::vector<PosDefForm> samples,
                              double margin = 1e-12);

enum class YMetric { literal, proof };

// length as the supremum over dyadic refinements (monotone, adaptive up to
// `max_depth`); refinement stops early once the increment passes below
// `rel_tol` times the current value
double causal_length(const CausalCurve& f, YMetric metric, int max_depth = 10,
                     double rel_tol = 1e-12);

struct CausalBoundReport {
    double length_literal = 0, bound_literal = 0, margin_literal = 0;
    double length_proof = 0, bound_proof = 0, margin_proof = 0;
    bool pass = false;
};
// margin = n * d(f(0), f(1)) - length, required >= -1e-9 under both metrics
CausalBoundReport check_causal_bound(const CausalCurve& f, int max_depth = 10);

// orthogonal polar factor (automatically symplectic for symplectic input)
// and the determinant of its unitary form on the +i eigenspace of J0
struct UnitaryPart {
    Matrix u;                     // 2n x 2n orthogonal symplectic
    std::complex<double> det_c;   // |det_c| = 1
};
UnitaryPart unitary_part(const Matrix& g);

// complex form of an orthogonal symplectic matrix (blocks [[X,-Y],[Y,X]])
Eigen::MatrixXcd complexify(const Matrix& u);
Matrix realify(const Eigen::MatrixXcd& u);

// unconstrained parameterization of the compatible structures:
// params in R^{n(n+1)} -> S = [[P,Q],[Q,-P]] -> J = -Omega exp(S)
Matrix j_from_params(const Vector& params, int n);
Vector params_from_j(const CompatibleJ& j);

// random draws for property suites
Matrix random_symplectic(Rng& rng, int n, double scale = 0.5);
PosDefForm random_posdef(Rng& rng, int n, double scale = 1.0);

}  // namespace symplab::sp
