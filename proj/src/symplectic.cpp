#include "symplab/symplectic.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace symplab::sp {

Matrix standard_form(int n) {
    Matrix omega = Matrix::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Matrix::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
    return omega;
}

Matrix standard_j(int n) { return standard_form(n).transpose(); }

bool is_symplectic(const Matrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0)
        throw std::invalid_argument("matrix must be square of even dimension");
    const int n = static_cast<int>(m.rows()) / 2;
    const Matrix omega = standard_form(n);
    return max_abs(m.transpose() * omega * m - omega) <= tol;
}

Matrix CompatibleJ::q() const { return standard_form(n) * j; }

CompatibleJ make_compatible_j(const Matrix& j, const Tolerances& tol) {
    if (j.rows() != j.cols() || j.rows() % 2 != 0)
        throw std::invalid_argument("J must be square of even dimension");
    const int n = static_cast<int>(j.rows()) / 2;
    CompatibleJ out{j, n};
    // structures far from the base point have large entries; the residual
    // checks scale with the roundoff their products carry
    const double scale = std::max(1.0, max_abs(j));
    if (max_abs(j * j + Matrix::Identity(2 * n, 2 * n)) >
        tol.j_square * scale * scale)
        throw std::invalid_argument("J^2 != -I beyond tolerance");
    const Matrix q = out.q();
    if (max_abs(q - q.transpose()) > tol.q_symmetry * scale)
        throw std::invalid_argument("<.,J.> is not symmetric beyond tolerance");
    if (min_eig_sym(q) <= tol.posdef_min_eig)
        throw std::invalid_argument("<.,J.> is not positive definite");
    return out;
}

CompatibleJ act_on_j(const Matrix& g, const CompatibleJ& j, const Tolerances& tol) {
    if (g.rows() != 2 * j.n) throw std::invalid_argument("dimension mismatch");
    Eigen::PartialPivLU<Matrix> lu(g);
    return make_compatible_j(lu.solve(j.j * g), tol);
}

CompatibleJ conj_j(const Matrix& g, const CompatibleJ& j, const Tolerances& tol) {
    if (g.rows() != 2 * j.n) throw std::invalid_argument("dimension mismatch");
    Eigen::PartialPivLU<Matrix> lu(g.transpose());
    return make_compatible_j(lu.solve((g * j.j).transpose()).transpose(), tol);
}

double d_sp(const CompatibleJ& j1, const CompatibleJ& j2) {
    if (j1.n != j2.n) throw std::invalid_argument("dimension mismatch");
    // |log ||Id||_{J1,J2}| + |log ||Id||_{J2,J1}| over the Gram pencil.  The
    // Gram matrices are symplectic, so the relative spectrum pairs as
    // (l, 1/l) and the sum of half-logs equals log lmax; evaluating at the
    // dominant end keeps full relative accuracy for distant structures.
    const Vector lam = gen_eigenvalues_spd(j2.q(), j1.q());
    return std::log(lam.maxCoeff());
}

bool is_lagrangian(const Matrix& basis, double isotropy_tol, double rank_tol) {
    if (basis.rows() != 2 * basis.cols())
        throw std::invalid_argument("Lagrangian basis must be 2n x n");
    const int n = static_cast<int>(basis.cols());
    if (smallest_singular_value(basis) <= rank_tol) return false;
    const Matrix iso = basis.transpose() * standard_form(n) * basis;
    return max_abs(iso) <= isotropy_tol;
}

Lagrangian make_lagrangian(const Matrix& basis, const Tolerances& tol) {
    if (basis.rows() != 2 * basis.cols())
        throw std::invalid_argument("Lagrangian basis must be 2n x n");
    if (smallest_singular_value(basis) <= tol.lagrangian_rank)
        throw std::invalid_argument("Lagrangian basis is rank deficient");
    Lagrangian l{orthonormalize(basis), static_cast<int>(basis.cols())};
    const Matrix iso = l.basis.transpose() * standard_form(l.n) * l.basis;
    if (max_abs(iso) > tol.lagrangian_isotropy)
        throw std::invalid_argument("basis does not span an isotropic subspace");
    return l;
}

bool transverse(const Lagrangian& a, const Lagrangian& b, double tol) {
    if (a.n != b.n) throw std::invalid_argument("dimension mismatch");
    Matrix stacked(2 * a.n, 2 * a.n);
    stacked << a.basis, b.basis;
    return smallest_singular_value(stacked) > tol;
}

double lagrangian_distance(const Lagrangian& a, const Lagrangian& b) {
    return max_abs(a.basis * a.basis.transpose() - b.basis * b.basis.transpose());
}

Lagrangian apply(const Matrix& g, const Lagrangian& l, const Tolerances& tol) {
    return make_lagrangian(g * l.basis, tol);
}

Lagrangian standard_l_minus(int n) {
    Matrix b = Matrix::Zero(2 * n, n);
    b.topRows(n) = Matrix::Identity(n, n);
    return {b, n};
}

Lagrangian standard_l_plus(int n) {
    Matrix b = Matrix::Zero(2 * n, n);
    b.bottomRows(n) = Matrix::Identity(n, n);
    return {b, n};
}

GraphMaps graph_map(const Lagrangian& lminus, const Lagrangian& lplus,
                    const Lagrangian& l0, double transversality_tol) {
    const int n = lminus.n;
    if (lplus.n != n || l0.n != n) throw std::invalid_argument("dimension mismatch");
    if (!transverse(lminus, l0, transversality_tol) ||
        !transverse(lplus, l0, transversality_tol) ||
        !transverse(lminus, lplus, transversality_tol))
        throw std::invalid_argument("triple is not pairwise transverse");
    // write each basis vector of L0 as xi + eta in the frame [L-|L+]
    Matrix frame(2 * n, 2 * n);
    frame << lminus.basis, lplus.basis;
    const Matrix coords = frame.partialPivLu().solve(l0.basis);  // 2n x n
    const Matrix xi = coords.topRows(n);
    const Matrix eta = coords.bottomRows(n);
    // L0 = {xi c + eta c}: T^- maps (xi c) to (eta c)
    GraphMaps maps;
    maps.t_minus = eta * xi.inverse();
    maps.t_plus = xi * eta.inverse();
    return maps;
}

Matrix triple_j(const Lagrangian& lminus, const Lagrangian& l0,
                const Lagrangian& lplus, double transversality_tol) {
    const int n = lminus.n;
    const GraphMaps maps = graph_map(lminus, lplus, l0, transversality_tol);
    Matrix jf = Matrix::Zero(2 * n, 2 * n);
    jf.topRightCorner(n, n) = -maps.t_plus;
    jf.bottomLeftCorner(n, n) = maps.t_minus;
    Matrix frame(2 * n, 2 * n);
    frame << lminus.basis, lplus.basis;
    return frame * jf * frame.partialPivLu().inverse();
}

TripleVerdict is_maximal_triple(const Lagrangian& lminus, const Lagrangian& l0,
                                const Lagrangian& lplus,
                                double transversality_tol) {
    const Matrix j = triple_j(lminus, l0, lplus, transversality_tol);
    const Matrix q = standard_form(lminus.n) * j;
    const Vector eig = sym_eigenvalues(q);
    int pos = 0, neg = 0;
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
        if (eig[i] > 0) ++pos;
        if (eig[i] < 0) ++neg;
    }
    TripleVerdict verdict;
    verdict.signature = pos - neg;
    verdict.maximal = (verdict.signature == 2 * lminus.n);
    return verdict;
}

YFrame make_frame(const Lagrangian& lminus, const Lagrangian& lplus,
                  double transversality_tol) {
    const int n = lminus.n;
    if (lplus.n != n) throw std::invalid_argument("dimension mismatch");
    if (!transverse(lminus, lplus, transversality_tol))
        throw std::invalid_argument("frame Lagrangians are not transverse");
    const Matrix omega = standard_form(n);
    const Matrix gram = lminus.basis.transpose() * omega * lplus.basis;
    YFrame fr;
    fr.lminus = lminus;
    fr.lplus = lplus;
    fr.n = n;
    fr.f = Matrix(2 * n, 2 * n);
    fr.f << lminus.basis, lplus.basis * gram.inverse();
    fr.f_inv = fr.f.partialPivLu().inverse();
    return fr;
}

YFrame standard_frame(int n) {
    return make_frame(standard_l_minus(n), standard_l_plus(n));
}

PosDefForm make_posdef(const Matrix& z, const Tolerances& tol) {
    if (z.rows() != z.cols()) throw std::invalid_argument("Z must be square");
    if (max_abs(z - z.transpose()) > 1e-10)
        throw std::invalid_argument("Z is not symmetric");
    if (min_eig_sym(z) <= tol.posdef_min_eig)
        throw std::invalid_argument("Z is not positive definite");
    return {sym(z), static_cast<int>(z.rows())};
}

CompatibleJ y_embed(const PosDefForm& z, const YFrame& frame, const Tolerances& tol) {
    const int n = frame.n;
    if (z.n != n) throw std::invalid_argument("dimension mismatch");
    Matrix jf = Matrix::Zero(2 * n, 2 * n);
    jf.topRightCorner(n, n) = -z.z.inverse();
    jf.bottomLeftCorner(n, n) = z.z;
    return make_compatible_j(frame.f * jf * frame.f_inv, tol);
}

PosDefForm y_project(const CompatibleJ& j, const YFrame& frame, const Tolerances& tol) {
    const int n = frame.n;
    if (j.n != n) throw std::invalid_argument("dimension mismatch");
    const Matrix jf = frame.f_inv * j.j * frame.f;
    const double offmass = std::max(max_abs(jf.topLeftCorner(n, n)),
                                    max_abs(jf.bottomRightCorner(n, n)));
    if (offmass > tol.y_offblock * std::max(1.0, max_abs(jf)))
        throw std::invalid_argument("J does not exchange the frame Lagrangians");
    return make_posdef(sym(jf.bottomLeftCorner(n, n)), tol);
}

double d_y(const PosDefForm& a, const PosDefForm& b) {
    if (a.n != b.n) throw std::invalid_argument("dimension mismatch");
    const Vector lam = gen_eigenvalues_spd(b.z, a.z);  // spectrum of Z^-1 Z'
    return std::max(std::log(lam.maxCoeff()), -std::log(lam.minCoeff()));
}

double d_proof(const PosDefForm& a, const PosDefForm& b) {
    if (a.n != b.n) throw std::invalid_argument("dimension mismatch");
    const Vector lam = gen_eigenvalues_spd(b.z, a.z);
    return std::abs(std::log(lam.maxCoeff())) + std::abs(std::log(lam.minCoeff()));
}

bool in_cone(const PosDefForm& z, const PosDefForm& zprime, double margin) {
    if (z.n != zprime.n) throw std::invalid_argument("dimension mismatch");
    return min_eig_sym(zprime.z - z.z) > margin;
}

CausalCurve make_causal_curve(std::vector<PosDefForm> samples, double margin) {
    if (samples.size() < 2)
        throw std::invalid_argument("causal curve needs at least two samples");
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        if (!in_cone(samples[i], samples[i + 1], margin))
            throw std::invalid_argument("consecutive samples violate the cone order");
    return {std::move(samples)};
}

namespace {

double polyline_length(const CausalCurve& f, YMetric metric, int pieces_per_leg) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < f.samples.size(); ++i) {
        const Matrix& z0 = f.samples[i].z;
        const Matrix& z1 = f.samples[i + 1].z;
        PosDefForm prev = f.samples[i];
        for (int k = 1; k <= pieces_per_leg; ++k) {
            const double t = static_cast<double>(k) / pieces_per_leg;
            PosDefForm cur{(1.0 - t) * z0 + t * z1, prev.n};
            total += metric == YMetric::literal ? d_y(prev, cur) : d_proof(prev, cur);
            prev = cur;
        }
    }
    return total;
}

}  // namespace

double causal_length(const CausalCurve& f, YMetric metric, int max_depth,
                     double rel_tol) {
    double prev = polyline_length(f, metric, 1);
    double sup = prev;
    for (int depth = 1; depth <= max_depth; ++depth) {
        const double cur = polyline_length(f, metric, 1 << depth);
        // the literal convention is a metric, so refinement cannot shrink
        // the sum; the proof convention has no triangle inequality and we
        // simply track the supremum
        if (metric == YMetric::literal && cur < prev - 1e-9 * (1.0 + prev))
            throw std::logic_error("causal_length: refinement decreased the sum");
        sup = std::max(sup, cur);
        if (std::abs(cur - prev) <= rel_tol * (1.0 + std::abs(cur))) break;
        prev = cur;
    }
    return sup;
}

CausalBoundReport check_causal_bound(const CausalCurve& f, int max_depth) {
    const int n = f.samples.front().n;
    CausalBoundReport r;
    r.length_literal = causal_length(f, YMetric::literal, max_depth);
    r.bound_literal = n * d_y(f.samples.front(), f.samples.back());
    r.margin_literal = r.bound_literal - r.length_literal;
    r.length_proof = causal_length(f, YMetric::proof, max_depth);
    r.bound_proof = n * d_proof(f.samples.front(), f.samples.back());
    r.margin_proof = r.bound_proof - r.length_proof;
    r.pass = r.margin_literal >= -1e-9 && r.margin_proof >= -1e-9;
    return r;
}

Eigen::MatrixXcd complexify(const Matrix& u) {
    const int n = static_cast<int>(u.rows()) / 2;
    const Matrix x = u.topLeftCorner(n, n);
    const Matrix y = u.bottomLeftCorner(n, n);
    if (max_abs(u.topRightCorner(n, n) + y) > 1e-8 ||
        max_abs(u.bottomRightCorner(n, n) - x) > 1e-8)
        throw std::invalid_argument("matrix does not commute with J0");
    return x.cast<std::complex<double>>() +
           std::complex<double>(0, 1) * y.cast<std::complex<double>>();
}

Matrix realify(const Eigen::MatrixXcd& u) {
    const int n = static_cast<int>(u.rows());
    Matrix out(2 * n, 2 * n);
    out.topLeftCorner(n, n) = u.real();
    out.topRightCorner(n, n) = -u.imag();
    out.bottomLeftCorner(n, n) = u.imag();
    out.bottomRightCorner(n, n) = u.real();
    return out;
}

UnitaryPart unitary_part(const Matrix& g) {
    const Polar polar = polar_decompose(g);
    UnitaryPart out;
    out.u = polar.u;
    const Eigen::MatrixXcd uc = complexify(out.u);
    out.det_c = uc.determinant();
    if (std::abs(std::abs(out.det_c) - 1.0) > 1e-9)
        throw std::logic_error("unitary determinant drifted off the circle");
    return out;
}

Matrix j_from_params(const Vector& params, int n) {
    const int m = n * (n + 1) / 2;
    if (params.size() != 2 * m)
        throw std::invalid_argument("expected n(n+1) parameters");
    Matrix p = Matrix::Zero(n, n), q = Matrix::Zero(n, n);
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            p(i, j) = p(j, i) = params[idx];
            q(i, j) = q(j, i) = params[m + idx];
            ++idx;
        }
    Matrix s(2 * n, 2 * n);
    s << p, q, q, -p;
    return -standard_form(n) * sym_exp(s);
}

Vector params_from_j(const CompatibleJ& j) {
    const int n = j.n;
    const Matrix s = spd_log(j.q());
    const int m = n * (n + 1) / 2;
    Vector params(2 * m);
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int jj = i; jj < n; ++jj) {
            params[idx] = 0.5 * (s(i, jj) - s(n + i, n + jj));
            params[m + idx] = 0.5 * (s(i, n + jj) + s(jj, n + i));
            ++idx;
        }
    return params;
}

Matrix random_symplectic(Rng& rng, int n, double scale) {
    Matrix h(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
        for (int j = i; j < 2 * n; ++j) h(i, j) = h(j, i) = scale * rng.gaussian();
    const Matrix xi = -standard_form(n) * h;  // element of sp(2n)
    return xi.exp();
}

PosDefForm random_posdef(Rng& rng, int n, double scale) {
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = scale * rng.gaussian();
    Matrix z = a * a.transpose() + 0.05 * Matrix::Identity(n, n);
    return {sym(z), n};
}

}  // namespace symplab::sp
