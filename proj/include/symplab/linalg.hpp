// Dense linear algebra helpers shared across modules (Eigen-backed).

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace symplab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline Matrix sym(const Matrix& m) { return 0.5 * (m + m.transpose()); }

// eigenvalues of a symmetric matrix, ascending
inline Vector sym_eigenvalues(const Matrix& s) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym(s), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline double min_eig_sym(const Matrix& s) { return sym_eigenvalues(s).minCoeff(); }

// f applied to the spectrum of a symmetric matrix
template <class F>
Matrix sym_apply(const Matrix& s, F&& f) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym(s));
    Vector l = es.eigenvalues();
    for (Eigen::Index i = 0; i < l.size(); ++i) l[i] = f(l[i]);
    return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().transpose();
}

inline Matrix spd_sqrt(const Matrix& s) {
    return sym_apply(s, [](double x) { return std::sqrt(x); });
}
inline Matrix spd_log(const Matrix& s) {
    return sym_apply(s, [](double x) { return std::log(x); });
}
inline Matrix sym_exp(const Matrix& s) {
    return sym_apply(s, [](double x) { return std::exp(x); });
}

// generalized eigenvalues of the pencil (A, B) with A symmetric, B SPD:
// spectrum of B^{-1}A, computed stably through a Cholesky congruence
inline Vector gen_eigenvalues_spd(const Matrix& a, const Matrix& b) {
    Eigen::LLT<Matrix> llt(sym(b));
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("gen_eigenvalues_spd: right factor not SPD");
    Matrix l = llt.matrixL();
    Matrix m = l.triangularView<Eigen::Lower>().solve(sym(a));
    m = l.triangularView<Eigen::Lower>().solve(m.transpose()).eval();
    return sym_eigenvalues(m);
}

// polar decomposition m = u * p with u orthogonal and p symmetric
// positive semidefinite; m must be invertible
struct Polar {
    Matrix u;
    Matrix p;
};

inline Polar polar_decompose(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues().minCoeff() <= 0)
        throw std::runtime_error("polar_decompose: singular input");
    Polar out;
    out.u = svd.matrixU() * svd.matrixV().transpose();
    out.p = svd.matrixV() * svd.singularValues().asDiagonal() *
            svd.matrixV().transpose();
    return out;
}

inline double smallest_singular_value(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().minCoeff();
}

// orthonormalize the columns of a full-column-rank matrix
inline Matrix orthonormalize(const Matrix& m) {
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
    return q;
}

// Nelder-Mead simplex descent (gradient-free; objectives here are cheap and
// piecewise smooth).  Returns the best point found.
template <class F>
Vector nelder_mead(F&& f, Vector x0, double step, int max_evals,
                   double ftol, double* fbest_out = nullptr) {
    const int n = static_cast<int>(x0.size());
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    std::vector<Vector> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (int i = 1; i <= n; ++i) xs[i][i - 1] += step;
    int evals = 0;
    for (int i = 0; i <= n; ++i) fs[i] = (++evals, f(xs[i]));
    std::vector<int> idx(n + 1);
    while (evals < max_evals) {
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        {
            std::vector<Vector> xs2(n + 1);
            std::vector<double> fs2(n + 1);
            for (int i = 0; i <= n; ++i) { xs2[i] = xs[idx[i]]; fs2[i] = fs[idx[i]]; }
            xs.swap(xs2);
            fs.swap(fs2);
        }
        if (fs[n] - fs[0] < ftol) break;
        Vector centroid = Vector::Zero(n);
        for (int i = 0; i < n; ++i) centroid += xs[i];
        centroid /= n;
        Vector xr = centroid + alpha * (centroid - xs[n]);
        double fr = (++evals, f(xr));
        if (fr < fs[0]) {
            Vector xe = centroid + gamma * (centroid - xs[n]);
            double fe = (++evals, f(xe));
            if (fe < fr) { xs[n] = xe; fs[n] = fe; }
            else { xs[n] = xr; fs[n] = fr; }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr; fs[n] = fr;
        } else {
            Vector xc = centroid + rho * (xs[n] - centroid);
            double fc = (++evals, f(xc));
            if (fc < fs[n]) { xs[n] = xc; fs[n] = fc; }
            else {
                for (int i = 1; i <= n; ++i) {
                    xs[i] = xs[0] + sigma * (xs[i] - xs[0]);
                    fs[i] = (++evals, f(xs[i]));
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (fs[i] < fs[best]) best = i;
    if (fbest_out) *fbest_out = fs[best];
    return xs[best];
}

}  // namespace symplab
