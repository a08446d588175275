#include "symplab/maxreps.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace symplab::reps {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// The relator loop winds through pi_1(Sp(2n,R)) in half-Toledo units: the
// n = 1 Fuchsian loop closes in Sp(2,R) after winding g-1 times, while its
// Toledo invariant is 2g-2.  The factor and sign are calibrated so that the
// octagon hyperbolization at n = 1 comes out at +2 (positive Teichmueller
// side) and the Milnor-Wood maximum is n(2g-2).
constexpr double kWindingToToledo = -2.0;

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// matrix of the symmetric-power action on binary forms of degree k = 2n-1,
// monomial basis x^{k-i} y^i; a homomorphism SL(2,R) -> GL(k+1,R)
Matrix sym_power(const hyp::Mat2& m, int k) {
    const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    Matrix phi = Matrix::Zero(k + 1, k + 1);
    for (int j = 0; j <= k; ++j) {
        // (a x + c y)^{k-j} (b x + d y)^j, coefficients by x-degree t
        for (int t = 0; t <= k; ++t) {
            double sum = 0.0;
            for (int r = std::max(0, t - j); r <= std::min(k - j, t); ++r) {
                const int s = t - r;
                sum += binom(k - j, r) * std::pow(a, r) * std::pow(c, k - j - r) *
                       binom(j, s) * std::pow(b, s) * std::pow(d, j - s);
            }
            phi(k - t, j) = sum;  // row index i has x-degree k - i
        }
    }
    return phi;
}

// change of basis from the symplectic frame to the monomial basis; the
// invariant pairing is <m_i, m_{k-i}> = (-1)^i / C(k,i), taken with scale
// (-1)^{n-1}.  With the positive scale the Toledo invariant of a composed
// representation alternates as (-1)^{n-1} 2n(g-1); the parity-dependent
// scale keeps it positive for every n and reduces to the identity at n = 1.
Matrix irr_basis(int n) {
    const int k = 2 * n - 1;
    const double parity = (n % 2 == 1) ? 1.0 : -1.0;
    Matrix c = Matrix::Zero(k + 1, k + 1);
    for (int i = 0; i < n; ++i) {
        const double scale = std::sqrt(binom(k, i));
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        c(i, i) = scale;                         // f_i = sqrt(C) m_i
        c(k - i, n + i) = parity * sign * scale; // f_{n+i} = +-(-1)^i sqrt(C) m_{k-i}
    }
    return c;
}

Matrix irr_apply(const hyp::Mat2& m, int n) {
    const Matrix c = irr_basis(n);
    return c.partialPivLu().solve(sym_power(m, 2 * n - 1) * c);
}

// coefficient vector (by x-degree 0..deg) of a product of linear forms
std::vector<double> poly_pow_product(double p1, double p0, int pexp,
                                     double q1, double q0, int qexp) {
    // (p1 x + p0 y)^pexp * (q1 x + q0 y)^qexp
    std::vector<double> acc{1.0};
    auto mul_linear = [&acc](double hi, double lo) {
        std::vector<double> next(acc.size() + 1, 0.0);
        for (std::size_t t = 0; t < acc.size(); ++t) {
            next[t] += acc[t] * lo;
            next[t + 1] += acc[t] * hi;
        }
        acc.swap(next);
    };
    for (int i = 0; i < pexp; ++i) mul_linear(p1, p0);
    for (int i = 0; i < qexp; ++i) mul_linear(q1, q0);
    return acc;
}

}  // namespace

std::string construction_name(Construction c) {
    switch (c) {
        case Construction::diagonal: return "diagonal";
        case Construction::irreducible: return "irreducible";
        case Construction::user: return "user";
    }
    return "?";
}

Matrix Embedding::apply(const hyp::Mat2& m) const {
    if (kind == Construction::irreducible) return irr_apply(m, n);
    Matrix out = Matrix::Zero(2 * n, 2 * n);
    out.topLeftCorner(n, n) = m(0, 0) * Matrix::Identity(n, n);
    out.topRightCorner(n, n) = m(0, 1) * Matrix::Identity(n, n);
    out.bottomLeftCorner(n, n) = m(1, 0) * Matrix::Identity(n, n);
    out.bottomRightCorner(n, n) = m(1, 1) * Matrix::Identity(n, n);
    return out;
}

sp::Lagrangian Embedding::boundary_lagrangian(const hyp::BoundaryPoint& x) const {
    const double v1 = x.infinite ? 1.0 : x.value;
    const double v2 = x.infinite ? 0.0 : 1.0;
    if (kind == Construction::diagonal) {
        Matrix b = Matrix::Zero(2 * n, n);
        for (int j = 0; j < n; ++j) {
            b(j, j) = v1;
            b(n + j, j) = v2;
        }
        return sp::make_lagrangian(b);
    }
    // osculating span of the symmetric-power curve at the line (v1, v2)
    const int k = 2 * n - 1;
    const bool use_y = std::abs(v1) >= std::abs(v2);  // q independent of p_v
    const double q1 = use_y ? 0.0 : 1.0;
    const double q0 = use_y ? 1.0 : 0.0;
    Matrix cols = Matrix::Zero(k + 1, n);
    for (int j = 0; j < n; ++j) {
        const auto coeffs = poly_pow_product(v1, v2, k - j, q1, q0, j);
        for (int i = 0; i <= k; ++i) cols(i, j) = coeffs[k - i];  // m_i has x-degree k-i
    }
    const Matrix c = irr_basis(n);
    return sp::make_lagrangian(c.partialPivLu().solve(cols));
}

Embedding diagonal_embedding(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return {n, Construction::diagonal};
}

Embedding irreducible_embedding(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return {n, Construction::irreducible};
}

double MaximalRep::relator_residual() const {
    const Matrix id = Matrix::Identity(2 * n, 2 * n);
    return max_abs(evaluate(*this, words::Presentation(genus).relator()) - id);
}

Matrix evaluate(const MaximalRep& rho, const words::Word& w) {
    if (w.genus != rho.genus)
        throw std::invalid_argument("word genus does not match representation");
    Matrix prod = Matrix::Identity(2 * rho.n, 2 * rho.n);
    for (words::Letter l : w.letters) {
        const Matrix& g = rho.image(std::abs(l));
        if (l > 0)
            prod = prod * g;
        else
            prod = prod * g.partialPivLu().inverse();
    }
    return prod;
}

MaximalRep compose_rep(const hyp::Hyperbolization& h, const Embedding& e,
                       const Config& cfg) {
    MaximalRep rho;
    rho.genus = h.genus;
    rho.n = e.n;
    rho.construction = e.kind;
    rho.base_hyperbolization = h;
    for (const auto& m : h.images) {
        Matrix img = e.apply(m);
        if (!sp::is_symplectic(img, cfg.tol.symplectic))
            throw std::runtime_error("embedding image failed the symplectic check");
        rho.images.push_back(std::move(img));
    }
    if (rho.relator_residual() > cfg.tol.relator_residual_rep)
        throw std::runtime_error("relator residual too large after composition");
    rho.toledo_cache = toledo(rho, cfg);
    if (std::abs(*rho.toledo_cache) > rho.milnor_wood_bound())
        throw std::logic_error("Toledo invariant violates the Milnor-Wood bound");
    return rho;
}

MaximalRep trivial_rep(int genus, int n) {
    MaximalRep rho;
    rho.genus = genus;
    rho.n = n;
    rho.construction = Construction::user;
    rho.images.assign(2 * genus, Matrix::Identity(2 * n, 2 * n));
    rho.toledo_cache = 0;
    return rho;
}

MaximalRep user_rep(int genus, int n, std::vector<Matrix> images, const Config& cfg) {
    if (static_cast<int>(images.size()) != 2 * genus)
        throw std::invalid_argument("expected 2g generator images");
    MaximalRep rho;
    rho.genus = genus;
    rho.n = n;
    rho.construction = Construction::user;
    for (auto& m : images) {
        if (m.rows() != 2 * n || m.cols() != 2 * n)
            throw std::invalid_argument("image has wrong dimension");
        if (!sp::is_symplectic(m, cfg.tol.symplectic))
            throw std::invalid_argument("image is not symplectic");
    }
    rho.images = std::move(images);
    if (rho.relator_residual() > cfg.tol.relator_residual_rep)
        throw std::invalid_argument("images do not satisfy the surface relation");
    return rho;
}

// ---------------------------------------------------------------------------
// Toledo invariant by winding
// ---------------------------------------------------------------------------

namespace {

// polar interpolation path from I to g: U(t) exp(t S), optionally multiplied
// by a contractible detour exp(sin(pi t) Xi)
struct GenPath {
    Eigen::MatrixXcd log_u;     // principal log of the unitary factor
    Matrix s_vecs;
    Vector s_vals;              // eigendecomposition of log of the SPD factor
    std::optional<Matrix> detour;

    Matrix at(double t) const {
        const Eigen::MatrixXcd ut = ((t * log_u).exp());
        Vector e = (t * s_vals).array().exp();
        Matrix p = s_vecs * e.asDiagonal() * s_vecs.transpose();
        Matrix out = sp::realify(ut) * p;
        if (detour) out = out * (std::sin(kPi * t) * (*detour)).exp().eval();
        return out;
    }
};

GenPath make_gen_path(const Matrix& g, Rng* noise) {
    const sp::UnitaryPart up = sp::unitary_part(g);
    const Matrix p = up.u.transpose() * g;  // SPD symplectic factor
    GenPath path;
    path.log_u = sp::complexify(up.u).log();
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym(spd_log(sym(p))));
    path.s_vecs = es.eigenvectors();
    path.s_vals = es.eigenvalues();
    if (noise) {
        const int n = static_cast<int>(g.rows()) / 2;
        Matrix h(2 * n, 2 * n);
        for (int i = 0; i < 2 * n; ++i)
            for (int j = i; j < 2 * n; ++j)
                h(i, j) = h(j, i) = 0.05 * noise->gaussian();
        path.detour = -sp::standard_form(n) * h;  // sp(2n) element
    }
    return path;
}

double principal_arg(std::complex<double> z) { return std::arg(z); }

}  // namespace

ToledoResult toledo_detailed(const MaximalRep& rho, const Config& cfg,
                             Rng* path_noise) {
    if (rho.relator_residual() > cfg.tol.relator_residual_rep)
        throw std::runtime_error("toledo: relator residual too large");
    const words::Word relator = words::Presentation(rho.genus).relator();

    std::vector<GenPath> paths;
    for (const auto& img : rho.images)
        paths.push_back(make_gen_path(img, path_noise));

    ToledoResult result;
    double total_arg = 0.0;
    Matrix prefix = Matrix::Identity(2 * rho.n, 2 * rho.n);
    for (words::Letter l : relator.letters) {
        const GenPath& gp = paths[static_cast<std::size_t>(std::abs(l)) - 1];
        auto segment = [&](double t) -> Matrix {
            const Matrix base = gp.at(t);
            if (l > 0) return prefix * base;
            return prefix * base.partialPivLu().inverse();
        };
        struct Node {
            double t;
            std::complex<double> d;  // unitary determinant
            Eigen::MatrixXcd u;      // complex unitary factor
        };
        auto sample = [&](double t) {
            const sp::UnitaryPart up = sp::unitary_part(segment(t));
            ++result.samples;
            return Node{t, up.det_c, sp::complexify(up.u)};
        };
        // A step is accepted when the determinant argument moves by less
        // than pi/2 AND the unitary factors stay close; the second criterion
        // keeps each matched eigenvalue angle well below pi/n so the
        // principal argument cannot alias a full turn.
        const double u_step_cap = std::sin(0.5 * kPi / rho.n);
        const int base = 8 * rho.n;
        std::vector<Node> stack;
        Node cur = sample(0.0);
        for (int k = base; k >= 1; --k)
            stack.push_back(sample(static_cast<double>(k) / base));
        int guard = 0;
        while (!stack.empty()) {
            const Node next = stack.back();
            const double delta = principal_arg(next.d / cur.d);
            if (std::abs(delta) < 0.5 * kPi &&
                (next.u - cur.u).norm() < u_step_cap) {
                total_arg += delta;
                cur = next;
                stack.pop_back();
            } else {
                stack.push_back(sample(0.5 * (cur.t + next.t)));
                if (++guard > 200000)
                    throw std::runtime_error("toledo: refinement did not converge");
            }
        }
        prefix = prefix * (l > 0 ? gp.at(1.0)
                                 : gp.at(1.0).partialPivLu().inverse());
    }
    result.winding = total_arg / (2.0 * kPi);
    const double toledo_real = kWindingToToledo * result.winding;
    result.value = static_cast<int>(std::lround(toledo_real));
    result.residual = std::abs(result.winding - std::lround(result.winding));
    if (result.residual > cfg.tol.winding_integrality)
        throw std::runtime_error("toledo: winding is not integral (residual " +
                                 std::to_string(result.residual) + ")");
    return result;
}

int toledo(const MaximalRep& rho, const Config& cfg) {
    return toledo_detailed(rho, cfg).value;
}

bool is_maximal(const MaximalRep& rho, const Config& cfg) {
    const int t = rho.toledo_cache ? *rho.toledo_cache : toledo(rho, cfg);
    return std::abs(t) == rho.milnor_wood_bound();
}

// ---------------------------------------------------------------------------
// Spectral Lagrangians and translation lengths
// ---------------------------------------------------------------------------

namespace {

double invariance_residual(const Matrix& m, const Matrix& b) {
    const Matrix mb = m * b;
    const Matrix resid = mb - b * (b.transpose() * mb);
    return max_abs(resid) / (1.0 + max_abs(mb));
}

// subspace iteration toward the dominant n-dimensional invariant subspace;
// backward stable at any norm, converges at rate |l_{n+1}/l_n|
std::optional<Matrix> dominant_subspace(const Matrix& m, int n) {
    Rng rng(0x5eedb0b5ULL);
    Matrix b(2 * n, n);
    for (int i = 0; i < 2 * n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = rng.gaussian();
    b = orthonormalize(b);
    for (int it = 0; it < 500; ++it) {
        b = orthonormalize(m * b);
        if (it % 4 == 3 && invariance_residual(m, b) < 1e-14) return b;
    }
    if (invariance_residual(m, b) < 1e-12) return b;
    return std::nullopt;
}

}  // namespace

sp::Lagrangian attracting_lagrangian(const Matrix& m, const Config& cfg) {
    const int n = static_cast<int>(m.rows()) / 2;
    // Dense eigensolvers lose the spectrum of extreme-norm words (backward
    // error eps*||m|| swamps the small eigenvalues), so they are only
    // trusted at moderate norms; subspace iteration covers the rest, where
    // the spectral gap is correspondingly large.
    if (max_abs(m) < 1e8) {
        Eigen::EigenSolver<Matrix> es(m);
        if (es.info() == Eigen::Success) {
            const auto& vals = es.eigenvalues();
            for (Eigen::Index i = 0; i < vals.size(); ++i)
                if (std::abs(std::abs(vals[i]) - 1.0) <= cfg.tol.proximality)
                    throw std::runtime_error(
                        "attracting_lagrangian: spectrum too close to the unit "
                        "circle");
            std::vector<int> order(vals.size());
            for (std::size_t i = 0; i < order.size(); ++i)
                order[i] = static_cast<int>(i);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                return std::abs(vals[a]) > std::abs(vals[b]);
            });
            Matrix basis(2 * n, n);
            int col = 0;
            for (int idx : order) {
                if (col >= n) break;
                if (std::abs(vals[idx]) <= 1.0) break;
                const auto vec = es.eigenvectors().col(idx);
                if (std::abs(vals[idx].imag()) < 1e-12) {
                    basis.col(col++) = vec.real();
                } else if (vals[idx].imag() > 0) {  // complex pair
                    basis.col(col++) = vec.real();
                    if (col < n) basis.col(col++) = vec.imag();
                }
            }
            if (col != n)
                throw std::runtime_error(
                    "attracting_lagrangian: expanding subspace has wrong "
                    "dimension");
            Matrix b = orthonormalize(basis);
            for (int it = 0; it < 50; ++it) {
                b = orthonormalize(m * b);
                if (invariance_residual(m, b) < 1e-14) break;
            }
            if (invariance_residual(m, b) < 1e-12)
                return sp::make_lagrangian(b, cfg.tol);
        }
    }
    const auto b = dominant_subspace(m, n);
    if (!b)
        throw std::runtime_error(
            "attracting_lagrangian: spectrum too close to the unit circle");
    // proximality from the Rayleigh block (accurate at the dominant scale);
    // symplectic spectra are reciprocal-paired, so the expanding side
    // bounding away from the circle bounds the contracting side too
    const Matrix rayleigh = b->transpose() * (m * (*b));
    const auto revals = Eigen::EigenSolver<Matrix>(rayleigh).eigenvalues();
    for (Eigen::Index i = 0; i < revals.size(); ++i)
        if (std::abs(revals[i]) <= 1.0 + cfg.tol.proximality)
            throw std::runtime_error(
                "attracting_lagrangian: spectrum too close to the unit circle");
    return sp::make_lagrangian(*b, cfg.tol);
}

// Repelling Lagrangian without forming m^-1 (whose relative error grows
// with cond(m)): the contracting subspace of m is the orthogonal complement
// of the expanding subspace of m^T, both computed at the dominant scale.
sp::Lagrangian repelling_lagrangian(const Matrix& m, const Config& cfg) {
    const int n = static_cast<int>(m.rows()) / 2;
    const sp::Lagrangian left = attracting_lagrangian(m.transpose(), cfg);
    Eigen::HouseholderQR<Matrix> qr(left.basis);
    const Matrix q = qr.householderQ() * Matrix::Identity(2 * n, 2 * n);
    return sp::make_lagrangian(q.rightCols(n), cfg.tol);
}

namespace {

// assemble a symplectic frame from explicit (not necessarily orthonormal)
// Lagrangian column bases
sp::YFrame frame_from_columns(const Matrix& fminus, const Matrix& fplus,
                              const Config& cfg) {
    const int n = static_cast<int>(fminus.cols());
    sp::YFrame fr;
    fr.n = n;
    fr.lminus = sp::make_lagrangian(fminus, cfg.tol);
    fr.lplus = sp::make_lagrangian(fplus, cfg.tol);
    const Matrix gram = fminus.transpose() * sp::standard_form(n) * fplus;
    fr.f = Matrix(2 * n, 2 * n);
    fr.f << fminus, fplus * gram.partialPivLu().inverse();
    fr.f_inv = fr.f.partialPivLu().inverse();
    return fr;
}

}  // namespace

AxisFrame axis_frame(const MaximalRep& rho, const words::Word& w,
                     const Config& cfg) {
    if (rho.construction == Construction::user || !rho.base_hyperbolization)
        return axis_frame(evaluate(rho, w), cfg);
    const int n = rho.n;
    const hyp::Mat2 mh = hyp::evaluate_h(*rho.base_hyperbolization, w);
    if (!hyp::is_hyperbolic(mh, cfg.tol.hyperbolic_margin))
        return axis_frame(evaluate(rho, w), cfg);
    const auto [rep, att] = hyp::fixed_points(mh);
    // signed eigenvalue on the attracting eigenvector (x, 1) or (1, 0)
    auto eigvec = [](const hyp::BoundaryPoint& x) {
        return x.infinite ? std::pair<double, double>{1.0, 0.0}
                          : std::pair<double, double>{x.value, 1.0};
    };
    const auto [a1, a2] = eigvec(att);
    const auto [r1, r2] = eigvec(rep);
    const double na = std::hypot(a1, a2);
    const Eigen::Vector2d mv = mh * (Eigen::Vector2d(a1, a2) / na);
    const double lam_plus = std::abs(a1) >= std::abs(a2) ? mv(0) / (a1 / na)
                                                         : mv(1) / (a2 / na);
    const double lam_minus = 1.0 / lam_plus;

    Matrix fminus(2 * n, n), fplus(2 * n, n);
    Vector diag_a(n);
    if (rho.construction == Construction::diagonal) {
        fminus.setZero();
        fplus.setZero();
        for (int j = 0; j < n; ++j) {
            fminus(j, j) = r1;
            fminus(n + j, j) = r2;
            fplus(j, j) = a1;
            fplus(n + j, j) = a2;
            diag_a[j] = lam_minus;
        }
    } else {
        // columns p_-^{k-j} p_+^j diagonalize the restriction with
        // eigenvalues lam_-^{k-2j}
        const int k = 2 * n - 1;
        const Matrix c = irr_basis(n);
        Matrix cols_m(k + 1, n), cols_p(k + 1, n);
        for (int j = 0; j < n; ++j) {
            const auto cm = poly_pow_product(r1, r2, k - j, a1, a2, j);
            const auto cp = poly_pow_product(a1, a2, k - j, r1, r2, j);
            for (int i = 0; i <= k; ++i) {
                cols_m(i, j) = cm[k - i];
                cols_p(i, j) = cp[k - i];
            }
            diag_a[j] = std::pow(lam_minus, k - 2 * j);
        }
        fminus = c.partialPivLu().solve(cols_m);
        fplus = c.partialPivLu().solve(cols_p);
    }
    for (int j = 0; j < n; ++j) {  // unit columns keep the frame conditioned
        fminus.col(j) /= fminus.col(j).norm();
        fplus.col(j) /= fplus.col(j).norm();
    }
    AxisFrame af;
    af.frame = frame_from_columns(fminus, fplus, cfg);
    af.a = Matrix(diag_a.asDiagonal());
    // consistency at the contracting scale
    const Matrix m = evaluate(rho, w);
    if (max_abs(m * fminus - fminus * af.a) > 1e-7 * (1.0 + max_abs(m)))
        throw std::runtime_error("axis_frame: eigen frame is inconsistent");
    return af;
}

AxisFrame axis_frame(const Matrix& m, const Config& cfg) {
    const sp::Lagrangian lplus = attracting_lagrangian(m, cfg);
    const sp::Lagrangian lminus = repelling_lagrangian(m, cfg);
    AxisFrame af;
    af.frame = sp::make_frame(lminus, lplus, cfg.tol.transversality);
    const int n = af.frame.n;
    // The expanding block D is computed directly in the adapted basis by a
    // least-squares solve at the dominant scale (inverting the whole frame
    // against m would pollute the off-blocks with eps * cond(F) * ||m||);
    // the contracting block follows as A = D^{-T} with full relative
    // accuracy.
    const Matrix fplus = af.frame.f.rightCols(n);
    const Matrix w = m * fplus;
    const Matrix d = Eigen::HouseholderQR<Matrix>(fplus).solve(w);
    if (max_abs(w - fplus * d) > 1e-8 * (1.0 + max_abs(w)))
        throw std::runtime_error("axis_frame: element does not preserve the "
                                 "spectral Lagrangians");
    af.a = d.transpose().partialPivLu().inverse();
    // the contracting side must agree up to the eps * ||m|| roundoff floor
    const Matrix fminus = af.frame.f.leftCols(n);
    if (max_abs(m * fminus - fminus * af.a) >
        1e-8 * (1.0 + max_abs(m)))
        throw std::runtime_error("axis_frame: frame is not symplectically "
                                 "adapted");
    return af;
}

double displacement(const sp::CompatibleJ& j, const Matrix& m, const Config&) {
    // d_sp(J, m J m^-1) through the Gram congruence Q -> m^T Q m: exact and
    // backward stable at any norm of m (no structure revalidation needed);
    // symplectic pencils pair (l, 1/l), so the distance is log lmax
    const Matrix q = j.q();
    const Vector lam = gen_eigenvalues_spd(m.transpose() * q * m, q);
    return std::log(lam.maxCoeff());
}

namespace {

Matrix sym_from_params(const Vector& v, int n) {
    Matrix s(n, n);
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            s(i, j) = s(j, i) = v[idx];
            ++idx;
        }
    return s;
}

Vector params_from_sym(const Matrix& s) {
    const int n = static_cast<int>(s.rows());
    Vector v(n * (n + 1) / 2);
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) v[idx++] = s(i, j);
    return v;
}

}  // namespace

TranslationLength translation_length_sp(const MaximalRep& rho,
                                        const words::Word& w, const Config& cfg) {
    const words::Word wr = words::free_reduce(w);
    const int n = rho.n;
    TranslationLength out;
    out.minimizer = sp::PosDefForm{Matrix::Identity(n, n), n};
    if (wr.empty()) return out;

    const Matrix m = evaluate(rho, wr);
    if (max_abs(m - Matrix::Identity(2 * n, 2 * n)) < 1e-12)
        return out;  // trivial image displaces nothing
    const AxisFrame af = axis_frame(rho, wr, cfg);
    const Matrix& a = af.a;
    const Matrix ata = a.transpose() * a;
    out.lower_bound = std::abs(std::log(std::abs(ata.determinant()))) / n;

    // The parameter clamp keeps cond(Z) <= e^16, where the pencil spectrum
    // is still accurate to ~1e-9; minimizers sit at modest norms (the
    // spectral congruence start is exact for diagonalizable blocks).
    auto objective = [&](const Vector& v) {
        if (v.cwiseAbs().maxCoeff() > 8.0) return 1e9 + v.cwiseAbs().maxCoeff();
        try {
            const Matrix z = sym_exp(sym_from_params(v, n));
            const sp::PosDefForm zf{z, n};
            const sp::PosDefForm zi{sym(a.transpose() * z * a), n};
            return sp::d_y(zf, zi);
        } catch (const std::exception&) {
            return 1e9;
        }
    };

    const int dim = n * (n + 1) / 2;
    std::vector<Vector> starts;
    starts.push_back(Vector::Zero(dim));  // Z = I
    // spectral congruence start: exact for real-diagonalizable blocks
    try {
        Eigen::EigenSolver<Matrix> es(a);
        if (es.info() == Eigen::Success &&
            es.eigenvalues().imag().cwiseAbs().maxCoeff() < 1e-10) {
            const Matrix e = es.eigenvectors().real();
            if (std::abs(e.determinant()) > 1e-10) {
                const Matrix z0 = (e * e.transpose()).inverse();
                const Vector v0 = params_from_sym(spd_log(sym(z0)));
                if (v0.allFinite() && v0.cwiseAbs().maxCoeff() < 8.0)
                    starts.push_back(v0);
            }
        }
    } catch (const std::exception&) {
        // fall through to the generic starts
    }
    Rng rng(cfg.seed ^ 0x5eedf00dULL);
    while (static_cast<int>(starts.size()) < cfg.sampling.trlen_starts) {
        Vector v(dim);
        for (int i = 0; i < dim; ++i) v[i] = rng.gaussian();
        starts.push_back(v);
    }

    double best = std::numeric_limits<double>::infinity();
    Vector best_v = starts.front();
    for (const Vector& s0 : starts) {
        Vector v = s0;
        double fv = 0.0;
        double step = 0.3;
        for (int round = 0; round < 3; ++round) {
            v = nelder_mead(objective, v, step, 1500, cfg.tol.trlen_improvement, &fv);
            step *= 0.2;
        }
        if (fv < best) {
            best = fv;
            best_v = v;
        }
    }
    out.value = best;
    out.starts = static_cast<int>(starts.size());
    out.minimizer = sp::PosDefForm{sym_exp(sym_from_params(best_v, n)), n};
    if (out.value < out.lower_bound - cfg.tol.trlen_lb_slack)
        throw std::logic_error("translation length fell below its certified "
                               "lower bound");
    return out;
}

double unrestricted_translation_length(const MaximalRep& rho,
                                       const words::Word& w, Rng& rng,
                                       int starts, const Config&) {
    const words::Word wr = words::free_reduce(w);
    if (wr.empty()) return 0.0;
    const Matrix m = evaluate(rho, wr);
    const int n = rho.n;
    if (max_abs(m - Matrix::Identity(2 * n, 2 * n)) < 1e-12) return 0.0;
    const int dim = n * (n + 1);
    const Matrix mt = m.transpose();
    auto objective = [&](const Vector& v) {
        if (v.cwiseAbs().maxCoeff() > 8.0) return 1e9 + v.cwiseAbs().maxCoeff();
        try {
            // build the Gram matrix of the compatible structure directly
            const int half = n * (n + 1) / 2;
            Matrix p = Matrix::Zero(n, n), qq = Matrix::Zero(n, n);
            int idx = 0;
            for (int i = 0; i < n; ++i)
                for (int jj = i; jj < n; ++jj) {
                    p(i, jj) = p(jj, i) = v[idx];
                    qq(i, jj) = qq(jj, i) = v[half + idx];
                    ++idx;
                }
            Matrix s(2 * n, 2 * n);
            s << p, qq, qq, -p;
            const Matrix q = sym_exp(s);
            const Vector lam = gen_eigenvalues_spd(mt * q * m, q);
            return std::log(lam.maxCoeff());
        } catch (const std::exception&) {
            return 1e9;
        }
    };
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < starts; ++s) {
        Vector v = Vector::Zero(dim);
        if (s > 0)
            for (int i = 0; i < dim; ++i) v[i] = 0.8 * rng.gaussian();
        double fv = 0.0;
        double step = 0.3;
        for (int round = 0; round < 3; ++round) {
            v = nelder_mead(objective, v, step, 3000, 1e-10, &fv);
            step *= 0.2;
        }
        best = std::min(best, fv);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Boundary maps and the tangent-triple structure map
// ---------------------------------------------------------------------------

BoundaryMap boundary_map(const MaximalRep& rho) {
    if (rho.construction == Construction::user)
        throw std::invalid_argument(
            "no computable boundary map for user representations");
    const Embedding e{rho.n, rho.construction};
    BoundaryMap phi;
    phi.rule = [e](const hyp::BoundaryPoint& x) { return e.boundary_lagrangian(x); };
    return phi;
}

sp::CompatibleJ j_of_u(const MaximalRep&, const BoundaryMap& phi,
                       const hyp::TangentTriple& u, const Config& cfg) {
    const sp::Lagrangian lm = phi(u.backward);
    const sp::Lagrangian l0 = phi(u.middle);
    const sp::Lagrangian lp = phi(u.forward);
    const auto verdict = sp::is_maximal_triple(lm, l0, lp, cfg.tol.transversality);
    if (!verdict.maximal)
        throw std::runtime_error(
            "j_of_u: boundary triple is not maximal (signature " +
            std::to_string(verdict.signature) + ")");
    sp::CompatibleJ j = sp::make_compatible_j(
        sp::triple_j(lm, l0, lp, cfg.tol.transversality), cfg.tol);
    // membership in the parallel set of the endpoint Lagrangians
    sp::y_project(j, sp::make_frame(lm, lp, cfg.tol.transversality), cfg.tol);
    return j;
}

}  // namespace symplab::reps
