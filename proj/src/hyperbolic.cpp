#include "symplab/hyperbolic.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace symplab::hyp {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double sq(double x) { return x * x; }

}  // namespace

bool is_unimodular(const Mat2& m, double tol) {
    // relative scale: the determinant of a float product carries roundoff
    // of order ||m||^2 eps
    const double scale = std::max(1.0, sq(m.cwiseAbs().maxCoeff()));
    return std::abs(m.determinant() - 1.0) <= tol * scale;
}

Mat2 inverse2(const Mat2& m) {
    Mat2 inv;
    inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return inv / m.determinant();
}

Point moebius(const Mat2& m, const Point& z) {
    return (m(0, 0) * z + m(0, 1)) / (m(1, 0) * z + m(1, 1));
}

BoundaryPoint moebius(const Mat2& m, const BoundaryPoint& x) {
    const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    if (x.infinite) {
        if (std::abs(c) < 1e-14 * (1.0 + std::abs(a))) return BoundaryPoint::inf();
        return BoundaryPoint::at(a / c);
    }
    const double den = c * x.value + d;
    const double num = a * x.value + b;
    if (std::abs(den) < 1e-13 * (1.0 + std::abs(num))) return BoundaryPoint::inf();
    return BoundaryPoint::at(num / den);
}

bool positively_oriented(const BoundaryPoint& x, const BoundaryPoint& y,
                         const BoundaryPoint& z) {
    // counterclockwise on the disk boundary = cyclically decreasing on
    // R u {inf} (the Cayley transform reverses the real order)
    if (!x.infinite && !y.infinite && !z.infinite) {
        if (x.value == y.value || y.value == z.value || x.value == z.value)
            throw std::invalid_argument("triple not pairwise distinct");
        return (x.value - y.value) * (y.value - z.value) * (z.value - x.value) < 0;
    }
    if (x.infinite && y.infinite) throw std::invalid_argument("triple not distinct");
    if (x.infinite && z.infinite) throw std::invalid_argument("triple not distinct");
    if (y.infinite && z.infinite) throw std::invalid_argument("triple not distinct");
    if (x.infinite) return y.value > z.value;
    if (y.infinite) return z.value > x.value;
    return x.value > y.value;  // z infinite
}

double disk_distance(const Point& p, const Point& q) {
    if (!(p.imag() > 0.0) || !(q.imag() > 0.0))
        throw std::invalid_argument("point not in the open half-plane");
    const double t = (sq(p.real() - q.real()) + sq(p.imag() - q.imag())) /
                     (2.0 * p.imag() * q.imag());
    return std::acosh(1.0 + t);
}

double translation_length_h(const Mat2& m) {
    if (!is_unimodular(m))
        throw std::invalid_argument("matrix is not unimodular");
    const double half_tr = 0.5 * std::abs(m.trace());
    if (half_tr <= 1.0) return 0.0;
    return 2.0 * std::acosh(half_tr);
}

bool is_hyperbolic(const Mat2& m, double margin) {
    return is_unimodular(m) && std::abs(m.trace()) > 2.0 + margin;
}

std::pair<BoundaryPoint, BoundaryPoint> fixed_points(const Mat2& m) {
    if (!is_hyperbolic(m))
        throw std::invalid_argument("fixed points require a hyperbolic element");
    const double tr = m.trace();
    const double disc = std::sqrt(tr * tr - 4.0);
    const double lam_big = 0.5 * (tr + (tr >= 0 ? disc : -disc));
    const double lam_small = 1.0 / lam_big;
    auto eigen_point = [&](double lam) {
        const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
        double v1, v2;
        if (std::abs(b) + std::abs(lam - a) >= std::abs(c) + std::abs(lam - d)) {
            v1 = b;
            v2 = lam - a;
        } else {
            v1 = lam - d;
            v2 = c;
        }
        if (std::abs(v2) <= 1e-14 * std::abs(v1)) return BoundaryPoint::inf();
        return BoundaryPoint::at(v1 / v2);
    };
    return {eigen_point(lam_small), eigen_point(lam_big)};
}

namespace {

// Moebius map sending (u, v) to (0, inf), as a real SL2 matrix.
Mat2 axis_to_std(const BoundaryPoint& u, const BoundaryPoint& v) {
    Mat2 t;
    if (u.infinite) {
        t << 0, -1, 1, -v.value;
        return t;
    }
    if (v.infinite) {
        t << 1, -u.value, 0, 1;
        return t;
    }
    t << 1, -u.value, 1, -v.value;
    double det = t.determinant();  // u - v... actually -v + u
    if (det < 0) {
        t.row(1) *= -1.0;
        det = -det;
    }
    return t / std::sqrt(det);
}

}  // namespace

Point axis_point(const Mat2& m) {
    auto [rep, att] = fixed_points(m);
    const Mat2 t = axis_to_std(rep, att);
    const Point w = moebius(t, Point(0.0, 1.0));
    const Point foot(0.0, std::abs(w));
    return moebius(inverse2(t), foot);
}

TangentTriple axis_tangent_triple(const Mat2& m) {
    // The fundamental displacement is taken centered at the foot of i on
    // the axis, so its midpoint is the foot itself; the perpendicular
    // geodesic there is well separated from both fixed points.
    auto [rep, att] = fixed_points(m);
    const Mat2 t = axis_to_std(rep, att);
    const Mat2 tinv = inverse2(t);
    const double s = std::abs(moebius(t, Point(0.0, 1.0)));
    // perpendicular to the standard axis at i*s is |z| = s
    for (double side : {-s, s}) {
        BoundaryPoint x0 = moebius(tinv, BoundaryPoint::at(side));
        if (positively_oriented(rep, x0, att)) return {rep, x0, att};
    }
    throw std::logic_error("axis_tangent_triple: no orientable side");
}

double Hyperbolization::relator_residual() const {
    const words::Word r = words::Presentation(genus).relator();
    Mat2 prod = evaluate_h(*this, r);
    const Mat2 id = Mat2::Identity();
    return std::min((prod - id).cwiseAbs().maxCoeff(),
                    (prod + id).cwiseAbs().maxCoeff());
}

void Hyperbolization::validate(double relator_tol, double hyperbolic_margin) const {
    if (static_cast<int>(images.size()) != 2 * genus)
        throw std::invalid_argument("hyperbolization needs 2g generator images");
    for (const Mat2& m : images) {
        if (!is_unimodular(m, 1e-9))
            throw std::invalid_argument("generator image is not unimodular");
        if (std::abs(m.trace()) <= 2.0 + hyperbolic_margin)
            throw std::invalid_argument("generator image is not hyperbolic");
    }
    if (relator_residual() > relator_tol)
        throw std::invalid_argument("relator residual too large");
}

Mat2 evaluate_h(const Hyperbolization& h, const words::Word& w) {
    if (w.genus != h.genus)
        throw std::invalid_argument("word genus does not match hyperbolization");
    Mat2 prod = Mat2::Identity();
    for (words::Letter l : w.letters) {
        const Mat2& g = h.image(std::abs(l));
        prod = prod * (l > 0 ? g : inverse2(g));
    }
    return prod;
}

double translation_length_h(const Hyperbolization& h, const words::Word& w) {
    return translation_length_h(evaluate_h(h, w));
}

// ---------------------------------------------------------------------------
// Regular octagon construction
// ---------------------------------------------------------------------------

namespace {

using CMat = Eigen::Matrix2cd;
using Cx = std::complex<double>;

Cx apply_disk(const CMat& m, Cx z) {
    return (m(0, 0) * z + m(0, 1)) / (m(1, 0) * z + m(1, 1));
}

CMat disk_translate_to_zero(Cx p) {
    CMat m;
    m << 1.0, -p, -std::conj(p), 1.0;
    return m / std::sqrt(Cx(1.0 - std::norm(p)));
}

CMat disk_rotation(double phi) {
    CMat m;
    m << std::polar(1.0, phi / 2), 0.0, 0.0, std::polar(1.0, -phi / 2);
    return m;
}

CMat inverse_cmat(const CMat& m) {
    CMat inv;
    inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return inv / (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
}

// unique orientation-preserving isometry of the disk with p -> 0, q -> (0,1)
CMat to_standard_pair(Cx p, Cx q) {
    CMat t = disk_translate_to_zero(p);
    Cx q1 = apply_disk(t, q);
    return disk_rotation(-std::arg(q1)) * t;
}

CMat pair_isometry(Cx p, Cx q, Cx p2, Cx q2) {
    return inverse_cmat(to_standard_pair(p2, q2)) * to_standard_pair(p, q);
}

// conjugate a disk isometry to a real SL(2,R) matrix by the Cayley transform
Mat2 disk_to_halfplane(const CMat& w) {
    CMat cayley;
    cayley << Cx(1, 0), Cx(0, -1), Cx(1, 0), Cx(0, 1);
    cayley /= std::sqrt(Cx(0, 2.0));
    CMat m = inverse_cmat(cayley) * w * cayley;
    Mat2 out;
    double imag_mass = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            out(i, j) = m(i, j).real();
            imag_mass = std::max(imag_mass, std::abs(m(i, j).imag()));
        }
    if (imag_mass > 1e-10)
        throw std::logic_error("octagon: Cayley conjugate is not real");
    return out / std::sqrt(out.determinant());
}

}  // namespace

Hyperbolization octagon_hyperbolization() {
    // Regular octagon, vertex angle pi/4: the center-to-vertex distance d
    // satisfies cosh d = cot^2(pi/8) = 3 + 2 sqrt(2).
    const double cosh_d = 3.0 + 2.0 * std::sqrt(2.0);
    const double radius = std::tanh(0.5 * std::acosh(cosh_d));
    std::array<Cx, 8> v;
    for (int k = 0; k < 8; ++k)
        v[k] = std::polar(radius, kPi * k / 4.0);

    // Edge e_k runs from v_k to v_{k+1}; the boundary word is
    // a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1, so the edge pairs are
    // (0,2), (1,3), (4,6), (5,7).  The pairing isometry for (i,j) maps
    // e_j reversed onto e_i: v_{j+1} -> v_i, v_j -> v_{i+1}.
    auto pairing = [&](int i, int j) {
        return pair_isometry(v[(j + 1) % 8], v[j], v[i], v[(i + 1) % 8]);
    };
    // The generators are a1 = G(0,2), b1 = G(1,3)^-1, a2 = G(4,6),
    // b2 = G(5,7)^-1; with this assignment the commutator relator evaluates
    // to +-I (residual ~1e-14) and all four images share trace 2 + sqrt(2).
    Hyperbolization h;
    h.genus = 2;
    h.images = {
        disk_to_halfplane(pairing(0, 2)),
        disk_to_halfplane(inverse_cmat(pairing(1, 3))),
        disk_to_halfplane(pairing(4, 6)),
        disk_to_halfplane(inverse_cmat(pairing(5, 7))),
    };
    h.validate(1e-8, 1e-9);
    return h;
}

}  // namespace symplab::hyp
