// Hyperbolic geometry of the upper half-plane: Moebius action, distance,
// translation lengths, axis data for hyperbolic elements, and an explicit
// genus-2 hyperbolization built from the regular octagon with vertex angle
// pi/4.  The boundary circle is R u {inf}; a triple is positively oriented
// when it is counterclockwise on the boundary of the isometric disk model.

#pragma once

#include "symplab/words.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace symplab::hyp {

using Mat2 = Eigen::Matrix2d;
using Point = std::complex<double>;  // interior point, imag > 0

struct BoundaryPoint {
    double value = 0.0;
    bool infinite = false;

    static BoundaryPoint inf() { return {0.0, true}; }
    static BoundaryPoint at(double x) { return {x, false}; }
    bool operator==(const BoundaryPoint& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

struct TangentTriple {
    BoundaryPoint backward;  // x_-
    BoundaryPoint middle;    // x_0
    BoundaryPoint forward;   // x_+
};

bool is_unimodular(const Mat2& m, double tol = 1e-9);
Mat2 inverse2(const Mat2& m);  // adjugate form, exact for det 1

Point moebius(const Mat2& m, const Point& z);
BoundaryPoint moebius(const Mat2& m, const BoundaryPoint& x);

// positively oriented as a boundary triple (pairwise distinct required)
bool positively_oriented(const BoundaryPoint& x, const BoundaryPoint& y,
                         const BoundaryPoint& z);

// distance in the half-plane model; throws if a point is not interior
double disk_distance(const Point& p, const Point& q);

// 0 for elliptic/parabolic/identity, 2 arcosh(|tr|/2) for hyperbolic
double translation_length_h(const Mat2& m);

bool is_hyperbolic(const Mat2& m, double margin = 1e-9);

// (repelling, attracting) boundary fixed points of a hyperbolic element
std::pair<BoundaryPoint, BoundaryPoint> fixed_points(const Mat2& m);

struct Hyperbolization {
    int genus = 2;
    std::vector<Mat2> images;  // generator order a1,b1,...,ag,bg

    const Mat2& image(int generator_index) const {  // 1-based
        return images.at(static_cast<std::size_t>(generator_index) - 1);
    }
    // max-norm residual of the commutator relator against +-I
    double relator_residual() const;
    // throws unless the relator residual and hyperbolicity margins hold
    void validate(double relator_tol = 1e-8, double hyperbolic_margin = 1e-9) const;
};

Mat2 evaluate_h(const Hyperbolization& h, const words::Word& w);

double translation_length_h(const Hyperbolization& h, const words::Word& w);

// Axis tangent triple (gamma^-, x0, gamma^+) of a hyperbolic element: x0 is
// the endpoint of the perpendicular geodesic at the midpoint of a
// fundamental displacement along the axis (base point: the foot of i on the
// axis), chosen on the side making the triple positively oriented.
TangentTriple axis_tangent_triple(const Mat2& m);

// point on the axis realizing the translation length (foot of i on the axis)
Point axis_point(const Mat2& m);

// Genus-2 hyperbolization from the regular hyperbolic octagon with vertex
// angle pi/4; side pairings follow the commutator edge word.
Hyperbolization octagon_hyperbolization();

}  // namespace symplab::hyp
