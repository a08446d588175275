// Representations of the surface group into Sp(2n,R): block-diagonal and
// symmetric-power embeddings of SL(2,R), word evaluation, the Toledo
// invariant computed as the winding number of the unitary determinant along
// a relator loop, spectral Lagrangians, equivariant boundary maps, the map
// from tangent triples to compatible structures, and translation lengths.

#pragma once

#include "symplab/config.hpp"
#include "symplab/hyperbolic.hpp"
#include "symplab/symplectic.hpp"
#include "symplab/words.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace symplab::reps {

enum class Construction { diagonal, irreducible, user };

std::string construction_name(Construction c);

// SL(2,R) -> Sp(2n,R); both constructions are group homomorphisms landing
// in the standard symplectic form
struct Embedding {
    int n = 1;
    Construction kind = Construction::diagonal;
    Matrix apply(const hyp::Mat2& m) const;
    // induced map on boundary lines: the Lagrangian attached to a point of
    // the circle (graph lines for diagonal, osculating span for irreducible)
    sp::Lagrangian boundary_lagrangian(const hyp::BoundaryPoint& x) const;
};

Embedding diagonal_embedding(int n);
Embedding irreducible_embedding(int n);

struct MaximalRep {
    int genus = 2;
    int n = 1;
    Construction construction = Construction::user;
    std::vector<Matrix> images;  // generator order a1,b1,...,ag,bg
    std::optional<int> toledo_cache;
    std::optional<hyp::Hyperbolization> base_hyperbolization;

    const Matrix& image(int generator_index) const {  // 1-based
        return images.at(static_cast<std::size_t>(generator_index) - 1);
    }
    double relator_residual() const;
    int milnor_wood_bound() const { return n * (2 * genus - 2); }
};

// compose a hyperbolization with an embedding; validates the relator
// residual, computes and caches the Toledo invariant
MaximalRep compose_rep(const hyp::Hyperbolization& h, const Embedding& e,
                       const Config& cfg = {});
MaximalRep trivial_rep(int genus, int n);
// wrap user images (validated symplectic + relator residual); no boundary map
MaximalRep user_rep(int genus, int n, std::vector<Matrix> images,
                    const Config& cfg = {});

Matrix evaluate(const MaximalRep& rho, const words::Word& w);

// Winding of det_C(unitary_part(.)) along the relator loop built from polar
// interpolation paths.  `path_noise` perturbs the interpolation by a
// contractible detour (the result is path-independent; used by tests).
struct ToledoResult {
    int value = 0;
    double winding = 0.0;  // pre-rounding value
    double residual = 0.0; // |winding - value|
    int samples = 0;
};
ToledoResult toledo_detailed(const MaximalRep& rho, const Config& cfg = {},
                             Rng* path_noise = nullptr);
int toledo(const MaximalRep& rho, const Config& cfg = {});

bool is_maximal(const MaximalRep& rho, const Config& cfg = {});

// span of the generalized eigenvectors with |lambda| > 1; throws when the
// spectrum comes too close to the unit circle (proximality margin)
sp::Lagrangian attracting_lagrangian(const Matrix& m, const Config& cfg = {});
// contracting counterpart, computed at the dominant scale of m
sp::Lagrangian repelling_lagrangian(const Matrix& m, const Config& cfg = {});

struct BoundaryMap {
    std::function<sp::Lagrangian(const hyp::BoundaryPoint&)> rule;
    sp::Lagrangian operator()(const hyp::BoundaryPoint& x) const { return rule(x); }
};

// explicit equivariant boundary map for the diagonal/irreducible
// constructions; throws for user representations
BoundaryMap boundary_map(const MaximalRep& rho);

// compatible structure of the image triple (phi(u-), phi(u0), phi(u+));
// throws if the triple fails transversality or maximality
sp::CompatibleJ j_of_u(const MaximalRep& rho, const BoundaryMap& phi,
                       const hyp::TangentTriple& u, const Config& cfg = {});

struct TranslationLength {
    double value = 0.0;        // best displacement found on the parallel set
    double lower_bound = 0.0;  // (1/n) |log det(A^T A)|
    int starts = 0;
    sp::PosDefForm minimizer;
};

// restricted displacement infimum over the parallel set of the spectral
// Lagrangians, by multi-start simplex descent over Z = exp(S)
TranslationLength translation_length_sp(const MaximalRep& rho,
                                        const words::Word& w,
                                        const Config& cfg = {});

// frame data of a proximal element: adapted symplectic frame and the
// L- block A of the restricted action Z -> A^T Z A
struct AxisFrame {
    sp::YFrame frame;
    Matrix a;  // n x n, block of rho(w) on the repelling Lagrangian
};
AxisFrame axis_frame(const Matrix& m, const Config& cfg = {});
// constructed representations admit an exactly conditioned frame: the
// eigenbasis columns of the embedding at the fixed points of the h-image,
// in which A is diagonal with signed powers of the 2x2 eigenvalue
AxisFrame axis_frame(const MaximalRep& rho, const words::Word& w,
                     const Config& cfg = {});

// displacement of the covariant action at a point: d_sp(J, M J M^-1)
double displacement(const sp::CompatibleJ& j, const Matrix& m,
                    const Config& cfg = {});

// unrestricted displacement minimization over the full space of compatible
// structures (random restarts), for the attainment check
double unrestricted_translation_length(const MaximalRep& rho,
                                       const words::Word& w, Rng& rng,
                                       int starts = 20, const Config& cfg = {});

}  // namespace symplab::reps
