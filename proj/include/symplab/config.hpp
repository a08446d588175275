// Central configuration: every tolerance and sampling knob used anywhere in
// the library lives here, with its default value.  Values can be overridden
// from an INI-style config file with sections [tolerances], [sampling],
// [curves], [twists]; CLI flags override the file.

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace symplab {

struct Tolerances {
    // symplectic_geometry
    double symplectic = 1e-9;        // ||g^T O g - O||_inf for Sp membership
    double j_square = 1e-9;          // ||J^2 + I||_inf for compatible J
    double q_symmetry = 1e-9;        // symmetry of <.,J.>
    double posdef_min_eig = 1e-12;   // positive definiteness margin
    double lagrangian_isotropy = 1e-9;
    double lagrangian_rank = 1e-10;  // smallest singular value of a basis
    double transversality = 1e-8;    // sigma_min of [L1|L2]
    double principal_angle = 1e-8;   // Lagrangian equality
    double cone_margin = 1e-12;      // strict cone membership
    double y_offblock = 1e-8;        // J(L+-) = L-+ membership
    // hyperbolic_plane
    double relator_residual_h = 1e-8;
    double hyperbolic_margin = 1e-9;  // |tr| > 2 + margin
    // max_reps
    double relator_residual_rep = 1e-7;
    double boundary_equivariance = 1e-7;
    double winding_integrality = 1e-3;
    double proximality = 1e-6;  // spectral gap from the unit circle
    // translation length minimizer
    double trlen_improvement = 1e-9;  // convergence threshold
    double trlen_lb_slack = 1e-6;     // result >= lower bound - slack
    double attainment = 1e-3;         // |inf_X - inf_Y| agreement
};

struct Sampling {
    int word_length_budget = 8;   // enumerate reduced words up to this length
    int sample_words = 50;        // non-conjugate words kept for QI suites
    int cone_samples = 200;       // cone lemma sample count
    int causal_curves = 1000;     // Monte Carlo causal curves
    int causal_n = 3;             // half-dimension for the causal suite
    int causal_max_samples = 16;  // samples per causal curve
    int causal_refine_depth = 10; // dyadic refinement depth cap
    int orbit_kmax = 10;
    int attainment_words = 20;
    int trlen_starts = 20;        // multi-start count for the Y minimizer
    int monotone_powers = 8;      // cone lemma part (2) power range
    int conjugator_depth = 8;     // certification search depth L_c
    int workers = 0;              // 0 = hardware concurrency
};

struct Config {
    Tolerances tol;
    Sampling sampling;
    std::string curves_file;  // empty = builtin genus-2 system
    std::string twists_file;  // empty = builtin genus-2 twists
    std::uint64_t seed = 1;

    // raw key/value view of everything, for run records
    std::map<std::string, std::string> snapshot() const;
};

// Parse an INI file into `cfg`.  Unknown keys are an error (config typos
// should not pass silently).  Throws std::runtime_error with a message
// naming the offending line.
void load_config_file(const std::string& path, Config& cfg);

// Apply a single "section.key=value" override (CLI layer).
void apply_override(Config& cfg, const std::string& section,
                    const std::string& key, const std::string& value);

}  // namespace symplab
