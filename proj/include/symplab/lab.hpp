// Experiment harness: length vectors over the curve system, quasi-isometry
// constant fits, mapping-class orbit probes, and the aggregated lemma suite
// (cone order, monotone growth, displacement comparison, causal bound,
// attainment of the translation length on the parallel set).

#pragma once

#include "symplab/config.hpp"
#include "symplab/hyperbolic.hpp"
#include "symplab/maxreps.hpp"
#include "symplab/symplectic.hpp"
#include "symplab/words.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace symplab::lab {

using LengthSource = std::variant<const hyp::Hyperbolization*, const reps::MaximalRep*>;

struct LengthVector {
    std::vector<double> values;  // 9g-9 entries
    std::vector<std::string> labels;
    std::string source;  // "hyperbolization" | "representation"
};

LengthVector length_vector(const LengthSource& source,
                           const words::CurveSystem& system,
                           const Config& cfg = {});

// non-conjugate hyperbolic words up to a length budget, deduplicated by the
// conjugacy-invariant |trace| of the h-image, evenly subsampled
struct WordSample {
    words::Word word;
    double length_h = 0.0;
};
std::vector<WordSample> sample_words(const hyp::Hyperbolization& h,
                                     int max_word_length, int count);

struct LipschitzFit {
    double l_fit = 0.0;   // max of tr_rho / tr_h over the sample
    double b0_fit = 0.0;  // residual making the upper bound hold on the sample
    double l_generator = 0.0;  // a priori constant from generator displacements
    int samples = 0;
};
LipschitzFit upper_lipschitz(const reps::MaximalRep& rho,
                             const hyp::Hyperbolization& h,
                             const std::vector<WordSample>& sample,
                             const Config& cfg = {});

struct QIEstimate {
    double a = 1.0;  // >= 1
    double b = 0.0;  // >= 0
    int samples = 0;
    double max_lower_violation = 0.0;  // <= 0 for the reported (a, b)
    double max_upper_violation = 0.0;
    double lemma_ratio_min = 0.0;  // extremes of tr_h / d_sp(J(u), rho J(u))
    double lemma_ratio_max = 0.0;
    int skipped = 0;  // non-proximal words
};

struct QIRow {
    std::string word;
    double tr_h = 0.0;
    double tr_rho = 0.0;
    double d_j = 0.0;  // displacement at the axis structure J(u)
};

QIEstimate qi_estimate(const reps::MaximalRep& rho,
                       const hyp::Hyperbolization& h,
                       const std::vector<WordSample>& sample,
                       std::vector<QIRow>* rows, const Config& cfg = {});

struct OrbitProbe {
    std::string twist_label;
    int k_max = 0;
    std::vector<double> sums;                    // one per k = 0..k_max
    std::vector<std::vector<double>> per_curve;  // [k][curve]
    int k0 = -1;          // sums strictly increasing for k >= k0
    bool diverging = false;  // k0 <= 3 and final >= 2 * initial
};
OrbitProbe orbit_probe(const reps::MaximalRep& rho,
                       const words::Automorphism& psi,
                       const words::CurveSystem& system, int k_max,
                       const Config& cfg = {});

struct ConeCase {
    std::string word;
    double cone_margin = 0.0;       // lambda_min(gZ - Z) at J(u)
    bool monotone = true;           // sorted spectra of g^i Z increase
    int absorb_steps = -1;          // first power inside the cone of Z_target
    bool pass = false;
};

struct CausalStats {
    int total = 0, passed = 0;
    double worst_margin_literal = 0.0;
    double worst_margin_proof = 0.0;
};

struct AttainmentCase {
    std::string word;
    double restricted = 0.0;
    double unrestricted = 0.0;
    double gap = 0.0;  // |restricted - unrestricted|
    bool pass = false;
};

struct LemmaSuiteReport {
    std::vector<ConeCase> cone_cases;
    int cone_passed = 0;
    double cone_worst_margin = 0.0;
    std::vector<QIRow> comparison_rows;
    double a_second = 0.0;   // A'' = n, recorded
    double b_second = 0.0;   // fitted B'' >= 0
    double a_prime_min = 0.0;  // extremes of tr_h / d_sp(J(u), rho J(u))
    double a_prime_max = 0.0;
    bool comparison_pass = false;
    CausalStats causal;
    std::vector<AttainmentCase> attainment;
    int attainment_passed = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> failures;  // reproducers, empty when green
    bool all_pass = false;
};

LemmaSuiteReport lemma_suite(const reps::MaximalRep& rho,
                             const hyp::Hyperbolization& h, int cone_samples,
                             const Config& cfg = {});

// Monte Carlo causal-bound suite (also usable standalone)
CausalStats causal_suite(int curves, int n, int max_samples, std::uint64_t seed,
                         int refine_depth, int workers);

// CSV / JSON emission
std::string orbit_probe_csv(const OrbitProbe& probe,
                            const words::CurveSystem& system);
std::string qi_scatter_csv(const std::vector<QIRow>& rows);
std::string lemma_suite_json(const LemmaSuiteReport& report);

}  // namespace symplab::lab
