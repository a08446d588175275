#include "symplab/lab.hpp"

#include "symplab/io.hpp"
#include "symplab/parallel.hpp"
#include "symplab/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace symplab::lab {

namespace {

std::string word_text(const words::Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i) out += ",";
        out += words::letter_name(w.letters[i]);
    }
    return out.empty() ? "(empty)" : out;
}

}  // namespace

LengthVector length_vector(const LengthSource& source,
                           const words::CurveSystem& system, const Config& cfg) {
    LengthVector lv;
    lv.labels = system.labels;
    for (const auto& w : system.curves) {
        if (std::holds_alternative<const hyp::Hyperbolization*>(source)) {
            lv.source = "hyperbolization";
            lv.values.push_back(hyp::translation_length_h(
                *std::get<const hyp::Hyperbolization*>(source), w));
        } else {
            lv.source = "representation";
            lv.values.push_back(
                reps::translation_length_sp(*std::get<const reps::MaximalRep*>(source),
                                            w, cfg)
                    .value);
        }
    }
    return lv;
}

std::vector<WordSample> sample_words(const hyp::Hyperbolization& h,
                                     int max_word_length, int count) {
    const int genus = h.genus;
    const int rank = 2 * genus;
    // enumerate freely reduced words, deduplicate by conjugacy-invariant
    // |trace| (rounded); keep the first (shortest) representative
    struct Entry {
        words::Word word;
        double length_h;
        int word_len;
    };
    std::map<long long, Entry> classes;
    std::vector<std::pair<words::Word, hyp::Mat2>> frontier;
    frontier.push_back({words::Word({}, genus), hyp::Mat2::Identity()});
    for (int len = 1; len <= max_word_length; ++len) {
        std::vector<std::pair<words::Word, hyp::Mat2>> next;
        next.reserve(frontier.size() * (2 * rank - 1));
        for (const auto& [w, m] : frontier) {
            for (int l = -rank; l <= rank; ++l) {
                if (l == 0) continue;
                if (!w.letters.empty() && w.letters.back() == -l) continue;
                words::Word w2 = w;
                w2.letters.push_back(l);
                const hyp::Mat2& g = h.image(std::abs(l));
                hyp::Mat2 m2 = m * (l > 0 ? g : hyp::inverse2(g));
                const double tr = std::abs(m2.trace());
                if (tr > 2.0 + 1e-9) {
                    const long long key = std::llround(tr * 1e9);
                    if (!classes.count(key))
                        classes.emplace(key,
                                        Entry{w2, 2.0 * std::acosh(0.5 * tr), len});
                }
                next.push_back({std::move(w2), std::move(m2)});
            }
        }
        frontier.swap(next);
    }
    // deterministic spread across the (word length, trace) ordering
    std::vector<Entry> all;
    all.reserve(classes.size());
    for (auto& [key, e] : classes) all.push_back(std::move(e));
    std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
        if (a.word_len != b.word_len) return a.word_len < b.word_len;
        return a.length_h < b.length_h;
    });
    std::vector<WordSample> out;
    if (all.empty()) return out;
    const int total = static_cast<int>(all.size());
    const int take = std::min(count, total);
    for (int i = 0; i < take; ++i) {
        const int idx = static_cast<int>(
            (static_cast<long long>(i) * total) / take);
        out.push_back({all[idx].word, all[idx].length_h});
    }
    return out;
}

LipschitzFit upper_lipschitz(const reps::MaximalRep& rho,
                             const hyp::Hyperbolization& h,
                             const std::vector<WordSample>& sample,
                             const Config& cfg) {
    LipschitzFit fit;
    fit.samples = static_cast<int>(sample.size());
    // a priori constant: generator displacement at the base point against
    // the shortest generator translation length
    const sp::CompatibleJ j0 =
        sp::make_compatible_j(sp::standard_j(rho.n), cfg.tol);
    double max_disp = 0.0, min_len = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 2 * rho.genus; ++i) {
        max_disp = std::max(max_disp, reps::displacement(j0, rho.image(i), cfg));
        min_len = std::min(min_len, hyp::translation_length_h(h.image(i)));
    }
    fit.l_generator = min_len > 0 ? max_disp / min_len : 0.0;
    double worst_ratio = 0.0;
    double worst_excess = 0.0;
    for (const auto& ws : sample) {
        const double lh = ws.length_h;
        const double lr = reps::translation_length_sp(rho, ws.word, cfg).value;
        if (lh > 0) worst_ratio = std::max(worst_ratio, lr / lh);
    }
    fit.l_fit = worst_ratio;
    for (const auto& ws : sample) {
        const double lr = reps::translation_length_sp(rho, ws.word, cfg).value;
        worst_excess = std::max(worst_excess, lr - fit.l_fit * ws.length_h);
    }
    fit.b0_fit = std::max(0.0, worst_excess);
    return fit;
}

QIEstimate qi_estimate(const reps::MaximalRep& rho, const hyp::Hyperbolization& h,
                       const std::vector<WordSample>& sample,
                       std::vector<QIRow>* rows, const Config& cfg) {
    if (rho.construction == reps::Construction::user)
        throw std::invalid_argument("qi_estimate needs a constructed representation");
    const reps::BoundaryMap phi = reps::boundary_map(rho);
    QIEstimate est;
    struct Row {
        QIRow row;
        bool ok = false;
    };
    auto rows_all = parallel_map<Row>(
        sample.size(), cfg.sampling.workers, [&](std::size_t i) {
            Row r;
            const auto& ws = sample[i];
            try {
                const hyp::Mat2 mh = hyp::evaluate_h(h, ws.word);
                const Matrix m = reps::evaluate(rho, ws.word);
                const auto u = hyp::axis_tangent_triple(mh);
                const sp::CompatibleJ ju = reps::j_of_u(rho, phi, u, cfg);
                r.row.word = word_text(ws.word);
                r.row.tr_h = ws.length_h;
                r.row.tr_rho = reps::translation_length_sp(rho, ws.word, cfg).value;
                r.row.d_j = reps::displacement(ju, m, cfg);
                r.ok = true;
            } catch (const std::exception&) {
                r.ok = false;
            }
            return r;
        });
    est.lemma_ratio_min = std::numeric_limits<double>::infinity();
    est.lemma_ratio_max = 0.0;
    double a = 1.0;
    for (const auto& r : rows_all) {
        if (!r.ok) {
            ++est.skipped;
            continue;
        }
        ++est.samples;
        if (rows) rows->push_back(r.row);
        if (r.row.tr_h > 0 && r.row.tr_rho > 0)
            a = std::max(a, std::max(r.row.tr_rho / r.row.tr_h,
                                     r.row.tr_h / r.row.tr_rho));
        if (r.row.d_j > 0) {
            est.lemma_ratio_min = std::min(est.lemma_ratio_min, r.row.tr_h / r.row.d_j);
            est.lemma_ratio_max = std::max(est.lemma_ratio_max, r.row.tr_h / r.row.d_j);
        }
    }
    est.a = a;
    est.b = 0.0;
    for (const auto& r : rows_all) {
        if (!r.ok) continue;
        est.max_upper_violation =
            std::max(est.max_upper_violation, r.row.tr_rho - est.a * r.row.tr_h - est.b);
        est.max_lower_violation =
            std::max(est.max_lower_violation, r.row.tr_h / est.a - est.b - r.row.tr_rho);
    }
    return est;
}

OrbitProbe orbit_probe(const reps::MaximalRep& rho, const words::Automorphism& psi,
                       const words::CurveSystem& system, int k_max,
                       const Config& cfg) {
    OrbitProbe probe;
    probe.twist_label = psi.label;
    probe.k_max = k_max;
    // precompute psi^{-k}(curve) rows, then evaluate lengths in parallel
    std::vector<std::vector<words::Word>> twisted(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        twisted[k].reserve(system.curves.size());
        for (const auto& c : system.curves)
            twisted[k].push_back(words::apply_power(psi, c, -k));
    }
    const std::size_t n_tasks = (k_max + 1) * system.curves.size();
    auto lengths = parallel_map<double>(
        n_tasks, cfg.sampling.workers, [&](std::size_t t) {
            const int k = static_cast<int>(t / system.curves.size());
            const std::size_t i = t % system.curves.size();
            return reps::translation_length_sp(rho, twisted[k][i], cfg).value;
        });
    for (int k = 0; k <= k_max; ++k) {
        std::vector<double> row(system.curves.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < system.curves.size(); ++i) {
            row[i] = lengths[k * system.curves.size() + i];
            sum += row[i];
        }
        probe.per_curve.push_back(std::move(row));
        probe.sums.push_back(sum);
    }
    // first index after which the sums strictly increase
    probe.k0 = 0;
    for (int k = k_max; k >= 1; --k)
        if (probe.sums[k] <= probe.sums[k - 1] + 1e-9) {
            probe.k0 = k;
            break;
        }
    probe.diverging = probe.k0 <= 3 && k_max >= 1 &&
                      probe.sums.back() >= 2.0 * probe.sums.front();
    return probe;
}

namespace {

sp::CausalCurve random_causal_curve(Rng& rng, int n, int max_samples) {
    const int count = 2 + static_cast<int>(rng.below(max_samples - 1));
    std::vector<sp::PosDefForm> samples;
    samples.push_back(sp::random_posdef(rng, n, 1.0));
    for (int i = 1; i < count; ++i) {
        Matrix w(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) w(r, c) = rng.gaussian();
        const double step = 0.05 + rng.uniform();
        Matrix inc = step * (w * w.transpose()) + 0.01 * Matrix::Identity(n, n);
        samples.push_back({sym(samples.back().z + inc), n});
    }
    return sp::make_causal_curve(std::move(samples));
}

}  // namespace

CausalStats causal_suite(int curves, int n, int max_samples, std::uint64_t seed,
                         int refine_depth, int workers) {
    struct Res {
        bool pass;
        double ml, mp;
    };
    auto results = parallel_map<Res>(curves, workers, [&](std::size_t i) {
        Rng rng = task_rng(seed, i);
        const sp::CausalCurve curve = random_causal_curve(rng, n, max_samples);
        const sp::CausalBoundReport r = sp::check_causal_bound(curve, refine_depth);
        return Res{r.pass, r.margin_literal, r.margin_proof};
    });
    CausalStats stats;
    stats.total = curves;
    stats.worst_margin_literal = std::numeric_limits<double>::infinity();
    stats.worst_margin_proof = std::numeric_limits<double>::infinity();
    for (const auto& r : results) {
        if (r.pass) ++stats.passed;
        stats.worst_margin_literal = std::min(stats.worst_margin_literal, r.ml);
        stats.worst_margin_proof = std::min(stats.worst_margin_proof, r.mp);
    }
    return stats;
}

LemmaSuiteReport lemma_suite(const reps::MaximalRep& rho,
                             const hyp::Hyperbolization& h, int cone_samples,
                             const Config& cfg) {
    LemmaSuiteReport report;
    report.seed = cfg.seed;
    const reps::BoundaryMap phi = reps::boundary_map(rho);
    const int n = rho.n;

    // --- cone order and monotone growth at axis structures ---
    const auto cone_words = sample_words(h, cfg.sampling.word_length_budget,
                                         cone_samples);
    report.cone_cases = parallel_map<ConeCase>(
        cone_words.size(), cfg.sampling.workers, [&](std::size_t i) {
            ConeCase cc;
            cc.word = word_text(cone_words[i].word);
            try {
                const hyp::Mat2 mh = hyp::evaluate_h(h, cone_words[i].word);
                const auto u = hyp::axis_tangent_triple(mh);
                const sp::CompatibleJ ju = reps::j_of_u(rho, phi, u, cfg);
                const reps::AxisFrame af = reps::axis_frame(rho, cone_words[i].word, cfg);
                const sp::PosDefForm z = sp::y_project(ju, af.frame, cfg.tol);
                // covariant action in the frame model: Z -> A^-T Z A^-1
                const Matrix ainv = af.a.partialPivLu().inverse();
                auto push = [&](const sp::PosDefForm& zz) {
                    return sp::PosDefForm{sym(ainv.transpose() * zz.z * ainv), n};
                };
                const sp::PosDefForm z1 = push(z);
                cc.cone_margin = min_eig_sym(z1.z - z.z);
                // rho(gamma)^i J(u): sorted spectra must strictly increase
                Vector prev = sym_eigenvalues(z.z);
                sp::PosDefForm cur = z;
                cc.monotone = true;
                for (int p = 1; p <= cfg.sampling.monotone_powers; ++p) {
                    cur = push(cur);
                    Vector ev = sym_eigenvalues(cur.z);
                    for (int q = 0; q < n; ++q)
                        if (ev[q] <= prev[q]) cc.monotone = false;
                    prev = ev;
                }
                // absorption: find a power landing in the cone of a target
                const sp::PosDefForm target{
                    2.0 * sym_eigenvalues(z.z).maxCoeff() * Matrix::Identity(n, n),
                    n};
                cur = z;
                for (int p = 1; p <= 64 && cc.absorb_steps < 0; ++p) {
                    cur = push(cur);
                    if (sp::in_cone(target, cur, cfg.tol.cone_margin))
                        cc.absorb_steps = p;
                }
                cc.pass = cc.cone_margin > 0 && cc.monotone && cc.absorb_steps > 0;
            } catch (const std::exception&) {
                cc.pass = false;
            }
            return cc;
        });
    report.cone_worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& cc : report.cone_cases) {
        if (cc.pass) ++report.cone_passed;
        else report.failures.push_back("cone case failed: word " + cc.word);
        report.cone_worst_margin = std::min(report.cone_worst_margin, cc.cone_margin);
    }

    // --- displacement comparison: d(J(u), rho J(u)) <= n tr_rho + 2 B'' ---
    const auto cmp_words = sample_words(h, cfg.sampling.word_length_budget,
                                        cfg.sampling.sample_words);
    QIEstimate est = qi_estimate(rho, h, cmp_words, &report.comparison_rows, cfg);
    report.a_second = n;
    double b2 = 0.0;
    for (const auto& row : report.comparison_rows)
        b2 = std::max(b2, 0.5 * (row.d_j - n * row.tr_rho));
    report.b_second = b2;
    report.a_prime_min = est.lemma_ratio_min;
    report.a_prime_max = est.lemma_ratio_max;
    report.comparison_pass = est.skipped == 0;

    // --- causal bound Monte Carlo ---
    report.causal = causal_suite(cfg.sampling.causal_curves, cfg.sampling.causal_n,
                                 cfg.sampling.causal_max_samples,
                                 cfg.seed ^ 0xca05a1ULL,
                                 cfg.sampling.causal_refine_depth,
                                 cfg.sampling.workers);
    if (report.causal.passed != report.causal.total)
        report.failures.push_back("causal bound failures: " +
                                  std::to_string(report.causal.total -
                                                 report.causal.passed));

    // --- attainment on the parallel set ---
    const int aw = std::min<int>(cfg.sampling.attainment_words,
                                 static_cast<int>(cmp_words.size()));
    report.attainment = parallel_map<AttainmentCase>(
        aw, cfg.sampling.workers, [&](std::size_t i) {
            AttainmentCase ac;
            ac.word = word_text(cmp_words[i].word);
            Rng rng = task_rng(cfg.seed ^ 0xa77a1ULL, i);
            ac.restricted =
                reps::translation_length_sp(rho, cmp_words[i].word, cfg).value;
            ac.unrestricted = reps::unrestricted_translation_length(
                rho, cmp_words[i].word, rng, 20, cfg);
            ac.gap = std::abs(ac.restricted - ac.unrestricted);
            ac.pass = ac.gap <= cfg.tol.attainment;
            return ac;
        });
    for (const auto& ac : report.attainment) {
        if (ac.pass) ++report.attainment_passed;
        else report.failures.push_back("attainment gap " + io::format_double(ac.gap) +
                                       " on word " + ac.word);
    }

    report.all_pass = report.cone_passed == static_cast<int>(report.cone_cases.size()) &&
                      report.comparison_pass &&
                      report.causal.passed == report.causal.total &&
                      report.attainment_passed == static_cast<int>(report.attainment.size());
    return report;
}

std::string orbit_probe_csv(const OrbitProbe& probe,
                            const words::CurveSystem& system) {
    std::ostringstream os;
    os << "k,sum";
    for (const auto& label : system.labels) os << "," << label;
    os << "\n";
    for (int k = 0; k < static_cast<int>(probe.sums.size()); ++k) {
        os << k << "," << io::format_double(probe.sums[k]);
        for (double v : probe.per_curve[k]) os << "," << io::format_double(v);
        os << "\n";
    }
    return os.str();
}

std::string qi_scatter_csv(const std::vector<QIRow>& rows) {
    std::ostringstream os;
    os << "word,tr_h,tr_rho,d_J\n";
    for (const auto& r : rows)
        os << "\"" << r.word << "\"," << io::format_double(r.tr_h) << ","
           << io::format_double(r.tr_rho) << "," << io::format_double(r.d_j) << "\n";
    return os.str();
}

std::string lemma_suite_json(const LemmaSuiteReport& report) {
    nlohmann::json j;
    j["seed"] = report.seed;
    j["all_pass"] = report.all_pass;
    j["cone"] = {{"cases", report.cone_cases.size()},
                 {"passed", report.cone_passed},
                 {"worst_margin", report.cone_worst_margin}};
    auto& cone_cases = j["cone"]["per_case"] = nlohmann::json::array();
    for (const auto& cc : report.cone_cases)
        cone_cases.push_back({{"word", cc.word},
                              {"cone_margin", cc.cone_margin},
                              {"monotone", cc.monotone},
                              {"absorb_steps", cc.absorb_steps},
                              {"pass", cc.pass}});
    j["comparison"] = {{"a_second", report.a_second},
                       {"b_second", report.b_second},
                       {"a_prime_min", report.a_prime_min},
                       {"a_prime_max", report.a_prime_max},
                       {"rows", report.comparison_rows.size()},
                       {"pass", report.comparison_pass}};
    j["causal"] = {{"total", report.causal.total},
                   {"passed", report.causal.passed},
                   {"worst_margin_literal", report.causal.worst_margin_literal},
                   {"worst_margin_proof", report.causal.worst_margin_proof}};
    auto& att = j["attainment"] = nlohmann::json::array();
    for (const auto& ac : report.attainment)
        att.push_back({{"word", ac.word},
                       {"restricted", ac.restricted},
                       {"unrestricted", ac.unrestricted},
                       {"gap", ac.gap},
                       {"pass", ac.pass}});
    j["failures"] = report.failures;
    return j.dump(2) + "\n";
}

}  // namespace symplab::lab
