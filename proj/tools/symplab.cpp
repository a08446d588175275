// Command-line laboratory: verify | toledo | trlen | qi | orbit | causal | info.
//
// Exit codes: 0 success, 1 check failures (outputs are still written),
// 2 usage or configuration errors.

#include "symplab/io.hpp"
#include "symplab/lab.hpp"
#include "symplab/rng.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

using namespace symplab;

namespace {

struct CliOptions {
    Config cfg;
    std::string config_path;
    int genus = 2;
    int n = 2;
    std::string rep = "diagonal";  // diagonal | irreducible | file:PATH
    std::string hyp_file;          // optional user hyperbolization table
    std::string twist = "a1";
    int kmax = 10;
    std::string out_dir;
    std::string word;
    bool json_errors = false;
};

std::string make_run_id(const CliOptions& opt) {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now).count();
    std::string blob = std::to_string(opt.cfg.seed) + opt.rep + opt.twist;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%lld-%08llx", static_cast<long long>(secs),
                  static_cast<unsigned long long>(fnv1a(blob.data(), blob.size())));
    return buf;
}

hyp::Hyperbolization resolve_hyperbolization(const CliOptions& opt) {
    if (!opt.hyp_file.empty()) {
        try {
            return io::load_hyperbolization(opt.hyp_file, opt.cfg);
        } catch (const std::exception& e) {
            throw std::invalid_argument(e.what());
        }
    }
    if (opt.genus != 2)
        throw std::invalid_argument(
            "no built-in hyperbolization for genus " + std::to_string(opt.genus) +
            "; supply one with --hyp");
    return hyp::octagon_hyperbolization();
}

words::CurveSystem resolve_curves(const CliOptions& opt) {
    if (!opt.cfg.curves_file.empty()) {
        try {
            return io::load_curves(opt.cfg.curves_file);
        } catch (const std::exception& e) {
            throw std::invalid_argument(e.what());
        }
    }
    return words::curve_system(opt.genus);
}

words::Automorphism resolve_twist(const CliOptions& opt) {
    if (opt.twist == "id") return words::identity_automorphism(opt.genus);
    if (!opt.cfg.twists_file.empty()) {
        try {
            for (const auto& t : io::load_twists(opt.cfg.twists_file,
                                                 opt.cfg.sampling.conjugator_depth))
                if (t.label == opt.twist) return t;
            throw std::runtime_error("twist '" + opt.twist + "' not found in " +
                                     opt.cfg.twists_file);
        } catch (const std::exception& e) {
            throw std::invalid_argument(e.what());
        }
    }
    return words::builtin_twist(opt.genus, opt.twist);
}

reps::MaximalRep resolve_rep(const CliOptions& opt, const hyp::Hyperbolization& h) {
    if (opt.rep == "diagonal")
        return reps::compose_rep(h, reps::diagonal_embedding(opt.n), opt.cfg);
    if (opt.rep == "irreducible")
        return reps::compose_rep(h, reps::irreducible_embedding(opt.n), opt.cfg);
    if (opt.rep.rfind("file:", 0) == 0) {
        try {
            return io::load_representation(opt.rep.substr(5), opt.cfg);
        } catch (const std::exception& e) {
            throw std::invalid_argument(e.what());  // bad table file: usage error
        }
    }
    throw std::invalid_argument("unknown --rep value '" + opt.rep +
                                "' (expected diagonal, irreducible or file:PATH)");
}

words::Word parse_word_arg(const std::string& text, int genus) {
    std::vector<words::Letter> letters;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto l = words::parse_letter(tok, genus);
        if (!l) throw std::invalid_argument("bad letter '" + tok + "' in --word");
        letters.push_back(*l);
    }
    return words::Word(letters, genus);
}

io::RunRecord begin_record(const CliOptions& opt, const std::string& command) {
    io::RunRecord rec;
    rec.run_id = make_run_id(opt);
    rec.command = command;
    rec.seed = opt.cfg.seed;
    rec.config = opt.cfg.snapshot();
    return rec;
}

std::string out_dir_for(const CliOptions& opt, const io::RunRecord& rec) {
    if (!opt.out_dir.empty()) return opt.out_dir;
    return "runs/" + rec.run_id;
}

int run_verify(const CliOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto h = resolve_hyperbolization(opt);
    const auto rho = resolve_rep(opt, h);
    const auto report = lab::lemma_suite(rho, h, opt.cfg.sampling.cone_samples, opt.cfg);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > 600.0)
        std::fprintf(stderr, "warning: verify took %.0fs (budget 600s)\n", elapsed);
    io::RunRecord rec = begin_record(opt, "verify");
    const std::string dir = out_dir_for(opt, rec);
    io::emit_file(rec, dir, "lemma_suite.json", lab::lemma_suite_json(report));
    io::emit_file(rec, dir, "qi_scatter.csv", lab::qi_scatter_csv(report.comparison_rows));
    io::write_run_record(rec, dir);
    std::printf("cone        %d/%zu  worst margin %.3e\n", report.cone_passed,
                report.cone_cases.size(), report.cone_worst_margin);
    std::printf("comparison  A''=%g fitted B''=%.6f (%zu rows)\n", report.a_second,
                report.b_second, report.comparison_rows.size());
    std::printf("causal      %d/%d  worst margins %.3e / %.3e\n", report.causal.passed,
                report.causal.total, report.causal.worst_margin_literal,
                report.causal.worst_margin_proof);
    std::printf("attainment  %d/%zu\n", report.attainment_passed,
                report.attainment.size());
    std::printf("%s  (outputs in %s)\n", report.all_pass ? "PASS" : "FAIL",
                dir.c_str());
    return report.all_pass ? 0 : 1;
}

int run_toledo(const CliOptions& opt) {
    const auto h = resolve_hyperbolization(opt);
    const auto rho = resolve_rep(opt, h);
    const auto result = reps::toledo_detailed(rho, opt.cfg);
    std::printf("toledo: %d\nmilnor-wood bound: %d\nmaximal: %s\n", result.value,
                rho.milnor_wood_bound(),
                std::abs(result.value) == rho.milnor_wood_bound() ? "yes" : "no");
    std::printf("winding residual: %.3e (%d samples)\n", result.residual,
                result.samples);
    return 0;
}

int run_trlen(const CliOptions& opt) {
    const auto h = resolve_hyperbolization(opt);
    const auto rho = resolve_rep(opt, h);
    if (!opt.word.empty()) {
        const words::Word w = parse_word_arg(opt.word, opt.genus);
        const auto t = reps::translation_length_sp(rho, w, opt.cfg);
        std::printf("tr_h   = %.12f\n", hyp::translation_length_h(h, w));
        std::printf("tr_rho = %.12f  (lower bound %.12f, %d starts)\n", t.value,
                    t.lower_bound, t.starts);
        return 0;
    }
    const auto system = resolve_curves(opt);
    const auto lv_h = lab::length_vector(&h, system, opt.cfg);
    const auto lv_r = lab::length_vector(&rho, system, opt.cfg);
    std::printf("%-12s %14s %14s\n", "curve", "tr_h", "tr_rho");
    for (std::size_t i = 0; i < system.labels.size(); ++i)
        std::printf("%-12s %14.9f %14.9f\n", system.labels[i].c_str(),
                    lv_h.values[i], lv_r.values[i]);
    return 0;
}

int run_qi(const CliOptions& opt) {
    const auto h = resolve_hyperbolization(opt);
    const auto rho = resolve_rep(opt, h);
    const auto sample = lab::sample_words(h, opt.cfg.sampling.word_length_budget,
                                          opt.cfg.sampling.sample_words);
    std::vector<lab::QIRow> rows;
    const auto est = lab::qi_estimate(rho, h, sample, &rows, opt.cfg);
    io::RunRecord rec = begin_record(opt, "qi");
    const std::string dir = out_dir_for(opt, rec);
    io::emit_file(rec, dir, "qi_scatter.csv", lab::qi_scatter_csv(rows));
    io::write_run_record(rec, dir);
    std::printf("A = %.6f  B = %.6f  (%d words, %d skipped)\n", est.a, est.b,
                est.samples, est.skipped);
    std::printf("violations: lower %.3e upper %.3e\n", est.max_lower_violation,
                est.max_upper_violation);
    std::printf("axis ratio tr_h/d_J in [%.6f, %.6f]\n", est.lemma_ratio_min,
                est.lemma_ratio_max);
    std::printf("outputs in %s\n", dir.c_str());
    return 0;
}

int run_orbit(const CliOptions& opt) {
    const auto h = resolve_hyperbolization(opt);
    const auto rho = resolve_rep(opt, h);
    const auto system = resolve_curves(opt);
    const words::Automorphism psi = resolve_twist(opt);
    const auto probe = lab::orbit_probe(rho, psi, system, opt.kmax, opt.cfg);
    io::RunRecord rec = begin_record(opt, "orbit");
    const std::string dir = out_dir_for(opt, rec);
    io::emit_file(rec, dir, "orbit_probe.csv", lab::orbit_probe_csv(probe, system));
    io::write_run_record(rec, dir);
    for (std::size_t k = 0; k < probe.sums.size(); ++k)
        std::printf("k=%-3zu sum=%.9f\n", k, probe.sums[k]);
    std::printf("increasing after k0=%d, final/initial=%.3f, diverging=%s\n",
                probe.k0, probe.sums.back() / probe.sums.front(),
                probe.diverging ? "yes" : "no");
    std::printf("outputs in %s\n", dir.c_str());
    return 0;
}

int run_causal(const CliOptions& opt) {
    const auto stats = lab::causal_suite(
        opt.cfg.sampling.causal_curves, opt.cfg.sampling.causal_n,
        opt.cfg.sampling.causal_max_samples, opt.cfg.seed,
        opt.cfg.sampling.causal_refine_depth, opt.cfg.sampling.workers);
    io::RunRecord rec = begin_record(opt, "causal");
    const std::string dir = out_dir_for(opt, rec);
    nlohmann::json j = {{"total", stats.total},
                        {"passed", stats.passed},
                        {"worst_margin_literal", stats.worst_margin_literal},
                        {"worst_margin_proof", stats.worst_margin_proof}};
    io::emit_file(rec, dir, "causal.json", j.dump(2) + "\n");
    io::write_run_record(rec, dir);
    std::printf("causal bound: %d/%d curves, worst margins %.3e / %.3e\n",
                stats.passed, stats.total, stats.worst_margin_literal,
                stats.worst_margin_proof);
    std::printf("outputs in %s\n", dir.c_str());
    return stats.passed == stats.total ? 0 : 1;
}

int run_info(const CliOptions& opt) {
    std::printf("symplab 0.1.0\n");
    const auto h = hyp::octagon_hyperbolization();
    std::printf("octagon hyperbolization: relator residual %.3e, generator "
                "length %.12f\n",
                h.relator_residual(), hyp::translation_length_h(h.image(1)));
    const auto twists = words::builtin_twists(2);
    std::printf("built-in twists:");
    for (const auto& t : twists) std::printf(" %s", t.label.c_str());
    std::printf("\n");
    const auto system = words::curve_system(2);
    std::printf("curve system (9g-9 = %zu):", system.curves.size());
    for (const auto& l : system.labels) std::printf(" %s", l.c_str());
    std::printf("\nconfig defaults:\n");
    for (const auto& [k, v] : opt.cfg.snapshot())
        std::printf("  %s = %s\n", k.c_str(), v.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CliOptions opt;
    CLI::App app{"symplectic representation laboratory"};
    app.require_subcommand(1);

    std::string seed_text;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "config file (INI sections)");
        sub->add_option("--seed", seed_text, "64-bit seed (env SYMPLAB_SEED)");
        sub->add_option("--genus", opt.genus, "surface genus (built-ins: 2)");
        sub->add_option("--n", opt.n, "half-dimension of Sp(2n,R)");
        sub->add_option("--rep", opt.rep, "diagonal | irreducible | file:PATH");
        sub->add_option("--hyp", opt.hyp_file, "hyperbolization table file");
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--workers", opt.cfg.sampling.workers,
                        "worker threads (0 = hardware)");
        sub->add_flag("--json-errors", opt.json_errors,
                      "machine-readable errors on stderr");
    };
    auto* verify = app.add_subcommand("verify", "run the full lemma suite");
    add_common(verify);
    auto* toledo = app.add_subcommand("toledo", "Toledo invariant of a representation");
    add_common(toledo);
    auto* trlen = app.add_subcommand("trlen", "translation lengths over the curve system");
    add_common(trlen);
    trlen->add_option("--word", opt.word, "single word, e.g. a1,b1,-a2");
    auto* qi = app.add_subcommand("qi", "fit quasi-isometry constants");
    add_common(qi);
    auto* orbit = app.add_subcommand("orbit", "twist orbit length sums");
    add_common(orbit);
    orbit->add_option("--twist", opt.twist, "twist label (a1,b1,a2,b2,c or id)");
    orbit->add_option("--kmax", opt.kmax, "largest twist power");
    auto* causal = app.add_subcommand("causal", "Monte Carlo causal length bound");
    add_common(causal);
    auto* info = app.add_subcommand("info", "print built-in data and defaults");
    add_common(info);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (!opt.config_path.empty()) load_config_file(opt.config_path, opt.cfg);
        if (const char* env = std::getenv("SYMPLAB_SEED"))
            opt.cfg.seed = std::strtoull(env, nullptr, 10);
        if (!seed_text.empty())
            opt.cfg.seed = std::strtoull(seed_text.c_str(), nullptr, 10);
    } catch (const std::exception& e) {
        if (opt.json_errors)
            std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        else
            std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) return run_verify(opt);
        if (toledo->parsed()) return run_toledo(opt);
        if (trlen->parsed()) return run_trlen(opt);
        if (qi->parsed()) return run_qi(opt);
        if (orbit->parsed()) return run_orbit(opt);
        if (causal->parsed()) return run_causal(opt);
        if (info->parsed()) return run_info(opt);
    } catch (const std::invalid_argument& e) {
        if (opt.json_errors)
            std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        else
            std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        if (opt.json_errors)
            std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
