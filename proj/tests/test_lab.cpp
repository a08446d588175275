#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symplab/io.hpp"
#include "symplab/lab.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace symplab;

namespace {

Config fast_cfg() {
    Config c;
    c.sampling.cone_samples = 16;
    c.sampling.sample_words = 12;
    c.sampling.causal_curves = 60;
    c.sampling.attainment_words = 2;
    c.sampling.trlen_starts = 8;
    return c;
}

const hyp::Hyperbolization& octagon() {
    static hyp::Hyperbolization h = hyp::octagon_hyperbolization();
    return h;
}

}  // namespace

TEST_CASE("length vectors over the curve system") {
    const Config cfg = fast_cfg();
    const words::CurveSystem cs = words::curve_system(2);
    const lab::LengthVector lv_h = lab::length_vector(&octagon(), cs, cfg);
    CHECK(lv_h.values.size() == 9);
    for (double v : lv_h.values) CHECK(v > 0.0);
    const reps::MaximalRep rho =
        reps::compose_rep(octagon(), reps::diagonal_embedding(2), cfg);
    const lab::LengthVector lv_r = lab::length_vector(&rho, cs, cfg);
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(std::abs(lv_r.values[i] - lv_h.values[i]) <= 1e-6 * (1.0 + lv_h.values[i]));
}

TEST_CASE("word sampling is deterministic and non-conjugate") {
    const auto s1 = lab::sample_words(octagon(), 5, 30);
    const auto s2 = lab::sample_words(octagon(), 5, 30);
    REQUIRE(s1.size() == 30);
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1[i].word == s2[i].word);
        CHECK(s1[i].length_h > 0.0);
    }
    // distinct translation lengths certify non-conjugacy
    for (std::size_t i = 0; i + 1 < s1.size(); ++i)
        CHECK(s1[i].length_h != s1[i + 1].length_h);
}

TEST_CASE("Lipschitz fit: diagonal, irreducible") {
    const Config cfg = fast_cfg();
    const auto sample = lab::sample_words(octagon(), 5, 10);
    const reps::MaximalRep diag2 =
        reps::compose_rep(octagon(), reps::diagonal_embedding(2), cfg);
    const lab::LipschitzFit fd = lab::upper_lipschitz(diag2, octagon(), sample, cfg);
    CHECK(fd.l_fit <= 1.0 + 1e-3);
    CHECK(fd.l_fit >= 1.0 - 1e-3);
    CHECK(fd.b0_fit <= 1e-6);
    CHECK(fd.l_generator >= fd.l_fit - 1e-3);  // the a priori constant dominates
    const reps::MaximalRep irr2 =
        reps::compose_rep(octagon(), reps::irreducible_embedding(2), cfg);
    const lab::LipschitzFit fi = lab::upper_lipschitz(irr2, octagon(), sample, cfg);
    CHECK(fi.l_fit <= 3.0 + 1e-3);
    CHECK(fi.l_fit >= 3.0 - 1e-3);
    // the trivial representation displaces nothing
    const lab::LipschitzFit ft =
        lab::upper_lipschitz(reps::trivial_rep(2, 2), octagon(), sample, cfg);
    CHECK(ft.l_fit == 0.0);
    CHECK(ft.b0_fit == 0.0);
}

TEST_CASE("QI estimate: equality case, bounds, monotone in budget") {
    const Config cfg = fast_cfg();
    const auto sample = lab::sample_words(octagon(), 6, 16);
    const reps::MaximalRep diag2 =
        reps::compose_rep(octagon(), reps::diagonal_embedding(2), cfg);
    std::vector<lab::QIRow> rows;
    const lab::QIEstimate est = lab::qi_estimate(diag2, octagon(), sample, &rows, cfg);
    CHECK(est.samples == 16);
    CHECK(est.skipped == 0);
    CHECK(est.a <= 1.001);
    CHECK(est.b <= 0.001);
    CHECK(est.max_lower_violation <= 0.0 + 1e-12);
    CHECK(est.max_upper_violation <= 0.0 + 1e-12);
    CHECK(rows.size() == 16);
    const reps::MaximalRep irr2 =
        reps::compose_rep(octagon(), reps::irreducible_embedding(2), cfg);
    const lab::QIEstimate esti = lab::qi_estimate(irr2, octagon(), sample, nullptr, cfg);
    CHECK(esti.a >= 1.0);
    CHECK(esti.a <= 3.0 + 1e-3);
    CHECK(esti.max_lower_violation <= 1e-12);
    CHECK(esti.max_upper_violation <= 1e-12);
    // enlarging the sample never decreases the fit
    auto fit_prefix = [&](std::size_t count) {
        double a = 1.0;
        for (std::size_t i = 0; i < count; ++i)
            a = std::max(a, std::max(rows[i].tr_rho / rows[i].tr_h,
                                     rows[i].tr_h / rows[i].tr_rho));
        return a;
    };
    CHECK(fit_prefix(8) <= fit_prefix(16) + 1e-15);
    // trivial representations have no boundary map and are rejected
    const reps::MaximalRep triv = reps::trivial_rep(2, 2);
    CHECK_THROWS_AS(lab::qi_estimate(triv, octagon(), sample, nullptr, cfg),
                    std::invalid_argument);
}

TEST_CASE("orbit probe: identity is constant, twist diverges") {
    const Config cfg = fast_cfg();
    const words::CurveSystem cs = words::curve_system(2);
    const reps::MaximalRep diag2 =
        reps::compose_rep(octagon(), reps::diagonal_embedding(2), cfg);
    const lab::OrbitProbe id_probe = lab::orbit_probe(
        diag2, words::identity_automorphism(2), cs, 4, cfg);
    for (double s : id_probe.sums)
        CHECK(s == doctest::Approx(id_probe.sums[0]).epsilon(1e-9));
    CHECK(!id_probe.diverging);
    const lab::OrbitProbe tw = lab::orbit_probe(
        diag2, words::builtin_twist(2, "a1"), cs, 6, cfg);
    CHECK(tw.k0 <= 3);
    for (std::size_t k = tw.k0 + 1; k < tw.sums.size(); ++k)
        CHECK(tw.sums[k] > tw.sums[k - 1]);
    CHECK(tw.sums.back() >= 2.0 * tw.sums.front());
    CHECK(tw.diverging);
}

TEST_CASE("causal suite passes and is reproducible") {
    const lab::CausalStats s1 = lab::causal_suite(60, 2, 10, 99, 10, 1);
    CHECK(s1.passed == s1.total);
    CHECK(s1.worst_margin_literal >= -1e-9);
    CHECK(s1.worst_margin_proof >= -1e-9);
    const lab::CausalStats s2 = lab::causal_suite(60, 2, 10, 99, 10, 4);
    CHECK(s1.worst_margin_literal == s2.worst_margin_literal);
    CHECK(s1.worst_margin_proof == s2.worst_margin_proof);
}

TEST_CASE("lemma suite aggregates and is bit-reproducible") {
    Config cfg = fast_cfg();
    cfg.sampling.causal_curves = 40;
    const reps::MaximalRep diag2 =
        reps::compose_rep(octagon(), reps::diagonal_embedding(2), cfg);
    const lab::LemmaSuiteReport r1 = lab::lemma_suite(diag2, octagon(), 10, cfg);
    CHECK(r1.all_pass);
    CHECK(r1.cone_passed == static_cast<int>(r1.cone_cases.size()));
    CHECK(r1.cone_worst_margin > 0.0);
    CHECK(r1.b_second >= 0.0);
    CHECK(r1.failures.empty());
    const std::string j1 = lab::lemma_suite_json(r1);
    Config cfg_workers = cfg;
    cfg_workers.sampling.workers = 4;
    const lab::LemmaSuiteReport r2 = lab::lemma_suite(diag2, octagon(), 10, cfg_workers);
    CHECK(j1 == lab::lemma_suite_json(r2));
}

TEST_CASE("lemma suite holds for the irreducible construction") {
    Config cfg = fast_cfg();
    cfg.sampling.cone_samples = 8;
    cfg.sampling.sample_words = 6;
    cfg.sampling.causal_curves = 20;
    cfg.sampling.attainment_words = 1;
    const reps::MaximalRep irr2 =
        reps::compose_rep(octagon(), reps::irreducible_embedding(2), cfg);
    const lab::LemmaSuiteReport r = lab::lemma_suite(irr2, octagon(), 8, cfg);
    CHECK(r.all_pass);
    CHECK(r.cone_worst_margin > 0.0);
    CHECK(r.a_prime_min > 0.0);
    CHECK(r.b_second >= 0.0);
}

TEST_CASE("csv emission shapes") {
    const Config cfg = fast_cfg();
    const words::CurveSystem cs = words::curve_system(2);
    const reps::MaximalRep diag2 =
        reps::compose_rep(octagon(), reps::diagonal_embedding(2), cfg);
    const lab::OrbitProbe probe = lab::orbit_probe(
        diag2, words::builtin_twist(2, "a1"), cs, 2, cfg);
    const std::string csv = lab::orbit_probe_csv(probe, cs);
    CHECK(csv.rfind("k,sum,alpha1", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
    std::vector<lab::QIRow> rows = {{"a1", 1.0, 2.0, 3.0}};
    CHECK(lab::qi_scatter_csv(rows) == "word,tr_h,tr_rho,d_J\n\"a1\",1,2,3\n");
}

TEST_CASE("table files round trip") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "symplab_io_test";
    fs::create_directories(dir);
    const Config cfg;
    // hyperbolization
    const std::string htext = io::serialize_hyperbolization(octagon());
    {
        std::ofstream out(dir / "h.txt");
        out << htext;
    }
    const hyp::Hyperbolization h2 = io::load_hyperbolization((dir / "h.txt").string(), cfg);
    for (int i = 1; i <= 4; ++i)
        CHECK(max_abs(h2.image(i) - octagon().image(i)) <= 1e-12);
    // representation
    const reps::MaximalRep irr2 =
        reps::compose_rep(octagon(), reps::irreducible_embedding(2), cfg);
    {
        std::ofstream out(dir / "rep.txt");
        out << io::serialize_representation(irr2);
    }
    const reps::MaximalRep r2 = io::load_representation((dir / "rep.txt").string(), cfg);
    CHECK(r2.n == 2);
    CHECK(r2.construction == reps::Construction::user);
    for (int i = 1; i <= 4; ++i)
        CHECK(max_abs(r2.image(i) - irr2.image(i)) <= 1e-12);
    CHECK(reps::toledo(r2, cfg) == 4);
    // corrupted tables are rejected
    {
        std::ofstream out(dir / "bad.txt");
        out << "genus: 2\na1: 1,0,0,1\nb1: 1,0,0,1\na2: 1,0,0,1\nb2: 1,0,0,1\n";
    }
    CHECK_THROWS(io::load_hyperbolization((dir / "bad.txt").string(), cfg));
}

TEST_CASE("config files load with strict keys") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "symplab_io_test";
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "cfg.ini");
        out << "[tolerances]\nproximality = 1e-5\n[sampling]\nsample_words = 7\n";
    }
    Config cfg;
    load_config_file((dir / "cfg.ini").string(), cfg);
    CHECK(cfg.tol.proximality == 1e-5);
    CHECK(cfg.sampling.sample_words == 7);
    {
        std::ofstream out(dir / "bad.ini");
        out << "[tolerances]\nnot_a_key = 1\n";
    }
    Config cfg2;
    CHECK_THROWS(load_config_file((dir / "bad.ini").string(), cfg2));
}

TEST_CASE("run records carry output checksums") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "symplab_run_test";
    fs::remove_all(dir);
    io::RunRecord rec;
    rec.run_id = "test";
    rec.seed = 5;
    io::emit_file(rec, dir.string(), "x.csv", "a,b\n1,2\n");
    io::write_run_record(rec, dir.string());
    CHECK(fs::exists(dir / "x.csv"));
    CHECK(fs::exists(dir / "run.json"));
    REQUIRE(rec.outputs.size() == 1);
    CHECK(rec.outputs[0].fnv64 == io::checksum_hex("a,b\n1,2\n"));
}
