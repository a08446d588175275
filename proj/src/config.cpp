#include "symplab/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace symplab {

namespace {

struct Entry {
    std::string section;
    std::string key;
    std::function<void(Config&, const std::string&)> set;
    std::function<std::string(const Config&)> get;
};

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::runtime_error("bad float: " + s);
    return v;
}

int parse_int(const std::string& s) {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::runtime_error("bad integer: " + s);
    return static_cast<int>(v);
}

std::vector<Entry> registry() {
    std::vector<Entry> r;
    auto tol = [&r](const char* key, double Tolerances::*m) {
        r.push_back({"tolerances", key,
                     [m](Config& c, const std::string& v) { c.tol.*m = parse_double(v); },
                     [m](const Config& c) { return fmt_double(c.tol.*m); }});
    };
    auto smp = [&r](const char* key, int Sampling::*m) {
        r.push_back({"sampling", key,
                     [m](Config& c, const std::string& v) { c.sampling.*m = parse_int(v); },
                     [m](const Config& c) { return std::to_string(c.sampling.*m); }});
    };
    tol("symplectic", &Tolerances::symplectic);
    tol("j_square", &Tolerances::j_square);
    tol("q_symmetry", &Tolerances::q_symmetry);
    tol("posdef_min_eig", &Tolerances::posdef_min_eig);
    tol("lagrangian_isotropy", &Tolerances::lagrangian_isotropy);
    tol("lagrangian_rank", &Tolerances::lagrangian_rank);
    tol("transversality", &Tolerances::transversality);
    tol("principal_angle", &Tolerances::principal_angle);
    tol("cone_margin", &Tolerances::cone_margin);
    tol("y_offblock", &Tolerances::y_offblock);
    tol("relator_residual_h", &Tolerances::relator_residual_h);
    tol("hyperbolic_margin", &Tolerances::hyperbolic_margin);
    tol("relator_residual_rep", &Tolerances::relator_residual_rep);
    tol("boundary_equivariance", &Tolerances::boundary_equivariance);
    tol("winding_integrality", &Tolerances::winding_integrality);
    tol("proximality", &Tolerances::proximality);
    tol("trlen_improvement", &Tolerances::trlen_improvement);
    tol("trlen_lb_slack", &Tolerances::trlen_lb_slack);
    tol("attainment", &Tolerances::attainment);
    smp("word_length_budget", &Sampling::word_length_budget);
    smp("sample_words", &Sampling::sample_words);
    smp("cone_samples", &Sampling::cone_samples);
    smp("causal_curves", &Sampling::causal_curves);
    smp("causal_n", &Sampling::causal_n);
    smp("causal_max_samples", &Sampling::causal_max_samples);
    smp("causal_refine_depth", &Sampling::causal_refine_depth);
    smp("orbit_kmax", &Sampling::orbit_kmax);
    smp("attainment_words", &Sampling::attainment_words);
    smp("trlen_starts", &Sampling::trlen_starts);
    smp("monotone_powers", &Sampling::monotone_powers);
    smp("conjugator_depth", &Sampling::conjugator_depth);
    smp("workers", &Sampling::workers);
    r.push_back({"curves", "file",
                 [](Config& c, const std::string& v) { c.curves_file = v; },
                 [](const Config& c) { return c.curves_file; }});
    r.push_back({"twists", "file",
                 [](Config& c, const std::string& v) { c.twists_file = v; },
                 [](const Config& c) { return c.twists_file; }});
    return r;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> Config::snapshot() const {
    std::map<std::string, std::string> out;
    for (const auto& e : registry()) out[e.section + "." + e.key] = e.get(*this);
    out["seed"] = std::to_string(seed);
    return out;
}

void apply_override(Config& cfg, const std::string& section,
                    const std::string& key, const std::string& value) {
    for (const auto& e : registry()) {
        if (e.section == section && e.key == key) {
            e.set(cfg, value);
            return;
        }
    }
    throw std::runtime_error("unknown config key [" + section + "] " + key);
}

void load_config_file(const std::string& path, Config& cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        try {
            apply_override(cfg, section, trim(line.substr(0, eq)),
                           trim(line.substr(eq + 1)));
        } catch (const std::exception& ex) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                                     ex.what());
        }
    }
}

}  // namespace symplab
