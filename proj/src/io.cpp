#include "symplab/io.hpp"

#include "symplab/rng.hpp"

#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace symplab::io {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

struct TableLine {
    std::string section;  // current [section], may be empty
    std::string key;
    std::string value;
    int lineno = 0;
};

// shared reader for all `key: value` table files with [section] groups
std::vector<TableLine> read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open table file: " + path);
    std::vector<TableLine> lines;
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
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected `key: value`");
        lines.push_back({section, trim(line.substr(0, colon)),
                         trim(line.substr(colon + 1)), lineno});
    }
    return lines;
}

std::vector<double> parse_csv_row(const std::string& text, const std::string& where) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (...) {
            throw std::runtime_error(where + ": bad number '" + tok + "'");
        }
    }
    return out;
}

words::Word parse_word_value(const std::string& value, int genus,
                             const std::string& where) {
    std::vector<words::Letter> letters;
    std::stringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        auto l = words::parse_letter(tok, genus);
        if (!l) throw std::runtime_error(where + ": bad letter '" + tok + "'");
        letters.push_back(*l);
    }
    return words::Word(letters, genus);
}

int genus_of_table(const std::vector<TableLine>& lines) {
    for (const auto& l : lines)
        if (l.section.empty() && l.key == "genus") return std::stoi(l.value);
    return 2;
}

}  // namespace

std::vector<words::Automorphism> load_twists(const std::string& path,
                                             int conjugator_depth) {
    const auto lines = read_table(path);
    const int genus = genus_of_table(lines);
    std::vector<std::string> order;
    std::map<std::string, std::map<std::string, words::Word>> tables;
    for (const auto& l : lines) {
        if (l.section.empty()) continue;  // header keys
        if (!tables.count(l.section)) order.push_back(l.section);
        tables[l.section][l.key] =
            parse_word_value(l.value, genus, path + ":" + std::to_string(l.lineno));
    }
    std::vector<words::Automorphism> out;
    for (const auto& name : order) {
        auto& table = tables[name];
        std::vector<words::Word> images;
        for (int i = 1; i <= 2 * genus; ++i) {
            const std::string key = words::letter_name(i);
            auto it = table.find(key);
            if (it == table.end())
                throw std::runtime_error(path + ": twist [" + name +
                                         "] is missing generator " + key);
            images.push_back(it->second);
        }
        out.push_back(words::verify_automorphism(images, genus, conjugator_depth, name));
    }
    return out;
}

words::CurveSystem load_curves(const std::string& path) {
    const auto lines = read_table(path);
    const int genus = genus_of_table(lines);
    std::vector<words::Word> curves;
    std::vector<std::string> labels;
    for (const auto& l : lines) {
        if (l.section.empty() && l.key == "genus") continue;
        curves.push_back(
            parse_word_value(l.value, genus, path + ":" + std::to_string(l.lineno)));
        labels.push_back(l.key);
    }
    return words::curve_system_from_words(genus, std::move(curves), std::move(labels));
}

hyp::Hyperbolization load_hyperbolization(const std::string& path, const Config& cfg) {
    const auto lines = read_table(path);
    const int genus = genus_of_table(lines);
    hyp::Hyperbolization h;
    h.genus = genus;
    h.images.assign(2 * genus, hyp::Mat2::Identity());
    std::vector<bool> seen(2 * genus, false);
    for (const auto& l : lines) {
        if (l.section.empty() && l.key == "genus") continue;
        auto letter = words::parse_letter(l.key, genus);
        if (!letter || *letter < 0)
            throw std::runtime_error(path + ":" + std::to_string(l.lineno) +
                                     ": unknown generator '" + l.key + "'");
        const auto row = parse_csv_row(l.value, path + ":" + std::to_string(l.lineno));
        if (row.size() != 4)
            throw std::runtime_error(path + ": generator " + l.key +
                                     " needs 4 entries");
        hyp::Mat2 m;
        m << row[0], row[1], row[2], row[3];
        h.images[static_cast<std::size_t>(*letter) - 1] = m;
        seen[static_cast<std::size_t>(*letter) - 1] = true;
    }
    for (bool s : seen)
        if (!s) throw std::runtime_error(path + ": missing generator rows");
    h.validate(cfg.tol.relator_residual_h, cfg.tol.hyperbolic_margin);
    return h;
}

std::string serialize_hyperbolization(const hyp::Hyperbolization& h) {
    std::ostringstream os;
    os << "genus: " << h.genus << "\n";
    for (int i = 1; i <= 2 * h.genus; ++i) {
        const hyp::Mat2& m = h.image(i);
        os << words::letter_name(i) << ": " << format_double(m(0, 0)) << ","
           << format_double(m(0, 1)) << "," << format_double(m(1, 0)) << ","
           << format_double(m(1, 1)) << "\n";
    }
    return os.str();
}

reps::MaximalRep load_representation(const std::string& path, const Config& cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open representation file: " + path);
    int genus = 2, n = 0;
    std::vector<Matrix> images;
    std::vector<bool> seen;
    std::string line;
    int lineno = 0;
    int pending_gen = 0;  // 1-based generator currently reading rows
    int pending_row = 0;
    auto finish_pending = [&]() {
        if (pending_gen && pending_row != 2 * n)
            throw std::runtime_error(path + ": generator block ended after " +
                                     std::to_string(pending_row) + " rows");
        pending_gen = 0;
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto where = path + ":" + std::to_string(lineno);
        auto colon = line.find(':');
        if (colon != std::string::npos &&
            trim(line.substr(colon + 1)).empty() == false &&
            line.find(',') == std::string::npos) {
            const std::string key = trim(line.substr(0, colon));
            const std::string value = trim(line.substr(colon + 1));
            if (key == "genus") { genus = std::stoi(value); continue; }
            if (key == "n") {
                n = std::stoi(value);
                images.assign(2 * genus, Matrix());
                seen.assign(2 * genus, false);
                continue;
            }
            if (key == "construction") continue;  // metadata only
        }
        if (colon != std::string::npos && trim(line.substr(colon + 1)).empty()) {
            finish_pending();
            if (n == 0) throw std::runtime_error(where + ": `n:` must come first");
            auto letter = words::parse_letter(trim(line.substr(0, colon)), genus);
            if (!letter || *letter < 0)
                throw std::runtime_error(where + ": unknown generator");
            pending_gen = *letter;
            pending_row = 0;
            images[pending_gen - 1] = Matrix::Zero(2 * n, 2 * n);
            seen[pending_gen - 1] = true;
            continue;
        }
        if (!pending_gen) throw std::runtime_error(where + ": unexpected row");
        const auto row = parse_csv_row(line, where);
        if (static_cast<int>(row.size()) != 2 * n)
            throw std::runtime_error(where + ": row needs " + std::to_string(2 * n) +
                                     " entries");
        for (int j = 0; j < 2 * n; ++j) images[pending_gen - 1](pending_row, j) = row[j];
        if (++pending_row == 2 * n) pending_gen = 0;
    }
    finish_pending();
    if (n == 0) throw std::runtime_error(path + ": missing `n:` header");
    for (bool s : seen)
        if (!s) throw std::runtime_error(path + ": missing generator blocks");
    return reps::user_rep(genus, n, std::move(images), cfg);
}

std::string serialize_representation(const reps::MaximalRep& rho) {
    std::ostringstream os;
    os << "genus: " << rho.genus << "\n";
    os << "n: " << rho.n << "\n";
    os << "construction: " << reps::construction_name(rho.construction) << "\n";
    for (int i = 1; i <= 2 * rho.genus; ++i) {
        os << words::letter_name(i) << ":\n";
        const Matrix& m = rho.image(i);
        for (int r = 0; r < 2 * rho.n; ++r) {
            for (int c = 0; c < 2 * rho.n; ++c)
                os << (c ? "," : "") << format_double(m(r, c));
            os << "\n";
        }
    }
    return os.str();
}

std::string format_double(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, end);
}

std::string checksum_hex(const std::string& content) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(
                      fnv1a(content.data(), content.size())));
    return buf;
}

void emit_file(RunRecord& record, const std::string& dir,
               const std::string& name, const std::string& content) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    record.outputs.push_back({name, content.size(), checksum_hex(content)});
}

void write_run_record(const RunRecord& record, const std::string& dir) {
    nlohmann::json j;
    j["run_id"] = record.run_id;
    j["command"] = record.command;
    j["seed"] = record.seed;
    j["versions"] = {{"symplab", "0.1.0"}, {"table_format", 1}};
    j["config"] = record.config;
    auto& outs = j["outputs"] = nlohmann::json::array();
    for (const auto& f : record.outputs)
        outs.push_back({{"name", f.name}, {"bytes", f.bytes}, {"fnv64", f.fnv64}});
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ofstream out(fs::path(dir) / "run.json", std::ios::binary);
    out << j.dump(2) << "\n";
}

}  // namespace symplab::io
