// Plain-text table formats and run records.
//
// Word tables (`label: b1,a1` with optional `genus:` header and `[section]`
// groups), hyperbolization tables (`a1: m11,m12,m21,m22`), and
// representation tables (generator line followed by a 2n x 2n CSV block).
// Everything is revalidated on load; nothing is trusted from disk.

#pragma once

#include "symplab/config.hpp"
#include "symplab/hyperbolic.hpp"
#include "symplab/maxreps.hpp"
#include "symplab/words.hpp"

#include <map>
#include <string>
#include <vector>

namespace symplab::io {

// named automorphism tables, certified on load
std::vector<words::Automorphism> load_twists(const std::string& path,
                                             int conjugator_depth = 8);
// labelled curve words (flat `label: word` lines), checked for 9g-9 entries
words::CurveSystem load_curves(const std::string& path);

hyp::Hyperbolization load_hyperbolization(const std::string& path,
                                          const Config& cfg = {});
std::string serialize_hyperbolization(const hyp::Hyperbolization& h);

reps::MaximalRep load_representation(const std::string& path,
                                     const Config& cfg = {});
std::string serialize_representation(const reps::MaximalRep& rho);

// canonical number formatting used by every emitted artifact (shortest
// round-trip representation keeps reruns bit-identical)
std::string format_double(double v);

struct OutputFile {
    std::string name;
    std::uint64_t bytes = 0;
    std::string fnv64;  // hex checksum
};

struct RunRecord {
    std::string run_id;
    std::string command;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> config;
    std::vector<OutputFile> outputs;
};

// writes `content` under dir/name and appends it to the record manifest
void emit_file(RunRecord& record, const std::string& dir,
               const std::string& name, const std::string& content);
// writes run.json (containing the manifest checksums) into dir
void write_run_record(const RunRecord& record, const std::string& dir);

std::string checksum_hex(const std::string& content);

}  // namespace symplab::io
