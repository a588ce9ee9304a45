#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempalign/align.hpp"
#include "tempalign/eval.hpp"
#include "tempalign/noise.hpp"
#include "tempalign/synth_models.hpp"

namespace tempalign {

// Desk-scale profile keeps the full synthetic experiment in the minutes
// range; the paper profile runs the full-scale setting (100 to 1000 nodes,
// 24 snapshots, 10 instances per model).
ModelSpec desk_profile();
ModelSpec paper_profile();
int default_instances(const std::string& profile);  // desk: 3, paper: 10

struct PhaseTimings {
    double generate_s = 0;
    double extract_s = 0;
    double similarity_s = 0;
    double align_s = 0;
};

struct SyntheticConfig {
    ModelSpec base = desk_profile();
    int instances = 3;
    std::string kset = "u34";
    bool include_k2 = false;
    std::vector<double> alphas = {0.0, 0.5};
    double variance_keep = 0.99;
    std::uint64_t seed = 0;
    std::string out_dir;  // empty: in-memory only, no files
    int threads = 1;
    std::string config_echo;  // written as a # header into outputs
};

struct PairRecord {
    std::string g_id, h_id, g_model, h_model;
    double alpha = 0, s_n = 0, s_e = 0, total = 0;
};

struct SyntheticResult {
    std::vector<PairRecord> records;
    std::vector<std::pair<double, PrRoc>> metrics;  // one entry per alpha
    PhaseTimings timings;
};

// Generates the suite, extracts GoTs, aligns every unordered network pair at
// every alpha, and scores model separability. With an out_dir the run is
// resumable: completed records are read back from records.tsv verbatim and
// skipped.
SyntheticResult run_synthetic(const SyntheticConfig& cfg);

struct SelfAlignConfig {
    NoiseScheme scheme = NoiseScheme::undirected;
    std::vector<int> levels_pct = default_noise_levels();
    int instances = 5;
    std::string kset = "u34";
    bool include_k2 = false;
    std::vector<double> alphas = {0.0, 0.5};
    double variance_keep = 0.99;
    double gamma = 0.5;
    std::uint64_t seed = 0;
    std::string out_dir;
    int threads = 1;
    std::string config_echo;
};

struct SelfAlignRow {
    int level_pct = 0;
    int instance = 0;
    double alpha = 0;
    double produced = 0, ideal = 0, node_corr = 0, s_n = 0, s_e = 0;
};

struct SelfAlignResult {
    struct AlphaCurves {
        double alpha = 0;
        NoiseCurve curve;               // per-level means over instances
        std::vector<double> node_corr;  // per-level mean node correctness
        double dis_value = 0;
    };
    std::vector<SelfAlignRow> rows;
    std::vector<AlphaCurves> per_alpha;
    PhaseTimings timings;
};

// Aligns the input network against its full noise ladder.
SelfAlignResult run_self_alignment(const TemporalNetwork& net, const SelfAlignConfig& cfg);

// Curve files for the `curve` subcommand: TSV rows `level produced ideal`.
NoiseCurve load_curve_tsv(const std::string& path);

}  // namespace tempalign
