#include "tempalign/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "tempalign/parallel.hpp"
#include "tempalign/util.hpp"

namespace tempalign {

ModelSpec desk_profile() {
    ModelSpec spec;
    spec.n_start = 50;
    spec.n_end = 200;
    spec.snapshots = 8;
    spec.density = 0.01;
    return spec;
}

ModelSpec paper_profile() { return ModelSpec{}; }

int default_instances(const std::string& profile) {
    if (profile == "desk") return 3;
    if (profile == "paper") return 10;
    throw std::invalid_argument("unknown profile '" + profile + "'");
}

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string net_id(GraphModel model, int instance) {
    return to_string(model) + "_" + std::to_string(instance);
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> cols;
    std::size_t pos = 0;
    while (true) {
        const std::size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            cols.push_back(line.substr(pos));
            break;
        }
        cols.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return cols;
}

// existing rows keyed by their identifying columns, kept verbatim so a
// resumed run rewrites byte-identical output; rows from a run with a
// different echoed config are not reusable
std::unordered_map<std::string, std::string> load_done_rows(
    const std::string& path, const std::vector<int>& key_cols,
    const std::string& config_echo) {
    std::unordered_map<std::string, std::string> done;
    std::ifstream in(path);
    if (!in) return done;
    std::string line;
    if (!config_echo.empty()) {
        const std::string first = config_echo.substr(0, config_echo.find('\n'));
        if (!std::getline(in, line) || line != first) return done;
    }
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cols = split_tabs(line);
        std::string key;
        bool ok = true;
        for (int c : key_cols) {
            if (c >= static_cast<int>(cols.size())) {
                ok = false;
                break;
            }
            key += cols[c];
            key += '\t';
        }
        if (ok) done.emplace(key, line);
    }
    return done;
}

void write_timings(const std::string& out_dir, const PhaseTimings& t) {
    // wall-clock phase times; kept out of the deterministic outputs
    std::ostringstream body;
    body << "# phase\tseconds\n";
    body << "generate\t" << fmt_double(t.generate_s) << "\n";
    body << "extract\t" << fmt_double(t.extract_s) << "\n";
    body << "similarity\t" << fmt_double(t.similarity_s) << "\n";
    body << "align\t" << fmt_double(t.align_s) << "\n";
    write_file_atomic(out_dir + "/timings.tsv", body.str());
}

struct NetworkEntry {
    std::string id;
    GraphModel model;
    int instance;
    const TemporalNetwork* net;
};

}  // namespace

SyntheticResult run_synthetic(const SyntheticConfig& cfg) {
    SyntheticResult result;
    const bool persist = !cfg.out_dir.empty();
    if (persist) ensure_dir(cfg.out_dir);

    double t0 = now_s();
    const auto suite = generate_suite(cfg.base, cfg.instances, cfg.seed);
    result.timings.generate_s = now_s() - t0;

    std::vector<NetworkEntry> nets;
    nets.reserve(suite.size());
    for (const auto& entry : suite)
        nets.push_back({net_id(entry.model, entry.instance), entry.model,
                        entry.instance, &entry.net});

    if (persist) {
        ensure_dir(cfg.out_dir + "/networks");
        std::ostringstream manifest;
        manifest << cfg.config_echo;
        manifest << "# id\tmodel\tinstance\tpath\tfnv1a64\tnodes\tsnapshots\n";
        for (const auto& n : nets) {
            const std::string rel = "networks/" + n.id + ".tsv";
            const std::string path = cfg.out_dir + "/" + rel;
            n.net->save(path);
            manifest << n.id << "\t" << to_string(n.model) << "\t" << n.instance << "\t"
                     << rel << "\t" << hex64(fnv1a64_file(path)) << "\t"
                     << n.net->n_nodes() << "\t" << n.net->snapshot_count() << "\n";
        }
        write_file_atomic(cfg.out_dir + "/networks.tsv", manifest.str());
    }

    const KSet kset = parse_kset(cfg.kset, cfg.include_k2);
    GotOptions got_opts;
    got_opts.threads = 1;  // parallelism lives at the network level here

    t0 = now_s();
    std::vector<std::optional<GoTTensor>> tensors(nets.size());
    parallel_for(static_cast<int>(nets.size()), cfg.threads, [&](int i) {
        tensors[i].emplace(extract_gots(*nets[i].net, kset.ks, kset.mode, got_opts));
    });
    result.timings.extract_s = now_s() - t0;

    const std::string records_path = cfg.out_dir + "/records.tsv";
    auto done = persist ? load_done_rows(records_path, {0, 1, 4}, cfg.config_echo)
                        : std::unordered_map<std::string, std::string>{};

    std::vector<std::pair<int, int>> units;
    for (int i = 0; i < static_cast<int>(nets.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(nets.size()); ++j)
            units.emplace_back(i, j);

    std::vector<std::vector<std::string>> unit_lines(units.size());
    std::mutex timing_mutex;
    double sim_total = 0, align_total = 0;

    parallel_for(static_cast<int>(units.size()), cfg.threads, [&](int u) {
        auto [i, j] = units[u];
        // smaller network plays G
        int gi = i, hi = j;
        if (nets[j].net->n_nodes() < nets[i].net->n_nodes()) std::swap(gi, hi);
        const std::string key_base = nets[gi].id + "\t" + nets[hi].id + "\t";

        bool all_done = true;
        for (double alpha : cfg.alphas)
            if (!done.count(key_base + fmt_double(alpha))) all_done = false;

        std::optional<SimilarityMatrix> sim;
        if (!all_done) {
            SimilarityOptions opts;
            opts.variance_keep = cfg.variance_keep;
            const double s0 = now_s();
            sim = node_similarities(*tensors[gi], *tensors[hi], kset.ks, opts);
            const double s1 = now_s();
            std::lock_guard<std::mutex> lock(timing_mutex);
            sim_total += s1 - s0;
        }
        for (double alpha : cfg.alphas) {
            const std::string key = key_base + fmt_double(alpha);
            auto it = done.find(key);
            if (it != done.end()) {
                unit_lines[u].push_back(it->second);
                continue;
            }
            const double a0 = now_s();
            const Alignment aln =
                align(*nets[gi].net, *nets[hi].net, *sim, alpha, cfg.seed);
            const ObjectiveScore score =
                score_alignment(aln.mapping, *nets[gi].net, *nets[hi].net, *sim, alpha);
            {
                std::lock_guard<std::mutex> lock(timing_mutex);
                align_total += now_s() - a0;
            }
            std::ostringstream line;
            line << nets[gi].id << "\t" << nets[hi].id << "\t" << to_string(nets[gi].model)
                 << "\t" << to_string(nets[hi].model) << "\t" << fmt_double(alpha) << "\t"
                 << fmt_double(score.s_n) << "\t" << fmt_double(score.s_e) << "\t"
                 << fmt_double(score.total);
            unit_lines[u].push_back(line.str());
        }
    });
    result.timings.similarity_s = sim_total;
    result.timings.align_s = align_total;

    std::vector<std::string> lines;
    for (const auto& per_unit : unit_lines)
        for (const auto& line : per_unit) lines.push_back(line);

    for (const auto& line : lines) {
        const auto cols = split_tabs(line);
        PairRecord rec;
        rec.g_id = cols[0];
        rec.h_id = cols[1];
        rec.g_model = cols[2];
        rec.h_model = cols[3];
        rec.alpha = std::stod(cols[4]);
        rec.s_n = std::stod(cols[5]);
        rec.s_e = std::stod(cols[6]);
        rec.total = std::stod(cols[7]);
        result.records.push_back(std::move(rec));
    }

    for (double alpha : cfg.alphas) {
        std::vector<ScoredPair> pairs;
        for (const auto& rec : result.records)
            if (rec.alpha == alpha) pairs.push_back({rec.g_model, rec.h_model, rec.total});
        result.metrics.emplace_back(alpha, pr_roc(pairs));
    }

    if (persist) {
        std::ostringstream records;
        records << cfg.config_echo;
        records << "# g_id\th_id\tg_model\th_model\talpha\ts_n\ts_e\ttotal\n";
        for (const auto& line : lines) records << line << "\n";
        write_file_atomic(records_path, records.str());

        std::ostringstream summary;
        summary << cfg.config_echo;
        summary << "# alpha\taupr\tauroc\n";
        for (const auto& [alpha, m] : result.metrics)
            summary << fmt_double(alpha) << "\t" << fmt_double(m.aupr) << "\t"
                    << fmt_double(m.auroc) << "\n";
        write_file_atomic(cfg.out_dir + "/summary.tsv", summary.str());
        write_timings(cfg.out_dir, result.timings);
    }
    return result;
}

SelfAlignResult run_self_alignment(const TemporalNetwork& net, const SelfAlignConfig& cfg) {
    SelfAlignResult result;
    const bool persist = !cfg.out_dir.empty();
    if (persist) ensure_dir(cfg.out_dir);

    const KSet kset = parse_kset(cfg.kset, cfg.include_k2);

    double t0 = now_s();
    const auto ladder =
        noise_ladder(net, cfg.scheme, cfg.levels_pct, cfg.instances, cfg.seed, cfg.gamma);
    result.timings.generate_s = now_s() - t0;

    if (persist) {
        ensure_dir(cfg.out_dir + "/ladder");
        std::ostringstream manifest;
        manifest << cfg.config_echo;
        manifest << "# level_pct\tinstance\tseed\tpath\tfnv1a64\n";
        for (const auto& entry : ladder) {
            const std::string rel = "ladder/p" + std::to_string(entry.level_pct) + "_i" +
                                    std::to_string(entry.instance) + ".tsv";
            const std::string path = cfg.out_dir + "/" + rel;
            entry.net.save(path);
            manifest << entry.level_pct << "\t" << entry.instance << "\t"
                     << hex64(entry.seed) << "\t" << rel << "\t"
                     << hex64(fnv1a64_file(path)) << "\n";
        }
        write_file_atomic(cfg.out_dir + "/ladder.tsv", manifest.str());
    }

    t0 = now_s();
    GotOptions got_opts;
    got_opts.threads = cfg.threads;
    const GoTTensor original = extract_gots(net, kset.ks, kset.mode, got_opts);
    result.timings.extract_s = now_s() - t0;

    const std::string records_path = cfg.out_dir + "/records.tsv";
    auto done = persist ? load_done_rows(records_path, {0, 1, 2}, cfg.config_echo)
                        : std::unordered_map<std::string, std::string>{};

    std::vector<NodeId> identity(net.n_nodes());
    for (NodeId v = 0; v < net.n_nodes(); ++v) identity[v] = v;

    std::vector<std::vector<std::string>> unit_lines(ladder.size());
    std::mutex timing_mutex;
    double extract_total = 0, sim_total = 0, align_total = 0;

    parallel_for(static_cast<int>(ladder.size()), cfg.threads, [&](int u) {
        const auto& entry = ladder[u];
        const std::string key_base = std::to_string(entry.level_pct) + "\t" +
                                     std::to_string(entry.instance) + "\t";
        bool all_done = true;
        for (double alpha : cfg.alphas)
            if (!done.count(key_base + fmt_double(alpha))) all_done = false;

        std::optional<SimilarityMatrix> sim;
        if (!all_done) {
            GotOptions unit_opts;
            double s0 = now_s();
            const GoTTensor noisy = extract_gots(entry.net, kset.ks, kset.mode, unit_opts);
            double s1 = now_s();
            SimilarityOptions opts;
            opts.variance_keep = cfg.variance_keep;
            sim = node_similarities(original, noisy, kset.ks, opts);
            double s2 = now_s();
            std::lock_guard<std::mutex> lock(timing_mutex);
            extract_total += s1 - s0;
            sim_total += s2 - s1;
        }
        for (double alpha : cfg.alphas) {
            const std::string key = key_base + fmt_double(alpha);
            auto it = done.find(key);
            if (it != done.end()) {
                unit_lines[u].push_back(it->second);
                continue;
            }
            const double a0 = now_s();
            const Alignment aln = align(net, entry.net, *sim, alpha, cfg.seed);
            const ObjectiveScore produced =
                score_alignment(aln.mapping, net, entry.net, *sim, alpha);
            const ObjectiveScore ideal = score_alignment(identity, net, entry.net, *sim, alpha);
            const double nc = node_correctness(aln.mapping, identity);
            {
                std::lock_guard<std::mutex> lock(timing_mutex);
                align_total += now_s() - a0;
            }
            std::ostringstream line;
            line << entry.level_pct << "\t" << entry.instance << "\t" << fmt_double(alpha)
                 << "\t" << fmt_double(produced.total) << "\t" << fmt_double(ideal.total)
                 << "\t" << fmt_double(nc) << "\t" << fmt_double(produced.s_n) << "\t"
                 << fmt_double(produced.s_e);
            unit_lines[u].push_back(line.str());
        }
    });
    result.timings.extract_s += extract_total;
    result.timings.similarity_s = sim_total;
    result.timings.align_s = align_total;

    std::vector<std::string> lines;
    for (const auto& per_unit : unit_lines)
        for (const auto& line : per_unit) lines.push_back(line);

    for (const auto& line : lines) {
        const auto cols = split_tabs(line);
        SelfAlignRow row;
        row.level_pct = std::stoi(cols[0]);
        row.instance = std::stoi(cols[1]);
        row.alpha = std::stod(cols[2]);
        row.produced = std::stod(cols[3]);
        row.ideal = std::stod(cols[4]);
        row.node_corr = std::stod(cols[5]);
        row.s_n = std::stod(cols[6]);
        row.s_e = std::stod(cols[7]);
        result.rows.push_back(row);
    }

    for (double alpha : cfg.alphas) {
        SelfAlignResult::AlphaCurves curves;
        curves.alpha = alpha;
        for (int pct : cfg.levels_pct) {
            double produced = 0, ideal = 0, nc = 0;
            int count = 0;
            for (const auto& row : result.rows) {
                if (row.level_pct != pct || row.alpha != alpha) continue;
                produced += row.produced;
                ideal += row.ideal;
                nc += row.node_corr;
                ++count;
            }
            if (count == 0) continue;
            curves.curve.levels.push_back(pct / 100.0);
            curves.curve.produced.push_back(produced / count);
            curves.curve.ideal.push_back(ideal / count);
            curves.node_corr.push_back(nc / count);
        }
        curves.dis_value = dis(curves.curve);
        result.per_alpha.push_back(std::move(curves));
    }

    if (persist) {
        std::ostringstream records;
        records << cfg.config_echo;
        records << "# level_pct\tinstance\talpha\tproduced\tideal\tnode_correctness\ts_n\ts_e\n";
        for (const auto& line : lines) records << line << "\n";
        write_file_atomic(records_path, records.str());

        std::ostringstream curves;
        curves << cfg.config_echo;
        curves << "# alpha\tnoise\tproduced\tideal\tnode_correctness\n";
        for (const auto& ac : result.per_alpha)
            for (std::size_t i = 0; i < ac.curve.levels.size(); ++i)
                curves << fmt_double(ac.alpha) << "\t" << fmt_double(ac.curve.levels[i])
                       << "\t" << fmt_double(ac.curve.produced[i]) << "\t"
                       << fmt_double(ac.curve.ideal[i]) << "\t"
                       << fmt_double(ac.node_corr[i]) << "\n";
        write_file_atomic(cfg.out_dir + "/curves.tsv", curves.str());

        std::ostringstream summary;
        summary << cfg.config_echo;
        summary << "# alpha\tdis\n";
        for (const auto& ac : result.per_alpha)
            summary << fmt_double(ac.alpha) << "\t" << fmt_double(ac.dis_value) << "\n";
        write_file_atomic(cfg.out_dir + "/summary.tsv", summary.str());
        write_timings(cfg.out_dir, result.timings);
    }
    return result;
}

NoiseCurve load_curve_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    struct Row {
        double level, produced, ideal;
    };
    std::vector<Row> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        Row row{};
        if (!(ls >> row.level >> row.produced >> row.ideal))
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected '<level> <produced> <ideal>'");
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return a.level < b.level; });
    NoiseCurve curve;
    for (const auto& row : rows) {
        curve.levels.push_back(row.level);
        curve.produced.push_back(row.produced);
        curve.ideal.push_back(row.ideal);
    }
    return curve;
}

}  // namespace tempalign
