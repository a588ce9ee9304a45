// Command-line front end: generation, randomization, census, feature
// extraction, similarity, alignment, evaluation and the experiment harness,
// all seed-deterministic with TSV outputs.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tempalign/experiment.hpp"
#include "tempalign/parallel.hpp"
#include "tempalign/util.hpp"

using namespace tempalign;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    int threads = default_threads();
    std::string out_dir = ".";
    bool quiet = false;
};

void note(const GlobalOpts& g, const std::string& msg) {
    if (!g.quiet) std::cerr << msg << "\n";
}

// Resolved-config echo placed as comment lines in data outputs. Thread count
// and verbosity are excluded: they may not change data bytes.
std::string config_echo(const std::string& sub,
                        const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ostringstream out;
    out << "# tempalign " << sub;
    for (const auto& [k, v] : kv) out << " " << k << "=" << v;
    out << "\n";
    return out.str();
}

void write_output(const std::string& path, const std::string& contents) {
    if (path.empty() || path == "-") {
        std::cout << contents;
        return;
    }
    write_file_atomic(path, contents);
}

std::string u64_str(std::uint64_t v) { return std::to_string(v); }

SimilarityMatrix similarity_for(const TemporalNetwork& g, const TemporalNetwork& h,
                                const std::string& kset_name, bool include_k2,
                                double variance_keep, bool log1p, int threads) {
    const KSet kset = parse_kset(kset_name, include_k2);
    GotOptions gopts;
    gopts.threads = threads;
    const GoTTensor tg = extract_gots(g, kset.ks, kset.mode, gopts);
    const GoTTensor th = extract_gots(h, kset.ks, kset.mode, gopts);
    SimilarityOptions sopts;
    sopts.variance_keep = variance_keep;
    sopts.log1p_counts = log1p;
    sopts.threads = threads;
    return node_similarities(tg, th, kset.ks, sopts);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tempalign: temporal network alignment with graphlet-orbit transitions"};
    app.require_subcommand(1);

    GlobalOpts global;
    app.add_option("--seed", global.seed, "master RNG seed")->capture_default_str();
    app.add_option("--threads", global.threads,
                   "worker threads (TEMPALIGN_THREADS as fallback)")
        ->capture_default_str();
    app.add_option("--out-dir", global.out_dir, "default output directory")
        ->capture_default_str();
    app.add_flag("--quiet", global.quiet, "suppress progress notes");

    // ---- generate ----
    auto* gen = app.add_subcommand("generate", "generate a synthetic temporal network");
    ModelSpec spec;
    std::string gen_model = "random", gen_out;
    bool gen_directed = false;
    gen->add_option("--model", gen_model, "random|scalefree|smallworld|geogd|scalefreegd")
        ->required();
    gen->add_option("--n-start", spec.n_start)->capture_default_str();
    gen->add_option("--n-end", spec.n_end)->capture_default_str();
    gen->add_option("--snapshots", spec.snapshots)->capture_default_str();
    gen->add_option("--density", spec.density)->capture_default_str();
    gen->add_option("--beta", spec.beta, "small-world rewiring probability")
        ->capture_default_str();
    gen->add_option("--epsilon", spec.epsilon, "geo-gd distance scale")->capture_default_str();
    gen->add_option("--geo-seeds", spec.geo_seeds)->capture_default_str();
    gen->add_option("--p-cut", spec.p_cut)->capture_default_str();
    gen->add_option("--p-child", spec.p_child)->capture_default_str();
    gen->add_option("--q-keep", spec.q_keep)->capture_default_str();
    gen->add_flag("--directed", gen_directed, "orient each event with a seeded coin");
    gen->add_option("--out", gen_out, "output event-list path")->required();
    gen->callback([&] {
        spec.model = model_from_string(gen_model);
        spec.seed = global.seed;
        TemporalNetwork net = generate(spec);
        if (gen_directed) net = oriented_copy(net, Rng::stream_seed(global.seed, 0x0717));
        net.save(gen_out, config_echo("generate",
                                      {{"model", gen_model},
                                       {"n-start", std::to_string(spec.n_start)},
                                       {"n-end", std::to_string(spec.n_end)},
                                       {"snapshots", std::to_string(spec.snapshots)},
                                       {"density", fmt_double(spec.density)},
                                       {"directed", gen_directed ? "1" : "0"},
                                       {"seed", u64_str(global.seed)}}));
        note(global, "wrote " + gen_out);
    });

    // ---- randomize ----
    auto* rnd = app.add_subcommand("randomize", "noisy copies under a randomization scheme");
    std::string rnd_in, rnd_scheme = "undirected", rnd_out;
    double rnd_p = 0.0, rnd_gamma = 0.5;
    bool rnd_swap_ts = false, rnd_ladder = false;
    int rnd_instances = 5;
    rnd->add_option("--in", rnd_in)->required();
    rnd->add_option("--scheme", rnd_scheme, "undirected|directed|pure-directed")
        ->capture_default_str();
    rnd->add_option("--p", rnd_p, "rewiring level in [0,1]")->capture_default_str();
    rnd->add_option("--gamma", rnd_gamma, "edge-reversal probability (directed scheme)")
        ->capture_default_str();
    rnd->add_flag("--swap-timestamps", rnd_swap_ts,
                  "alternative timestamp rule: partner takes e1's timestamps");
    rnd->add_flag("--ladder", rnd_ladder, "emit the 11x5 noise ladder with a manifest");
    rnd->add_option("--instances", rnd_instances, "ladder instances per level")
        ->capture_default_str();
    rnd->add_option("--out", rnd_out, "output path (single randomization)");
    rnd->callback([&] {
        const TemporalNetwork net = TemporalNetwork::load(rnd_in);
        const NoiseScheme scheme = scheme_from_string(rnd_scheme);
        if (rnd_ladder) {
            ensure_dir(global.out_dir);
            const auto ladder = noise_ladder(net, scheme, default_noise_levels(),
                                             rnd_instances, global.seed, rnd_gamma);
            std::ostringstream manifest;
            manifest << config_echo("randomize",
                                    {{"in", rnd_in},
                                     {"scheme", rnd_scheme},
                                     {"gamma", fmt_double(rnd_gamma)},
                                     {"ladder", "1"},
                                     {"instances", std::to_string(rnd_instances)},
                                     {"seed", u64_str(global.seed)}});
            manifest << "# level_pct\tinstance\tseed\tpath\tfnv1a64\n";
            for (const auto& entry : ladder) {
                const std::string rel = "p" + std::to_string(entry.level_pct) + "_i" +
                                        std::to_string(entry.instance) + ".tsv";
                const std::string path = global.out_dir + "/" + rel;
                entry.net.save(path);
                manifest << entry.level_pct << "\t" << entry.instance << "\t"
                         << hex64(entry.seed) << "\t" << rel << "\t"
                         << hex64(fnv1a64_file(path)) << "\n";
            }
            write_file_atomic(global.out_dir + "/manifest.tsv", manifest.str());
            note(global, "wrote ladder to " + global.out_dir);
        } else {
            if (rnd_out.empty())
                throw CLI::ValidationError("--out is required without --ladder");
            NoiseSpec nspec;
            nspec.scheme = scheme;
            nspec.p = rnd_p;
            nspec.gamma = rnd_gamma;
            nspec.seed = global.seed;
            nspec.swap_timestamps = rnd_swap_ts;
            randomize(net, nspec).save(
                rnd_out, config_echo("randomize",
                                     {{"in", rnd_in},
                                      {"scheme", rnd_scheme},
                                      {"p", fmt_double(rnd_p)},
                                      {"gamma", fmt_double(rnd_gamma)},
                                      {"swap-timestamps", rnd_swap_ts ? "1" : "0"},
                                      {"seed", u64_str(global.seed)}}));
            note(global, "wrote " + rnd_out);
        }
    });

    // ---- census ----
    auto* cen = app.add_subcommand("census", "orbit occurrences of one snapshot");
    std::string cen_in, cen_mode = "undirected", cen_out;
    int cen_k = 3, cen_t = 1;
    cen->add_option("--in", cen_in)->required();
    cen->add_option("--k", cen_k, "graphlet size (2-4)")->capture_default_str();
    cen->add_option("--mode", cen_mode, "undirected|directed")->capture_default_str();
    cen->add_option("--snapshot", cen_t, "snapshot index (1-based)")->capture_default_str();
    cen->add_option("--out", cen_out, "output path (default stdout)");
    cen->callback([&] {
        const TemporalNetwork net = TemporalNetwork::load(cen_in);
        const Mode mode = mode_from_string(cen_mode);
        if (mode == Mode::directed && !net.directed())
            throw std::invalid_argument("directed census requires a directed network");
        const OrbitCatalog catalog = OrbitCatalog::build(cen_k, mode);
        auto occs = enumerate_occurrences(net.snapshot_at(cen_t), catalog);
        std::sort(occs.begin(), occs.end());
        std::ostringstream out;
        out << config_echo("census", {{"in", cen_in},
                                      {"k", std::to_string(cen_k)},
                                      {"mode", cen_mode},
                                      {"snapshot", std::to_string(cen_t)}});
        out << occurrences_tsv(occs, cen_k);
        write_output(cen_out, out.str());
    });

    // ---- extract ----
    auto* ext = app.add_subcommand("extract", "per-node GoT feature vectors");
    std::string ext_in, ext_kset = "u34", ext_out;
    bool ext_k2 = false, ext_strict = false;
    ext->add_option("--in", ext_in)->required();
    ext->add_option("--k-set", ext_kset, "u3|u4|u34|d3|d4|d34")->capture_default_str();
    ext->add_flag("--include-k2", ext_k2, "prepend the k=2 transition block");
    ext->add_flag("--strict-consecutive", ext_strict,
                  "only pair occurrences in adjacent snapshots");
    ext->add_option("--out", ext_out, "output TSV (default stdout)");
    ext->callback([&] {
        const TemporalNetwork net = TemporalNetwork::load(ext_in);
        const KSet kset = parse_kset(ext_kset, ext_k2);
        GotOptions opts;
        opts.strict_consecutive = ext_strict;
        opts.threads = global.threads;
        const GoTTensor tensor = extract_gots(net, kset.ks, kset.mode, opts);
        std::ostringstream out;
        out << config_echo("extract", {{"in", ext_in},
                                       {"k-set", ext_kset},
                                       {"include-k2", ext_k2 ? "1" : "0"},
                                       {"strict-consecutive", ext_strict ? "1" : "0"}});
        out << features_tsv(tensor);
        write_output(ext_out, out.str());
    });

    // ---- similarity ----
    auto* sim_cmd = app.add_subcommand("similarity", "pairwise node similarity matrix");
    std::string sim_g, sim_h, sim_kset = "u34", sim_out;
    double sim_keep = 0.99;
    bool sim_k2 = false, sim_log1p = false;
    sim_cmd->add_option("g_net", sim_g, "first network")->required();
    sim_cmd->add_option("h_net", sim_h, "second network")->required();
    sim_cmd->add_option("--k-set", sim_kset)->capture_default_str();
    sim_cmd->add_option("--variance-keep", sim_keep)->capture_default_str();
    sim_cmd->add_flag("--include-k2", sim_k2);
    sim_cmd->add_flag("--log1p", sim_log1p, "log1p-transform counts before PCA");
    sim_cmd->add_option("--out", sim_out, "output TSV (default stdout)");
    sim_cmd->callback([&] {
        const TemporalNetwork g = TemporalNetwork::load(sim_g);
        const TemporalNetwork h = TemporalNetwork::load(sim_h);
        const SimilarityMatrix sim =
            similarity_for(g, h, sim_kset, sim_k2, sim_keep, sim_log1p, global.threads);
        std::ostringstream out;
        out << config_echo("similarity", {{"g", sim_g},
                                          {"h", sim_h},
                                          {"k-set", sim_kset},
                                          {"variance-keep", fmt_double(sim_keep)},
                                          {"log1p", sim_log1p ? "1" : "0"}});
        out << similarity_tsv(sim);
        write_output(sim_out, out.str());
    });

    // ---- align ----
    auto* aln_cmd = app.add_subcommand("align", "seed-and-extend alignment");
    std::string aln_g, aln_h, aln_kset = "u34", aln_features = "got", aln_simfile, aln_out;
    double aln_alpha = 0.0, aln_keep = 0.99;
    bool aln_k2 = false;
    aln_cmd->add_option("g_net", aln_g, "smaller network")->required();
    aln_cmd->add_option("h_net", aln_h, "larger network")->required();
    aln_cmd->add_option("--alpha", aln_alpha, "edge-conservation weight")->capture_default_str();
    aln_cmd->add_option("--features", aln_features, "got|file")->capture_default_str();
    aln_cmd->add_option("--k-set", aln_kset)->capture_default_str();
    aln_cmd->add_option("--sim-file", aln_simfile, "similarity TSV for --features file");
    aln_cmd->add_option("--variance-keep", aln_keep)->capture_default_str();
    aln_cmd->add_flag("--include-k2", aln_k2);
    aln_cmd->add_option("--out", aln_out, "alignment TSV")->required();
    aln_cmd->callback([&] {
        const TemporalNetwork g = TemporalNetwork::load(aln_g);
        const TemporalNetwork h = TemporalNetwork::load(aln_h);
        SimilarityMatrix sim;
        if (aln_features == "got") {
            sim = similarity_for(g, h, aln_kset, aln_k2, aln_keep, false, global.threads);
        } else if (aln_features == "file") {
            if (aln_simfile.empty())
                throw CLI::ValidationError("--features file requires --sim-file");
            sim = load_similarity_tsv(aln_simfile);
        } else {
            throw CLI::ValidationError("--features must be got or file");
        }
        const Alignment aln = align(g, h, sim, aln_alpha, global.seed);
        const ObjectiveScore score = score_alignment(aln.mapping, g, h, sim, aln_alpha);
        save_alignment(aln_out, aln, score,
                       config_echo("align", {{"g", aln_g},
                                             {"h", aln_h},
                                             {"alpha", fmt_double(aln_alpha)},
                                             {"features", aln_features},
                                             {"k-set", aln_kset},
                                             {"seed", u64_str(global.seed)}}));
        note(global, "total=" + fmt_double(score.total));
    });

    // ---- evaluate ----
    auto* eval_cmd = app.add_subcommand("evaluate", "AUPR/AUROC over scored network pairs");
    std::string eval_pairs;
    double eval_kstep = 0.01;
    eval_cmd->add_option("--pairs", eval_pairs,
                         "TSV: g_path h_path g_label h_label score")
        ->required();
    eval_cmd->add_option("--k-step", eval_kstep)->capture_default_str();
    eval_cmd->callback([&] {
        std::ifstream in(eval_pairs);
        if (!in) throw ParseError(eval_pairs + ": cannot open file");
        std::vector<ScoredPair> pairs;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            std::string g_path, h_path, g_label, h_label;
            double score;
            if (!(ls >> g_path >> h_path >> g_label >> h_label >> score))
                throw ParseError(eval_pairs + ":" + std::to_string(line_no) +
                                 ": expected 'g_path h_path g_label h_label score'");
            pairs.push_back({g_label, h_label, score});
        }
        const PrRoc m = pr_roc(pairs, eval_kstep);
        std::cout << config_echo("evaluate", {{"pairs", eval_pairs},
                                              {"k-step", fmt_double(eval_kstep)}});
        std::cout << "aupr\tauroc\n"
                  << fmt_double(m.aupr) << "\t" << fmt_double(m.auroc) << "\n";
    });

    // ---- curve ----
    auto* cur = app.add_subcommand("curve", "dis between produced and ideal score curves");
    std::string cur_file, cur_baseline;
    cur->add_option("--curve", cur_file, "TSV: level produced ideal")->required();
    cur->add_option("--baseline", cur_baseline,
                    "baseline curve TSV; adds the relative gain G_O");
    cur->callback([&] {
        const NoiseCurve curve = load_curve_tsv(cur_file);
        const double d = dis(curve);
        std::cout << config_echo("curve",
                                 {{"curve", cur_file},
                                  {"baseline", cur_baseline.empty() ? "-" : cur_baseline}});
        if (cur_baseline.empty()) {
            std::cout << "dis\n" << fmt_double(d) << "\n";
        } else {
            const double d_base = dis(load_curve_tsv(cur_baseline));
            std::cout << "dis\tdis_baseline\tgain_pct\n"
                      << fmt_double(d) << "\t" << fmt_double(d_base) << "\t"
                      << fmt_double(gain_lower_better(d, d_base)) << "\n";
        }
    });

    // ---- catalog ----
    auto* cat = app.add_subcommand("catalog", "graphlet/orbit catalogs");
    auto* cat_dump = cat->add_subcommand("dump", "print graphlets and orbit partitions");
    int cat_k = 3;
    std::string cat_mode = "undirected";
    cat_dump->add_option("--k", cat_k)->capture_default_str();
    cat_dump->add_option("--mode", cat_mode)->capture_default_str();
    cat_dump->callback([&] {
        const OrbitCatalog catalog = OrbitCatalog::build(cat_k, mode_from_string(cat_mode));
        std::cout << config_echo("catalog dump",
                                 {{"k", std::to_string(cat_k)}, {"mode", cat_mode}});
        std::cout << catalog.dump_tsv();
    });

    // ---- experiment ----
    auto* exp = app.add_subcommand("experiment", "end-to-end evaluation harnesses");
    exp->require_subcommand(1);
    auto* exp_syn = exp->add_subcommand("synthetic", "model-separability experiment");
    std::string syn_profile = "desk", syn_kset = "u34";
    int syn_instances = -1;
    std::vector<double> syn_alphas = {0.0, 0.5};
    double syn_keep = 0.99;
    exp_syn->add_option("--profile", syn_profile, "desk|paper")->capture_default_str();
    exp_syn->add_option("--instances", syn_instances, "instances per model (profile default)");
    exp_syn->add_option("--k-set", syn_kset)->capture_default_str();
    exp_syn->add_option("--alphas", syn_alphas)->capture_default_str();
    exp_syn->add_option("--variance-keep", syn_keep)->capture_default_str();
    exp_syn->callback([&] {
        SyntheticConfig cfg;
        cfg.base = syn_profile == "paper" ? paper_profile() : desk_profile();
        cfg.instances = syn_instances > 0 ? syn_instances : default_instances(syn_profile);
        cfg.kset = syn_kset;
        cfg.alphas = syn_alphas;
        cfg.variance_keep = syn_keep;
        cfg.seed = global.seed;
        cfg.out_dir = global.out_dir;
        cfg.threads = global.threads;
        std::ostringstream alphas;
        for (double a : syn_alphas) alphas << (alphas.tellp() > 0 ? "," : "") << fmt_double(a);
        cfg.config_echo = config_echo("experiment synthetic",
                                      {{"profile", syn_profile},
                                       {"instances", std::to_string(cfg.instances)},
                                       {"k-set", syn_kset},
                                       {"alphas", alphas.str()},
                                       {"variance-keep", fmt_double(syn_keep)},
                                       {"seed", u64_str(global.seed)}});
        const SyntheticResult result = run_synthetic(cfg);
        for (const auto& [alpha, m] : result.metrics)
            note(global, "alpha=" + fmt_double(alpha) + " aupr=" + fmt_double(m.aupr) +
                             " auroc=" + fmt_double(m.auroc));
        note(global, "outputs in " + cfg.out_dir);
    });

    auto* exp_self = exp->add_subcommand("self-align", "noise-ladder self-alignment");
    std::string self_in, self_scheme = "undirected", self_kset = "u34";
    std::vector<double> self_alphas = {0.0, 0.5};
    int self_instances = 5;
    double self_keep = 0.99, self_gamma = 0.5;
    exp_self->add_option("--in", self_in)->required();
    exp_self->add_option("--scheme", self_scheme)->capture_default_str();
    exp_self->add_option("--k-set", self_kset)->capture_default_str();
    exp_self->add_option("--alphas", self_alphas)->capture_default_str();
    exp_self->add_option("--instances", self_instances)->capture_default_str();
    exp_self->add_option("--variance-keep", self_keep)->capture_default_str();
    exp_self->add_option("--gamma", self_gamma)->capture_default_str();
    exp_self->callback([&] {
        const TemporalNetwork net = TemporalNetwork::load(self_in);
        SelfAlignConfig cfg;
        cfg.scheme = scheme_from_string(self_scheme);
        cfg.kset = self_kset;
        cfg.alphas = self_alphas;
        cfg.instances = self_instances;
        cfg.variance_keep = self_keep;
        cfg.gamma = self_gamma;
        cfg.seed = global.seed;
        cfg.out_dir = global.out_dir;
        cfg.threads = global.threads;
        std::ostringstream alphas;
        for (double a : self_alphas) alphas << (alphas.tellp() > 0 ? "," : "") << fmt_double(a);
        cfg.config_echo = config_echo("experiment self-align",
                                      {{"in", self_in},
                                       {"scheme", self_scheme},
                                       {"k-set", self_kset},
                                       {"alphas", alphas.str()},
                                       {"instances", std::to_string(self_instances)},
                                       {"variance-keep", fmt_double(self_keep)},
                                       {"gamma", fmt_double(self_gamma)},
                                       {"seed", u64_str(global.seed)}});
        const SelfAlignResult result = run_self_alignment(net, cfg);
        for (const auto& ac : result.per_alpha)
            note(global, "alpha=" + fmt_double(ac.alpha) + " dis=" + fmt_double(ac.dis_value));
        note(global, "outputs in " + cfg.out_dir);
    });

    // global flags may follow the subcommand name
    for (auto* sub : app.get_subcommands(nullptr)) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
