// prunedec: train, prune, and evaluate neural decoders for short block codes.
//
// Subcommands:
//   train    train one decoder, write checkpoint + training curve CSV
//   lth      iterative prune-reset-retrain trajectory (resumable)
//   oneshot  train dense, prune once, retrain
//   eval     BER/accuracy of decoders on a checkpoint, CSV + SVG
//   sweep    BER-vs-SNR curves for each round of a saved trajectory
//
// Exit codes: 0 success, 2 config error, 3 runtime failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "prunedec/prunedec.hpp"

namespace fs = std::filesystem;
using namespace prunedec;

namespace {

struct TrainOpts {
    std::string code;
    std::vector<int> hidden;
    std::vector<int> dims;  // full layer dims; overrides hidden when given
    double train_snr_db = std::numeric_limits<double>::quiet_NaN();
    double lr = 1e-3;
    int batch = 256;
    int max_steps = 0;  // 0 = per-code default
    int patience = 10;
    int val_batch = 10000;
    std::uint64_t seed = 1;
};

void add_train_options(CLI::App* cmd, TrainOpts& o) {
    cmd->add_option("--code", o.code, "Code: hamming74 or polar168")->required();
    cmd->add_option("--hidden", o.hidden, "Hidden layer sizes (default 64,64 / 256,256)")->delimiter(',');
    cmd->add_option("--dims", o.dims, "Full layer dims incl. input/output (overrides --hidden)")
        ->delimiter(',');
    cmd->add_option("--train-snr-db", o.train_snr_db, "Training Eb/N0 in dB (default 0 / 2)");
    cmd->add_option("--lr", o.lr, "Learning rate")->capture_default_str();
    cmd->add_option("--batch", o.batch, "Batch size")->capture_default_str();
    cmd->add_option("--max-steps", o.max_steps, "Step cap (default 50000 / 100000)");
    cmd->add_option("--patience", o.patience, "Early-stop patience in evaluations")->capture_default_str();
    cmd->add_option("--val-batch", o.val_batch, "Validation words")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str()->envname("PRUNEDEC_SEED");
}

struct ResolvedTrain {
    CodeSpec spec;
    std::vector<int> dims;
    TrainConfig cfg;
};

ResolvedTrain resolve_train(const TrainOpts& o) {
    ResolvedTrain r;
    r.spec = build_codebook(code_name_from_str(o.code));
    const bool hamming = r.spec.name == CodeName::Hamming74;
    if (!o.dims.empty()) {
        r.dims = o.dims;
        if (r.dims.front() != r.spec.n || r.dims.back() != r.spec.n)
            throw std::invalid_argument("--dims must start and end with n=" + std::to_string(r.spec.n));
    } else {
        std::vector<int> hidden = o.hidden;
        if (hidden.empty()) hidden = hamming ? std::vector<int>{64, 64} : std::vector<int>{256, 256};
        for (int h : hidden)
            if (h < 1) throw std::invalid_argument("--hidden entries must be >= 1");
        r.dims.push_back(r.spec.n);
        r.dims.insert(r.dims.end(), hidden.begin(), hidden.end());
        r.dims.push_back(r.spec.n);
    }
    r.cfg.learning_rate = o.lr;
    r.cfg.batch_size = o.batch;
    r.cfg.max_steps = o.max_steps > 0 ? o.max_steps : (hamming ? 50000 : 100000);
    r.cfg.patience = o.patience;
    r.cfg.val_batch = o.val_batch;
    r.cfg.train_ebn0_db = std::isnan(o.train_snr_db) ? (hamming ? 0.0 : 2.0) : o.train_snr_db;
    r.cfg.seed = o.seed;
    return r;
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

std::string round_ckpt_name(int round) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "round_%03d.ckpt", round);
    return buf;
}

void write_history_csv(const std::string& path, const std::vector<HistoryRow>& history) {
    CsvTable t;
    t.header = {"step", "train_loss", "val_loss", "val_accuracy"};
    for (const auto& h : history)
        t.rows.push_back({std::to_string(h.step), format_double(h.train_loss), format_double(h.val_loss),
                          format_double(h.val_accuracy)});
    write_csv(path, t);
}

void write_index_csv(const std::string& path, const std::vector<TicketRecord>& records) {
    CsvTable t;
    t.header = {"round", "pruned_fraction", "val_loss", "accuracy"};
    for (const auto& r : records)
        t.rows.push_back({std::to_string(r.round), format_double(r.pruned_fraction_global),
                          format_double(r.val_loss), format_double(r.accuracy)});
    write_csv(path, t);
}

CsvTable eval_table(const EvalReport& report) {
    CsvTable t;
    t.header = {"ebn0_db", "decoder", "pruned_fraction", "b", "ber", "ber_ci95", "acc_word", "acc_bit",
                "samples"};
    for (const auto& r : report)
        t.rows.push_back({format_double(r.ebn0_db), r.decoder,
                          r.pruned_fraction ? format_double(*r.pruned_fraction) : "",
                          r.b ? std::to_string(*r.b) : "", format_double(r.ber), format_double(r.ber_ci95),
                          format_double(r.acc_word), format_double(r.acc_bit), std::to_string(r.samples)});
    return t;
}

// Groups eval rows into one plot series per decoder label, in first-seen order.
std::vector<PlotSeries> series_from_report(const EvalReport& report,
                                           const std::map<std::string, std::string>& rename = {}) {
    std::vector<PlotSeries> series;
    for (const auto& row : report) {
        std::string name = row.decoder;
        if (auto it = rename.find(name); it != rename.end()) name = it->second;
        PlotSeries* s = nullptr;
        for (auto& x : series)
            if (x.name == name) s = &x;
        if (!s) {
            series.push_back({name, {}});
            s = &series.back();
        }
        s->points.emplace_back(row.ebn0_db, row.ber);
    }
    return series;
}

// ---- config echo (key = value under one section; doubles as a --config file)

std::string echo_config(const std::string& section, const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string out = "[" + section + "]\n";
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    return out;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

std::vector<std::pair<std::string, std::string>> parse_echo(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> kv;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string k = line.substr(0, eq);
        std::string v = line.substr(eq + 1);
        const auto trim = [](std::string& s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
        };
        trim(k);
        trim(v);
        kv.emplace_back(k, v);
    }
    return kv;
}

// ---- decoder list parsing for eval

std::vector<Decoder> build_decoders(const std::vector<std::string>& tokens, const std::vector<int>& bs,
                                    const MaskedMlp* net) {
    std::vector<Decoder> out;
    for (const std::string& tok : tokens) {
        if (tok == "ml") {
            out.push_back(Decoder::ml());
        } else if (tok == "hard") {
            if (!net) throw std::invalid_argument("decoder 'hard' requires --ckpt");
            out.push_back(Decoder::hard(*net));
        } else if (tok == "semisoft") {
            if (!net) throw std::invalid_argument("decoder 'semisoft' requires --ckpt");
            for (int b : bs) out.push_back(Decoder::semisoft(*net, b));
        } else if (tok.rfind("semisoft:", 0) == 0) {
            if (!net) throw std::invalid_argument("decoder 'semisoft' requires --ckpt");
            out.push_back(Decoder::semisoft(*net, std::stoi(tok.substr(9))));
        } else {
            throw std::invalid_argument("unknown decoder '" + tok + "' (use hard, semisoft[:b], ml)");
        }
    }
    for (const Decoder& d : out)
        if (d.kind == Decoder::Kind::SemiSoft && (d.b < 0 || d.b > 16))
            throw std::invalid_argument("semisoft b out of range [0,16]");
    return out;
}

// ---------------------------------------------------------------- commands

int cmd_train(const TrainOpts& topts, const std::string& out_dir) {
    const ResolvedTrain rt = resolve_train(topts);
    fs::create_directories(out_dir);
    MaskedMlp net = init_network(rt.dims, rt.cfg.seed);
    TrainResult res = train(std::move(net), rt.spec, rt.cfg);
    CheckpointMeta meta{rt.cfg.seed, rt.cfg.train_ebn0_db, res.steps_run, code_name_str(rt.spec.name)};
    save_checkpoint((fs::path(out_dir) / "checkpoint.ckpt").string(), res.checkpoint, meta);
    write_history_csv((fs::path(out_dir) / "training_curve.csv").string(), res.history);
    std::printf("trained %s dims", code_name_str(rt.spec.name));
    for (int d : rt.dims) std::printf(" %d", d);
    std::printf(": steps=%ld best_val_loss=%s val_acc=%s\n", res.steps_run,
                format_double(res.best_val_loss).c_str(),
                format_double(res.history.empty() ? 0.0 : res.history.back().val_accuracy).c_str());
    return 0;
}

struct PruneCliOpts {
    double rate = 0.2;
    double out_scale = 0.5;
    int rounds = 17;
    long long eval_words = 100000;
};

std::string lth_echo(const TrainOpts& t, const ResolvedTrain& rt, const PruneCliOpts& p, const char* section) {
    return echo_config(section, {
                                    {"code", t.code},
                                    {"dims", join_ints(rt.dims)},
                                    {"train-snr-db", format_double(rt.cfg.train_ebn0_db)},
                                    {"lr", format_double(rt.cfg.learning_rate)},
                                    {"batch", std::to_string(rt.cfg.batch_size)},
                                    {"max-steps", std::to_string(rt.cfg.max_steps)},
                                    {"patience", std::to_string(rt.cfg.patience)},
                                    {"val-batch", std::to_string(rt.cfg.val_batch)},
                                    {"seed", std::to_string(rt.cfg.seed)},
                                    {"rate", format_double(p.rate)},
                                    {"out-scale", format_double(p.out_scale)},
                                    {"eval-words", std::to_string(p.eval_words)},
                                    {"rounds", std::to_string(p.rounds)},
                                });
}

// Loads a trajectory back from index.csv + round checkpoints.
TicketTrajectory load_trajectory(const std::string& dir) {
    TicketTrajectory traj;
    const fs::path index = fs::path(dir) / "index.csv";
    if (!fs::exists(index)) return traj;
    const CsvTable t = read_csv(index.string());
    const int c_round = t.column("round"), c_pf = t.column("pruned_fraction"), c_vl = t.column("val_loss"),
              c_acc = t.column("accuracy");
    for (const auto& row : t.rows) {
        TicketRecord rec;
        rec.round = std::stoi(row[c_round]);
        rec.pruned_fraction_global = std::stod(row[c_pf]);
        rec.val_loss = std::stod(row[c_vl]);
        rec.accuracy = std::stod(row[c_acc]);
        const fs::path ckpt = fs::path(dir) / round_ckpt_name(rec.round);
        if (!fs::exists(ckpt))
            throw std::runtime_error("trajectory " + dir + " lists round " + std::to_string(rec.round) +
                                     " but " + ckpt.string() + " is missing");
        rec.checkpoint = load_checkpoint(ckpt.string()).net;
        traj.records.push_back(std::move(rec));
    }
    return traj;
}

int cmd_prune(const TrainOpts& topts, const PruneCliOpts& popts, const std::string& out_dir, bool oneshot) {
    const ResolvedTrain rt = resolve_train(topts);
    if (popts.rounds < 1) throw std::invalid_argument("--rounds must be >= 1");
    if (!(popts.rate > 0.0) || popts.rate >= 1.0) throw std::invalid_argument("--rate must be in (0,1)");
    fs::create_directories(out_dir);

    const char* section = oneshot ? "oneshot" : "lth";
    const std::string echo = lth_echo(topts, rt, popts, section);
    const fs::path echo_path = fs::path(out_dir) / "config.echo.ini";

    TicketTrajectory resume;
    if (fs::exists(echo_path) && !oneshot) {
        std::ifstream is(echo_path);
        std::stringstream ss;
        ss << is.rdbuf();
        auto old_kv = parse_echo(ss.str());
        auto new_kv = parse_echo(echo);
        for (const auto& [k, v] : new_kv) {
            if (k == "rounds") continue;
            bool ok = false;
            for (const auto& [k2, v2] : old_kv)
                if (k2 == k && v2 == v) ok = true;
            if (!ok)
                throw std::invalid_argument("output dir " + out_dir +
                                            " holds a trajectory with a different config (key '" + k +
                                            "'); use a fresh --out");
        }
        resume = load_trajectory(out_dir);
        while (!resume.records.empty() && resume.records.back().round >= popts.rounds) resume.records.pop_back();
    }
    {
        std::ofstream os(echo_path);
        os << echo;
    }

    std::vector<TicketRecord> written;
    for (const TicketRecord& r : resume.records) written.push_back(r);
    LthOptions opts;
    opts.eval_words = popts.eval_words;
    opts.on_round = [&](const TicketRecord& rec) {
        CheckpointMeta meta{rt.cfg.seed, rt.cfg.train_ebn0_db, 0, code_name_str(rt.spec.name)};
        save_checkpoint((fs::path(out_dir) / round_ckpt_name(rec.round)).string(), rec.checkpoint, meta);
        written.push_back(rec);
        write_index_csv((fs::path(out_dir) / "index.csv").string(), written);
        std::printf("round %d: pruned=%.4f val_loss=%s acc=%s\n", rec.round, rec.pruned_fraction_global,
                    format_double(rec.val_loss).c_str(), format_double(rec.accuracy).c_str());
    };

    if (oneshot) {
        run_oneshot(rt.spec, rt.dims, rt.cfg, popts.rate, popts.out_scale, opts);
    } else {
        PruneSchedule sched{PruneSchedule::Mode::IterativeLth, popts.rate, popts.rounds, popts.out_scale};
        run_lth(rt.spec, rt.dims, rt.cfg, sched, opts, resume.records.empty() ? nullptr : &resume);
        if (!resume.records.empty() && written.size() == resume.records.size())
            write_index_csv((fs::path(out_dir) / "index.csv").string(), written);
    }
    return 0;
}

struct EvalCliOpts {
    std::string code;
    std::string ckpt;
    std::vector<std::string> decoders;
    std::vector<int> bs{2, 3};
    std::vector<double> snr_db;
    long long words = 0;
    long long min_errors = 100;
    long long max_words = 10'000'000;
    std::uint64_t seed = 1;
};

SamplePolicy policy_of(const EvalCliOpts& o) {
    SamplePolicy p;
    p.n_words = o.words;
    p.min_errors = o.min_errors;
    p.max_words = o.max_words;
    return p;
}

int cmd_eval(const EvalCliOpts& o, const std::string& out_dir) {
    std::optional<LoadedCheckpoint> loaded;
    std::string code = o.code;
    if (!o.ckpt.empty()) {
        loaded = load_checkpoint(o.ckpt);
        if (code.empty() && loaded->meta.code != "none") code = loaded->meta.code;
    }
    if (code.empty()) throw std::invalid_argument("--code is required (not recoverable from checkpoint)");
    const CodeSpec spec = build_codebook(code_name_from_str(code));
    if (loaded && loaded->net.input_dim() != spec.n)
        throw std::invalid_argument("checkpoint width " + std::to_string(loaded->net.input_dim()) +
                                    " does not match code n=" + std::to_string(spec.n));

    std::vector<std::string> tokens = o.decoders;
    if (tokens.empty())
        tokens = loaded ? std::vector<std::string>{"hard", "semisoft", "ml"} : std::vector<std::string>{"ml"};
    const std::vector<Decoder> decoders = build_decoders(tokens, o.bs, loaded ? &loaded->net : nullptr);

    std::vector<double> snrs = o.snr_db;
    if (snrs.empty())
        snrs = spec.name == CodeName::Hamming74 ? std::vector<double>{0, 1, 2, 3, 4}
                                                : std::vector<double>{0, 1, 2, 3, 4, 5};

    fs::create_directories(out_dir);
    const SplitRng rng(o.seed, /*stream=*/7);
    const std::optional<double> pf =
        loaded ? std::optional<double>(global_pruned_fraction(loaded->net)) : std::nullopt;

    EvalReport report;
    for (std::size_t di = 0; di < decoders.size(); ++di) {
        EvalReport part = sweep_snr(decoders[di], spec, snrs, policy_of(o), rng);
        for (auto& row : part) {
            if (decoders[di].kind != Decoder::Kind::Ml) row.pruned_fraction = pf;
            report.push_back(std::move(row));
        }
    }
    write_csv((fs::path(out_dir) / "eval.csv").string(), eval_table(report));
    write_ber_svg((fs::path(out_dir) / "eval.svg").string(), code + " BER vs Eb/N0", "Eb/N0 (dB)",
                  series_from_report(report));
    for (const auto& row : report)
        std::printf("%s %s: ber=%s acc_word=%s (%lld words)\n", format_double(row.ebn0_db).c_str(),
                    row.decoder.c_str(), format_double(row.ber).c_str(), format_double(row.acc_word).c_str(),
                    row.samples);
    return 0;
}

struct SweepCliOpts {
    std::string traj_dir;
    std::string code;
    std::vector<int> rounds;
    std::vector<double> snr_db;
    bool no_ml = false;
    long long words = 0;
    long long min_errors = 100;
    long long max_words = 10'000'000;
    std::uint64_t seed = 1;
};

int cmd_sweep(const SweepCliOpts& o, const std::string& out_dir) {
    TicketTrajectory traj = load_trajectory(o.traj_dir);
    if (traj.records.empty()) throw std::invalid_argument("no trajectory found in " + o.traj_dir);

    std::string code = o.code;
    if (code.empty()) {
        const auto meta = load_checkpoint((fs::path(o.traj_dir) / round_ckpt_name(traj.records[0].round)).string()).meta;
        if (meta.code != "none") code = meta.code;
    }
    if (code.empty()) throw std::invalid_argument("--code is required (not recoverable from trajectory)");
    const CodeSpec spec = build_codebook(code_name_from_str(code));

    std::vector<const TicketRecord*> picked;
    if (o.rounds.empty()) {
        for (const auto& r : traj.records) picked.push_back(&r);
    } else {
        for (int want : o.rounds) {
            const TicketRecord* found = nullptr;
            for (const auto& r : traj.records)
                if (r.round == want) found = &r;
            if (!found) throw std::invalid_argument("round " + std::to_string(want) + " not in trajectory");
            picked.push_back(found);
        }
    }

    std::vector<double> snrs = o.snr_db;
    if (snrs.empty())
        snrs = spec.name == CodeName::Hamming74 ? std::vector<double>{0, 1, 2, 3, 4}
                                                : std::vector<double>{0, 1, 2, 3, 4, 5};

    SamplePolicy policy;
    policy.n_words = o.words;
    policy.min_errors = o.min_errors;
    policy.max_words = o.max_words;

    fs::create_directories(out_dir);
    const SplitRng rng(o.seed, /*stream=*/8);

    EvalReport report;
    for (const TicketRecord* rec : picked) {
        EvalReport part = sweep_snr(Decoder::hard(rec->checkpoint), spec, snrs, policy,
                                    rng.split(static_cast<std::uint64_t>(rec->round)));
        for (auto& row : part) {
            row.pruned_fraction = rec->pruned_fraction_global;
            report.push_back(std::move(row));
        }
    }
    if (!o.no_ml) {
        EvalReport part = sweep_snr(Decoder::ml(), spec, snrs, policy, rng.split(1u << 20));
        for (auto& row : part) report.push_back(std::move(row));
    }

    write_csv((fs::path(out_dir) / "sweep.csv").string(), eval_table(report));

    // Series per (decoder, pruned_fraction) pair.
    std::vector<PlotSeries> series;
    for (const auto& row : report) {
        std::string name = row.decoder;
        if (row.pruned_fraction) {
            char label[64];
            std::snprintf(label, sizeof label, "%s %.1f%% pruned", row.decoder.c_str(),
                          100.0 * *row.pruned_fraction);
            name = label;
        }
        PlotSeries* s = nullptr;
        for (auto& x : series)
            if (x.name == name) s = &x;
        if (!s) {
            series.push_back({name, {}});
            s = &series.back();
        }
        s->points.emplace_back(row.ebn0_db, row.ber);
    }
    write_ber_svg((fs::path(out_dir) / "sweep.svg").string(), code + " BER at pruning stages", "Eb/N0 (dB)",
                  series);
    std::printf("sweep: %zu rows -> %s\n", report.size(), (fs::path(out_dir) / "sweep.csv").string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"neural decoders for short block codes: training, pruning, semi-soft decoding, BER"};
    app.set_config("--config", "", "INI config file (sections per subcommand; flags win)");
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = hardware default)");

    // train
    auto* c_train = app.add_subcommand("train", "Train a dense decoder");
    TrainOpts t_train;
    std::string out_train = "prunedec-out";
    add_train_options(c_train, t_train);
    c_train->add_option("--out", out_train, "Output directory")->capture_default_str();

    // lth
    auto* c_lth = app.add_subcommand("lth", "Iterative prune-reset-retrain trajectory (resumable)");
    TrainOpts t_lth;
    PruneCliOpts p_lth;
    std::string out_lth = "prunedec-out";
    add_train_options(c_lth, t_lth);
    c_lth->add_option("--rounds", p_lth.rounds, "Trajectory length incl. dense round 0")->capture_default_str();
    c_lth->add_option("--rate", p_lth.rate, "Per-round prune fraction of remaining weights")->capture_default_str();
    c_lth->add_option("--out-scale", p_lth.out_scale, "Output-layer rate multiplier")->capture_default_str();
    c_lth->add_option("--eval-words", p_lth.eval_words, "Words per round accuracy estimate")->capture_default_str();
    c_lth->add_option("--out", out_lth, "Output directory")->capture_default_str();

    // oneshot
    auto* c_one = app.add_subcommand("oneshot", "Train dense, prune once, retrain");
    TrainOpts t_one;
    PruneCliOpts p_one;
    p_one.rate = 0.9;
    std::string out_one = "prunedec-out";
    add_train_options(c_one, t_one);
    c_one->add_option("--rate", p_one.rate, "Total prune fraction")->capture_default_str();
    c_one->add_option("--out-scale", p_one.out_scale, "Output-layer rate multiplier")->capture_default_str();
    c_one->add_option("--eval-words", p_one.eval_words, "Words per accuracy estimate")->capture_default_str();
    c_one->add_option("--out", out_one, "Output directory")->capture_default_str();

    // eval
    auto* c_eval = app.add_subcommand("eval", "Measure decoder BER/accuracy on a checkpoint");
    EvalCliOpts e;
    std::string out_eval = "prunedec-out";
    c_eval->add_option("--code", e.code, "Code (defaults to checkpoint metadata)");
    c_eval->add_option("--ckpt", e.ckpt, "Checkpoint file (not needed for --decoders ml)");
    c_eval->add_option("--decoders", e.decoders, "hard, semisoft[:b], ml (default hard,semisoft,ml)")
        ->delimiter(',');
    c_eval->add_option("--b", e.bs, "Semi-soft b values (repeatable)")->capture_default_str();
    c_eval->add_option("--snr-db", e.snr_db, "Eb/N0 points in dB (repeatable)")->delimiter(',');
    c_eval->add_option("--words", e.words, "Words per point (0 = adaptive)")->capture_default_str();
    c_eval->add_option("--min-errors", e.min_errors, "Adaptive: stop after this many bit errors")->capture_default_str();
    c_eval->add_option("--max-words", e.max_words, "Adaptive: word cap per point")->capture_default_str();
    c_eval->add_option("--seed", e.seed, "Random seed")->capture_default_str()->envname("PRUNEDEC_SEED");
    c_eval->add_option("--out", out_eval, "Output directory")->capture_default_str();

    // sweep
    auto* c_sweep = app.add_subcommand("sweep", "BER-vs-SNR for each round of a trajectory");
    SweepCliOpts s;
    std::string out_sweep = "prunedec-out";
    c_sweep->add_option("--traj", s.traj_dir, "Trajectory directory (from lth/oneshot)")->required();
    c_sweep->add_option("--code", s.code, "Code (defaults to checkpoint metadata)");
    c_sweep->add_option("--rounds", s.rounds, "Round subset (default all)")->delimiter(',');
    c_sweep->add_option("--snr-db", s.snr_db, "Eb/N0 points in dB (repeatable)")->delimiter(',');
    c_sweep->add_flag("--no-ml", s.no_ml, "Skip the ML reference curve");
    c_sweep->add_option("--words", s.words, "Words per point (0 = adaptive)")->capture_default_str();
    c_sweep->add_option("--min-errors", s.min_errors, "Adaptive: stop after this many bit errors")->capture_default_str();
    c_sweep->add_option("--max-words", s.max_words, "Adaptive: word cap per point")->capture_default_str();
    c_sweep->add_option("--seed", s.seed, "Random seed")->capture_default_str()->envname("PRUNEDEC_SEED");
    c_sweep->add_option("--out", out_sweep, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& h) {
        return app.exit(h);
    } catch (const CLI::CallForAllHelp& h) {
        return app.exit(h);
    } catch (const CLI::CallForVersion& h) {
        return app.exit(h);
    } catch (const CLI::ParseError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    }

    try {
        apply_threads(threads);
        if (c_train->parsed()) return cmd_train(t_train, out_train);
        if (c_lth->parsed()) return cmd_prune(t_lth, p_lth, out_lth, /*oneshot=*/false);
        if (c_one->parsed()) return cmd_prune(t_one, p_one, out_one, /*oneshot=*/true);
        if (c_eval->parsed()) return cmd_eval(e, out_eval);
        if (c_sweep->parsed()) return cmd_sweep(s, out_sweep);
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
    return 0;
}
