#include "angclust/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "angclust/error.hpp"
#include "angclust/io.hpp"
#include "angclust/metrics.hpp"
#include "angclust/synth.hpp"

namespace angclust::harness {

namespace {

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

double json_number(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

Model parse_model(const std::string& name) {
    if (name == "normal") return Model::Normal;
    if (name == "uniform") return Model::Uniform;
    if (name == "dependent") return Model::Dependent;
    if (name == "dp") return Model::DP;
    throw Error("unknown model '" + name + "' (expected normal|uniform|dependent|dp)");
}

std::string model_name(Model model) {
    switch (model) {
        case Model::Normal: return "normal";
        case Model::Uniform: return "uniform";
        case Model::Dependent: return "dependent";
        case Model::DP: return "dp";
    }
    return "?";
}

DataSet make_dataset(const SynthConfig& c) {
    if (c.model == Model::DP) {
        synth::DPSpec spec;
        spec.n = c.n;
        spec.N = c.N;
        spec.rho = c.rho_sigma;
        spec.sigma = 1.0;
        spec.alpha = c.alpha;
        spec.seed = c.seed;
        return synth::gen_dp(spec);
    }
    const synth::SubspaceSpec spec{c.n, c.r, c.L, c.N, c.seed};
    switch (c.model) {
        case Model::Normal: return synth::gen_subspace_normal(spec).data;
        case Model::Uniform: return synth::gen_subspace_uniform(spec).data;
        default: return synth::gen_subspace_dependent(spec).data;
    }
}

PipelineResult run_pipeline(const DataSet& raw, const PipelineOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    if (raw.size() < 3) throw DegenerateInput("need at least 3 points, got " + std::to_string(raw.size()));
    const DataSet data = normalize_rows(raw);
    const AngleCache angles = compute_angles(data);

    std::vector<int> init;
    if (options.init_labels) {
        if (options.init_labels->size() != data.size()) {
            throw Error("initial labels: expected " + std::to_string(data.size()) + " labels, got " +
                        std::to_string(options.init_labels->size()));
        }
        init = *options.init_labels;
    } else {
        init = initial_labels(angles, options.seed);
    }
    const Clustering initial = Clustering::from_labels(init, angles);

    PipelineResult r;
    r.P = initial.cluster_count();
    if (r.P >= 2) {
        MergeResult merged = run_merging(initial, MergeOptions{options.keep_scores});
        r.selection = select_clustering(merged.trace, merged.dendrogram);
        r.trace = std::move(merged.trace);
    } else {
        r.selection.L_hat = 1;
        r.selection.crossed = false;
        r.selection.labels.assign(data.size(), 0);
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

bool crossing_property_holds(const MergeTrace& trace, std::size_t L_hat) {
    bool seen = false;
    for (const TraceEntry& e : trace) {
        if (e.K > L_hat && e.gamma > e.zeta) return false;
        if (e.K == L_hat) {
            if (!(e.gamma > e.zeta)) return false;
            seen = true;
        }
    }
    return seen;
}

void RunConfig::validate() const {
    if (trials < 1) throw Error("trials must be at least 1");
    if (input.has_value() == synth.has_value()) throw Error("exactly one input source (CSV or synthetic) is required");
}

nlohmann::json RunReport::to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["L_hat"] = L_hat;
    j["crossed"] = crossed;
    if (ce) j["CE"] = *ce;
    if (nmi) j["NMI"] = *nmi;
    if (L_true) j["L_true"] = *L_true;
    j["wall_ms"] = wall_ms;
    nlohmann::json tr = nlohmann::json::array();
    for (const TraceEntry& e : trace) {
        nlohmann::json row = {{"K", e.K}, {"gamma", json_number(e.gamma)}, {"t", e.t}, {"pair", {e.first, e.second}}};
        // JSON has no infinity; an infinite threshold is written as null.
        row["zeta"] = std::isinf(e.zeta) ? nlohmann::json(nullptr) : nlohmann::json(e.zeta);
        tr.push_back(std::move(row));
    }
    j["trace"] = std::move(tr);
    j["labels"] = labels;
    return j;
}

DataSet load_dataset(const RunConfig& config) {
    config.validate();
    if (config.input) return io::read_points_csv(*config.input, config.labeled);
    return make_dataset(*config.synth);
}

namespace {

RunReport run_report(const DataSet& data, const RunConfig& config, bool keep_scores) {
    PipelineOptions opts;
    opts.seed = config.seed;
    opts.keep_scores = keep_scores;
    if (config.init_labels) opts.init_labels = io::read_labels(*config.init_labels);

    PipelineResult r = run_pipeline(data, opts);
    RunReport report;
    report.L_hat = r.selection.L_hat;
    report.crossed = r.selection.crossed;
    report.trace = std::move(r.trace);
    report.wall_ms = r.wall_ms;
    report.labels = std::move(r.selection.labels);
    if (data.labels) {
        const LabelPair pair(*data.labels, report.labels);
        report.ce = clustering_error(pair);
        report.nmi = nmi(pair);
        report.L_true = pair.truth_clusters();
    }
    return report;
}

}  // namespace

RunReport cmd_cluster(const RunConfig& config) {
    const DataSet data = load_dataset(config);
    RunReport report = run_report(data, config, false);
    if (config.out) {
        std::filesystem::create_directories(*config.out);
        io::write_text(*config.out / "report.json", report.to_json().dump(2) + "\n");
        io::write_labels(*config.out / "labels.csv", report.labels);
    }
    return report;
}

int exit_code(const RunReport& report) { return report.crossed ? 0 : 2; }

void cmd_synth(const SynthConfig& config, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    io::write_points_csv(path, make_dataset(config));
}

nlohmann::json cmd_eval(const std::filesystem::path& truth, const std::filesystem::path& pred) {
    const std::vector<int> t = io::read_labels(truth);
    const std::vector<int> p = io::read_labels(pred);
    const LabelPair pair(t, p);
    return {{"CE", clustering_error(pair)},
            {"NMI", nmi(pair)},
            {"L_true", pair.truth_clusters()},
            {"L_hat", pair.pred_clusters()},
            {"abs_L_error", abs_L_error(pair.truth_clusters(), pair.pred_clusters())}};
}

std::string config_name(const SynthConfig& c) {
    std::ostringstream os;
    os << model_name(c.model) << "_n" << c.n << "_N" << c.N;
    if (c.model == Model::DP) {
        os << "_rs" << c.rho_sigma << "_a" << c.alpha;
    } else {
        os << "_r" << c.r << "_L" << c.L;
    }
    return os.str();
}

namespace {

SummaryRow summarize(const std::string& config, const std::string& metric, std::vector<double> v) {
    SummaryRow row{config, metric, 0.0, 0.0, 0.0};
    if (v.empty()) return row;
    const double n = static_cast<double>(v.size());
    double sum = 0.0;
    for (const double x : v) sum += x;
    row.mean = sum / n;
    double ss = 0.0;
    for (const double x : v) ss += (x - row.mean) * (x - row.mean);
    row.stddev = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    row.median = v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
    return row;
}

}  // namespace

BenchResult cmd_bench(const BenchConfig& config) {
    if (config.trials < 1) throw Error("trials must be at least 1");
    struct Job {
        std::size_t config;
        std::size_t trial;
    };
    std::vector<Job> jobs;
    for (std::size_t c = 0; c < config.configs.size(); ++c) {
        for (std::size_t t = 0; t < config.trials; ++t) jobs.push_back({c, t});
    }

    BenchResult result;
    result.trials.resize(jobs.size());
    auto run_job = [&](std::size_t idx) {
        const Job& job = jobs[idx];
        SynthConfig sc = config.configs[job.config];
        sc.seed = config.configs[job.config].seed + job.trial;
        const DataSet data = make_dataset(sc);
        PipelineOptions opts;
        opts.seed = sc.seed;
        const PipelineResult r = run_pipeline(data, opts);
        const LabelPair pair(*data.labels, r.selection.labels);

        BenchTrial& row = result.trials[idx];
        row.config = config_name(config.configs[job.config]);
        row.trial = job.trial;
        row.seed = sc.seed;
        row.L_true = pair.truth_clusters();
        row.L_hat = r.selection.L_hat;
        row.crossed = r.selection.crossed;
        row.ce = clustering_error(pair);
        row.nmi = nmi(pair);
        row.abs_L = abs_L_error(row.L_true, row.L_hat);
        row.crossing_ok = r.selection.crossed && crossing_property_holds(r.trace, r.selection.L_hat);
        row.wall_ms = r.wall_ms;
    };

    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < jobs.size(); i = next++) run_job(i);
            });
        }
    }

    // Jobs are laid out by (config, trial), so rows are already in trial order per config.
    for (const SynthConfig& sc : config.configs) {
        const std::string name = config_name(sc);
        std::vector<double> ce, nm, dl;
        for (const BenchTrial& t : result.trials) {
            if (t.config != name) continue;
            ce.push_back(t.ce);
            nm.push_back(t.nmi);
            dl.push_back(static_cast<double>(t.abs_L));
        }
        result.summary.push_back(summarize(name, "CE", ce));
        result.summary.push_back(summarize(name, "NMI", nm));
        result.summary.push_back(summarize(name, "abs_L_error", dl));
    }

    if (config.out) {
        std::filesystem::create_directories(*config.out);
        io::write_text(*config.out / "bench_trials.csv", result.trials_csv());
        io::write_text(*config.out / "bench_summary.csv", result.summary_csv());
    }
    return result;
}

std::string BenchResult::trials_csv() const {
    std::ostringstream os;
    os << "config,trial,seed,L_true,L_hat,crossed,CE,NMI,abs_L_error,crossing_ok,wall_ms\n";
    for (const BenchTrial& t : trials) {
        os << t.config << ',' << t.trial << ',' << t.seed << ',' << t.L_true << ',' << t.L_hat << ','
           << (t.crossed ? 1 : 0) << ',' << fmt(t.ce) << ',' << fmt(t.nmi) << ',' << t.abs_L << ','
           << (t.crossing_ok ? 1 : 0) << ',' << fmt(t.wall_ms) << '\n';
    }
    return os.str();
}

std::string BenchResult::summary_csv() const {
    std::ostringstream os;
    os << "config,metric,mean,median,std\n";
    for (const SummaryRow& r : summary) {
        os << r.config << ',' << r.metric << ',' << fmt(r.mean) << ',' << fmt(r.median) << ',' << fmt(r.stddev) << '\n';
    }
    return os.str();
}

Histograms paired_histograms(std::span<const double> within, std::span<const double> between, std::size_t bins) {
    if (bins == 0) throw Error("histogram needs at least one bin");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const double v : within) lo = std::min(lo, v), hi = std::max(hi, v);
    for (const double v : between) lo = std::min(lo, v), hi = std::max(hi, v);
    if (!(lo <= hi)) lo = 0.0, hi = std::numbers::pi;
    if (hi == lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    Histograms h;
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
    h.within.assign(bins, 0);
    h.between.assign(bins, 0);
    auto bin_of = [&](double v) {
        const auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
        return std::min(b, bins - 1);
    };
    for (const double v : within) ++h.within[bin_of(v)];
    for (const double v : between) ++h.between[bin_of(v)];
    return h;
}

Histograms angle_histograms(const AngleCache& angles, std::span<const int> labels, std::size_t bins) {
    if (labels.size() != angles.size()) throw Error("label count does not match the angle cache");
    std::vector<double> within, between;
    const std::vector<double>& upper = angles.upper();
    std::size_t k = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j, ++k) {
            (labels[i] == labels[j] ? within : between).push_back(upper[k]);
        }
    }
    return paired_histograms(within, between, bins);
}

namespace {

std::string histogram_csv(const std::vector<double>& edges, const std::vector<std::size_t>& counts) {
    std::ostringstream os;
    os << "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < counts.size(); ++b) os << fmt(edges[b]) << ',' << fmt(edges[b + 1]) << ',' << counts[b] << '\n';
    return os.str();
}

}  // namespace

TraceOutput cmd_trace(const RunConfig& config) {
    const DataSet data = load_dataset(config);
    TraceOutput out;
    out.report = run_report(data, config, true);

    const AngleCache angles = compute_angles(normalize_rows(data));
    out.histograms = angle_histograms(angles, out.report.labels);

    std::ostringstream tr;
    tr << "K,gamma,zeta,t,first,second,crossed\n";
    for (const TraceEntry& e : out.report.trace) {
        tr << e.K << ',' << fmt(e.gamma) << ',' << fmt(e.zeta) << ',' << e.t << ',' << e.first << ',' << e.second << ','
           << (e.gamma > e.zeta ? 1 : 0) << '\n';
    }
    out.trace_csv = tr.str();
    out.within_csv = histogram_csv(out.histograms.edges, out.histograms.within);
    out.between_csv = histogram_csv(out.histograms.edges, out.histograms.between);

    if (config.out) {
        std::filesystem::create_directories(*config.out);
        io::write_text(*config.out / "trace.csv", out.trace_csv);
        io::write_text(*config.out / "within_hist.csv", out.within_csv);
        io::write_text(*config.out / "between_hist.csv", out.between_csv);
        io::write_text(*config.out / "report.json", out.report.to_json().dump(2) + "\n");
        io::write_labels(*config.out / "labels.csv", out.report.labels);
    }
    return out;
}

std::string cmd_bounds(std::span<const std::size_t> ts, const SeparationParams& params, Format format) {
    params.validate();
    std::optional<std::size_t> tmin;
    try {
        tmin = t_min(params);
    } catch (const NoFiniteT&) {
    }
    const double psi_ab = psi(params);

    std::vector<std::size_t> rows(ts.begin(), ts.end());
    if (rows.empty() && tmin) rows.push_back(*tmin);

    const std::string marker = "NoFiniteT";
    if (format == Format::Json) {
        nlohmann::json j;
        j["M"] = params.M;
        j["R"] = params.R;
        j["psi"] = psi_ab;
        j["t_min"] = tmin ? nlohmann::json(*tmin) : nlohmann::json(marker);
        nlohmann::json arr = nlohmann::json::array();
        for (const std::size_t t : rows) {
            const BoundReport b = bound_report(t, params);
            arr.push_back({{"t", t},
                           {"inv_sqrt_t_minus_1", 1.0 / std::sqrt(static_cast<double>(t) - 1.0)},
                           {"eps_t", b.eps_t},
                           {"one_minus_eps", 1.0 - b.eps_t},
                           {"delta_t", b.delta_t},
                           {"one_minus_delta", 1.0 - b.delta_t},
                           {"alpha_t", b.alpha_t},
                           {"c", b.c}});
        }
        j["rows"] = std::move(arr);
        return j.dump(2) + "\n";
    }

    std::ostringstream os;
    os << "t,inv_sqrt_t_minus_1,one_minus_eps,one_minus_delta,eps_t,delta_t,t_min,psi,alpha_t,c,M,R\n";
    const std::string tmin_s = tmin ? std::to_string(*tmin) : marker;
    if (rows.empty()) {
        os << marker << ",NA,NA,NA,NA,NA," << tmin_s << ',' << fmt(psi_ab) << ",NA,NA," << fmt(params.M) << ','
           << fmt(params.R) << '\n';
    }
    char buf[32];
    auto p6 = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    };
    for (const std::size_t t : rows) {
        const BoundReport b = bound_report(t, params);
        os << t << ',' << p6(1.0 / std::sqrt(static_cast<double>(t) - 1.0)) << ',' << p6(1.0 - b.eps_t) << ','
           << p6(1.0 - b.delta_t) << ',' << fmt(b.eps_t) << ',' << fmt(b.delta_t) << ',' << tmin_s << ','
           << fmt(psi_ab) << ',' << fmt(b.alpha_t) << ',' << fmt(b.c) << ',' << fmt(params.M) << ','
           << fmt(params.R) << '\n';
    }
    return os.str();
}

}  // namespace angclust::harness
