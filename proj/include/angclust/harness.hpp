#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "angclust/bounds.hpp"
#include "angclust/engine.hpp"
#include "angclust/geometry.hpp"

namespace angclust::harness {

enum class Model { Normal, Uniform, Dependent, DP };

Model parse_model(const std::string& name);
std::string model_name(Model model);

struct SynthConfig {
    Model model = Model::Normal;
    std::size_t n = 100;
    std::size_t r = 10;
    std::size_t L = 4;
    std::size_t N = 500;
    double rho_sigma = 9.0;  ///< DP only: centroid spread over within-cluster spread
    double alpha = 1.0;      ///< DP only
    std::uint64_t seed = 0;
};

/// Labeled synthetic dataset for any of the supported models.
DataSet make_dataset(const SynthConfig& config);

struct PipelineOptions {
    std::uint64_t seed = 0;
    /// Externally supplied initial clustering (one label per point); replaces the ally method.
    std::optional<std::vector<int>> init_labels;
    bool keep_scores = false;
};

struct PipelineResult {
    std::size_t P = 0;  ///< initial cluster count
    MergeTrace trace;
    SelectionResult selection;
    double wall_ms = 0.0;
};

/// normalize -> angles -> initial clustering -> merge -> select.
/// With fewer than two initial clusters the trace is empty and nothing crosses.
PipelineResult run_pipeline(const DataSet& raw, const PipelineOptions& options);

/// gamma_K <= zeta_K for every K > L_hat and gamma_{L_hat} > zeta_{L_hat}.
bool crossing_property_holds(const MergeTrace& trace, std::size_t L_hat);

struct RunConfig {
    std::optional<std::filesystem::path> input;
    std::optional<SynthConfig> synth;
    bool labeled = false;
    std::uint64_t seed = 0;
    std::size_t trials = 1;
    std::optional<std::filesystem::path> init_labels;
    std::optional<std::filesystem::path> out;

    /// trials >= 1 and exactly one of input / synth. Throws Error otherwise.
    void validate() const;
};

struct RunReport {
    std::size_t L_hat = 1;
    bool crossed = false;
    std::optional<double> ce;
    std::optional<double> nmi;
    std::optional<std::size_t> L_true;
    MergeTrace trace;
    double wall_ms = 0.0;
    std::vector<int> labels;

    nlohmann::json to_json() const;
};

/// Loads the configured dataset (CSV or synthetic).
DataSet load_dataset(const RunConfig& config);

/// End-to-end clustering run. Writes report.json and labels.csv into `out` when set.
RunReport cmd_cluster(const RunConfig& config);

/// Exit status for a finished run: 0 when gamma crossed zeta, 2 otherwise.
int exit_code(const RunReport& report);

void cmd_synth(const SynthConfig& config, const std::filesystem::path& path);

/// Compares labels (last column of each row in both files); returns CE, NMI and |L - L_hat|.
nlohmann::json cmd_eval(const std::filesystem::path& truth, const std::filesystem::path& pred);

struct BenchTrial {
    std::string config;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::size_t L_true = 0;
    std::size_t L_hat = 0;
    bool crossed = false;
    double ce = 0.0;
    double nmi = 0.0;
    std::size_t abs_L = 0;
    bool crossing_ok = false;
    double wall_ms = 0.0;
};

struct SummaryRow {
    std::string config;
    std::string metric;
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
};

struct BenchResult {
    std::vector<BenchTrial> trials;
    std::vector<SummaryRow> summary;

    std::string trials_csv() const;
    std::string summary_csv() const;
};

struct BenchConfig {
    /// One entry per configuration; `seed` is the base seed, trial i uses seed + i.
    std::vector<SynthConfig> configs;
    std::size_t trials = 10;
    unsigned threads = 0;
    std::optional<std::filesystem::path> out;
};

std::string config_name(const SynthConfig& config);

/// Seeded trials per configuration, aggregated as mean/median/std of CE, NMI and |L - L_hat|.
BenchResult cmd_bench(const BenchConfig& config);

struct Histograms {
    std::vector<double> edges;  ///< bins + 1 shared edges
    std::vector<std::size_t> within;
    std::vector<std::size_t> between;
};

/// Histograms of two angle samples over a shared range spanning both.
Histograms paired_histograms(std::span<const double> within, std::span<const double> between, std::size_t bins = 50);

/// Within-cluster and between-cluster angle histograms for a labeling.
Histograms angle_histograms(const AngleCache& angles, std::span<const int> labels, std::size_t bins = 50);

struct TraceOutput {
    RunReport report;
    Histograms histograms;
    std::string trace_csv;
    std::string within_csv;
    std::string between_csv;
};

/// Runs the clustering and emits the per-K (gamma, zeta, t) trace plus angle
/// histograms of the selected clustering. Writes trace.csv, within_hist.csv and
/// between_hist.csv into `out` when set.
TraceOutput cmd_trace(const RunConfig& config);

enum class Format { Csv, Json };

/// BoundReport rows for each t. With an empty t list, the single row is evaluated
/// at t = t_min (or marked NoFiniteT when psi <= 1).
std::string cmd_bounds(std::span<const std::size_t> ts, const SeparationParams& params, Format format);

}  // namespace angclust::harness
