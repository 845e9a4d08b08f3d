#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sentibt/exec.hpp"
#include "sentibt/series.hpp"

namespace sentibt {

/// One walk-forward sample: an input window of `window_len` consecutive
/// months of features and the close of the following month as target.
struct WindowSample {
    MonthKey target_month;
    std::vector<double> inputs;  // row-major, window_len x n_features
    double target = 0.0;
    double last_close = 0.0;  // close at the window's final month
};

struct WindowedDataset {
    int window_len = 1;
    std::vector<std::string> feature_names;  // "close" first, then sorted extras
    std::vector<WindowSample> samples;

    int n_features() const { return static_cast<int>(feature_names.size()); }
    bool empty() const { return samples.empty(); }
};

/// Assemble samples over the contiguous intersection of the target closes
/// and every feature series. Sample i has inputs over months
/// [first+i, first+i+window_len) and target at month first+i+window_len.
WindowedDataset build_windows(const std::map<std::string, MonthlySeries>& features,
                              const MonthlySeries& target, int window_len);

enum class ForecasterFamily { persistence, ar_ls, ridge_window, external };

std::string_view family_name(ForecasterFamily f);
ForecasterFamily parse_family(const std::string& s);

struct ForecasterSpec {
    std::string name;  // template identity used for grid grouping
    ForecasterFamily family = ForecasterFamily::persistence;
    /// Numeric hyperparameters. ar_ls reads "order", ridge_window reads
    /// "lambda"; unknown keys ride along untouched (grid axes for external
    /// runs are opaque here).
    std::map<std::string, double> hyperparams;
    std::string feature_set;  // label only, e.g. "none" or a source id
    int window_len = 1;
    std::string external_path;  // predictions file for the external family

    double hyper(const std::string& key, double fallback) const {
        auto it = hyperparams.find(key);
        return it == hyperparams.end() ? fallback : it->second;
    }
};

/// Family-specific requirements: ar_ls needs integer order >= 1,
/// ridge_window lambda >= 0, external a nonempty path.
void validate_spec(const ForecasterSpec& spec);

/// Predicted close for month t+1, issued with data through month t; keyed by
/// the target month t+1.
struct PredictionSeries {
    ForecasterSpec spec;
    std::map<MonthKey, double> entries;
};

/// Predictions CSV with columns month,predicted_close.
PredictionSeries load_predictions(const std::string& path);
PredictionSeries parse_predictions(const std::string& text, const std::string& origin);

enum class TrainWindow { expanding, fixed };

struct WalkForwardResult {
    PredictionSeries preds;
    std::vector<std::string> warnings;  // one per degenerate-fit fallback
    int n_fallbacks = 0;
};

/// For each sample index t >= initial_train, fit on the training span ending
/// at t (all prior samples, or the trailing `train_width` under fixed mode)
/// and predict sample t's target. Degenerate fits fall back to persistence
/// and record a warning. The external family replays its file for every
/// sample month present in the file.
WalkForwardResult walk_forward(const ForecasterSpec& spec, const WindowedDataset& dataset,
                               int initial_train = 8,
                               TrainWindow mode = TrainWindow::expanding, int train_width = 0);

struct PointMetrics {
    std::optional<double> r2;  // nullopt when the true series has no variance
    double rmse = 0.0;
    double mae = 0.0;
    int n = 0;
};

/// Metrics over months present in both series; fewer than 2 overlapping
/// months is an error.
PointMetrics point_metrics(const MonthlySeries& truth, const PredictionSeries& pred);

struct ForecastRun {
    ForecasterSpec spec;
    PointMetrics metrics;
    int n_fallbacks = 0;
};

struct GridInputs {
    std::vector<ForecasterSpec> templates;   // name/family/base hyperparams
    std::vector<std::string> feature_sets;   // evaluated in the given order
    std::vector<int> windows;
    /// Extra hyperparameter axes crossed into every template (key order is
    /// the map order; value order as given).
    std::map<std::string, std::vector<double>> hyper_grid;
    /// Dataset for a (feature_set, window) pair; called once per pair.
    std::function<WindowedDataset(const std::string&, int)> dataset_for;
    int initial_train = 8;
    TrainWindow mode = TrainWindow::expanding;
    int train_width = 0;
};

struct GridResult {
    std::size_t total_cells = 0;
    /// Best cell per (template name, feature_set, window) group, ranked by
    /// R^2 descending, then RMSE ascending, then lexicographic hyperparams.
    std::vector<ForecastRun> best_per_group;
};

GridResult grid_search(const GridInputs& inputs, ExecutionMode mode = ExecutionMode::parallel);

/// Ranking predicate used for grid rows (exposed for tests).
bool forecast_run_better(const ForecastRun& a, const ForecastRun& b);

}  // namespace sentibt
