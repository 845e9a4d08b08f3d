// Times the two parallel kernels (topic-subset enumeration and the forecaster
// grid) against their serial reference paths and verifies both produce
// identical results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sentibt/forecast.hpp"
#include "sentibt/sentiment.hpp"
#include "sentibt/series.hpp"
#include "sentibt/topics.hpp"

using namespace sentibt;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

HeadlineRecord synth(MonthKey month, int day, SentimentLabel label, Topic topic) {
    HeadlineRecord h;
    h.date = Date{month.year(), month.month(), day};
    h.source = "wire";
    h.text = "synthetic headline";
    h.sentiment = label;
    h.topic = topic;
    return h;
}

bool subsets_equal(const std::vector<SubsetResult>& a, const std::vector<SubsetResult>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].mask != b[i].mask || a[i].n_months != b[i].n_months) return false;
        auto sa = a[i].sharpe(), sb = b[i].sharpe();
        if (sa.has_value() != sb.has_value()) return false;
        if (sa.has_value() && *sa != *sb) return false;
    }
    return true;
}

bool grids_equal(const GridResult& a, const GridResult& b) {
    if (a.total_cells != b.total_cells || a.best_per_group.size() != b.best_per_group.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.best_per_group.size(); ++i) {
        const auto& x = a.best_per_group[i];
        const auto& y = b.best_per_group[i];
        if (x.spec.name != y.spec.name || x.spec.feature_set != y.spec.feature_set ||
            x.spec.window_len != y.spec.window_len || x.spec.hyperparams != y.spec.hyperparams ||
            x.metrics.rmse != y.metrics.rmse || x.metrics.mae != y.metrics.mae) {
            return false;
        }
    }
    return true;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; both paths run serially\n");
#endif

    // Subset enumeration over a 240-month corpus.
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> topic_pick(0, kTopicCount - 1);
    std::uniform_int_distribution<int> label_pick(0, 2);
    std::uniform_int_distribution<int> day_pick(1, 28);
    auto universe = topic_universe();
    std::vector<HeadlineRecord> corpus;
    MonthKey month(2000, 1);
    for (int i = 0; i < 240; ++i) {
        for (int h = 0; h < 12; ++h) {
            SentimentLabel lab = label_pick(rng) == 0   ? SentimentLabel::positive
                                 : label_pick(rng) == 0 ? SentimentLabel::negative
                                                        : SentimentLabel::neutral;
            corpus.push_back(synth(month, day_pick(rng), lab, universe[topic_pick(rng)]));
        }
        month = month.next();
    }
    std::uniform_real_distribution<double> ret_dist(-0.1, 0.11);
    MonthlySeries returns("returns");
    MonthKey rm(2000, 2);
    for (int i = 0; i < 239; ++i) {
        returns.set(rm, ret_dist(rng));
        rm = rm.next();
    }
    auto cache = TopicCountCache::build(corpus);

    double t0 = now_seconds();
    auto serial_subsets = enumerate_topic_subsets(cache, returns, 1, 11, 0.0,
                                                  ExecutionMode::serial);
    double serial_time = now_seconds() - t0;
    t0 = now_seconds();
    auto parallel_subsets = enumerate_topic_subsets(cache, returns, 1, 11, 0.0,
                                                    ExecutionMode::parallel);
    double parallel_time = now_seconds() - t0;
    bool same = subsets_equal(serial_subsets, parallel_subsets);
    std::printf("subset enumeration (4094 subsets, 240 months):\n");
    std::printf("  serial   %.3f s\n", serial_time);
    std::printf("  parallel %.3f s  (x%.2f)\n", parallel_time,
                parallel_time > 0 ? serial_time / parallel_time : 0.0);
    std::printf("  results identical: %s\n", same ? "yes" : "NO");
    if (!same) return 1;

    // Grid search across a realistic axis shape.
    std::uniform_real_distribution<double> step(-0.03, 0.035);
    MonthlySeries closes("close");
    MonthKey cm(2000, 1);
    double price = 1800.0;
    for (int i = 0; i < 120; ++i) {
        closes.set(cm, price);
        price *= 1.0 + step(rng);
        cm = cm.next();
    }
    GridInputs in;
    ForecasterSpec t;
    t.family = ForecasterFamily::persistence;
    t.name = "persistence";
    in.templates.push_back(t);
    t = ForecasterSpec{};
    t.family = ForecasterFamily::ar_ls;
    t.name = "ar1";
    t.hyperparams["order"] = 1.0;
    in.templates.push_back(t);
    t.name = "ar2";
    t.hyperparams["order"] = 2.0;
    in.templates.push_back(t);
    t = ForecasterSpec{};
    t.family = ForecasterFamily::ridge_window;
    t.name = "ridge_small";
    t.hyperparams["lambda"] = 0.01;
    in.templates.push_back(t);
    t.name = "ridge_large";
    t.hyperparams["lambda"] = 1.0;
    in.templates.push_back(t);
    in.feature_sets = {"none", "alpha", "beta", "gamma"};
    in.windows = {1, 3, 6, 12};
    in.hyper_grid["order"] = {1.0, 2.0, 3.0, 4.0, 5.0};
    in.hyper_grid["lambda"] = {0.0, 0.001, 0.01, 0.1, 1.0, 10.0};
    in.initial_train = 8;
    std::map<std::string, MonthlySeries> feats{{"close", closes}};
    in.dataset_for = [&](const std::string&, int w) { return build_windows(feats, closes, w); };

    t0 = now_seconds();
    auto serial_grid = grid_search(in, ExecutionMode::serial);
    serial_time = now_seconds() - t0;
    t0 = now_seconds();
    auto parallel_grid = grid_search(in, ExecutionMode::parallel);
    parallel_time = now_seconds() - t0;
    same = grids_equal(serial_grid, parallel_grid);
    std::printf("grid search (%zu cells, %zu group winners):\n", serial_grid.total_cells,
                serial_grid.best_per_group.size());
    std::printf("  serial   %.3f s\n", serial_time);
    std::printf("  parallel %.3f s  (x%.2f)\n", parallel_time,
                parallel_time > 0 ? serial_time / parallel_time : 0.0);
    std::printf("  results identical: %s\n", same ? "yes" : "NO");
    return same ? 0 : 1;
}
