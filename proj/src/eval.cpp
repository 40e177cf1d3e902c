// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include "coughdwt/eval.hpp"

#include <algorithm>
#include <map>

#include "coughdwt/error.hpp"
#include "coughdwt/random.hpp"

namespace coughdwt {
namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& message) { throw Error(Stage::eval, code, message); }

}  // namespace

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) noexcept {
    tp += other.tp;
    fp += other.fp;
    tn += other.tn;
    fn += other.fn;
    return *this;
}

ConfusionMatrix Confusion(std::span<const Label> truth, std::span<const Label> predicted) {
    if (truth.size() != predicted.size())
        Fail(ErrorCode::invalid_argument, "length mismatch: " + std::to_string(truth.size()) + " labels vs " +
                                              std::to_string(predicted.size()) + " predictions");
    if (truth.empty()) Fail(ErrorCode::invalid_argument, "empty input");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool actual = truth[i] == Label::positive;
        const bool guess = predicted[i] == Label::positive;
        if (actual && guess) ++cm.tp;
        else if (actual) ++cm.fn;
        else if (guess) ++cm.fp;
        else ++cm.tn;
    }
    return cm;
}

ConfusionMatrix SwapPolarity(const ConfusionMatrix& cm) noexcept { return {cm.tn, cm.fn, cm.tp, cm.fp}; }

std::optional<double> Metric::value() const noexcept {
    if (!defined()) return std::nullopt;
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

std::string Metric::percent() const {
    if (!defined()) return "undefined";
    // tenths of a percent, half-up: floor((2000 n + d) / (2 d))
    const auto tenths = static_cast<std::uint64_t>((static_cast<__uint128_t>(2000) * numerator + denominator) /
                                                   (static_cast<__uint128_t>(2) * denominator));
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

MetricsReport ComputeMetrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) Fail(ErrorCode::invalid_argument, "confusion matrix is empty");
    MetricsReport r;
    r.acc = {cm.tp + cm.tn, cm.total()};
    r.rec = {cm.tp, cm.tp + cm.fn};
    r.spe = {cm.tn, cm.tn + cm.fp};
    r.pre = {cm.tp, cm.tp + cm.fp};
    // PRE + REC > 0 with both defined iff TP > 0.
    r.f1 = cm.tp > 0 ? Metric{2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn} : Metric{0, 0};
    return r;
}

std::string FormatSummary(const MetricsReport& report) {
    return "Rec=" + report.rec.percent() + " Spe=" + report.spe.percent() + " Acc=" + report.acc.percent() +
           " F1=" + report.f1.percent();
}

nlohmann::json ConfusionToJson(const ConfusionMatrix& cm) {
    return {{"TP", cm.tp}, {"FP", cm.fp}, {"TN", cm.tn}, {"FN", cm.fn}, {"total", cm.total()}};
}

nlohmann::json MetricsToJson(const MetricsReport& report) {
    auto one = [](const Metric& m) {
        nlohmann::json j = {{"numerator", m.numerator}, {"denominator", m.denominator}, {"defined", m.defined()}};
        if (m.defined()) {
            j["value"] = *m.value();
        } else {
            j["value"] = nullptr;
        }
        j["percent"] = m.percent();
        return j;
    };
    return {{"ACC", one(report.acc)},
            {"REC", one(report.rec)},
            {"SPE", one(report.spe)},
            {"PRE", one(report.pre)},
            {"F1", one(report.f1)}};
}

std::string_view SplitModeName(SplitMode mode) noexcept {
    return mode == SplitMode::segment_stratified ? "segment_stratified" : "subject_grouped";
}

SplitMode ParseSplitMode(std::string_view name) {
    if (name == "segment_stratified") return SplitMode::segment_stratified;
    if (name == "subject_grouped") return SplitMode::subject_grouped;
    Fail(ErrorCode::invalid_argument,
         "unknown split mode '" + std::string(name) + "' (expected segment_stratified|subject_grouped)");
}

std::vector<std::size_t> FoldPlan::TrainIndices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] != fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldPlan::TestIndices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] == fold) out.push_back(i);
    return out;
}

FoldPlan MakeFolds(const FeatureMatrix& matrix, std::size_t k, SplitMode mode, std::uint64_t seed) {
    const std::size_t n = matrix.labels.size();
    if (k < 2) Fail(ErrorCode::invalid_argument, "k must be >= 2, got " + std::to_string(k));
    if (mode == SplitMode::subject_grouped && matrix.sources.size() != n)
        Fail(ErrorCode::invalid_argument, "subject_grouped split needs a source per row");

    FoldPlan plan;
    plan.k = k;
    plan.mode = mode;
    plan.seed = seed;
    plan.assignments.assign(n, 0);
    SeededRng rng(seed);

    if (mode == SplitMode::segment_stratified) {
        if (k > n) Fail(ErrorCode::invalid_argument, "k = " + std::to_string(k) + " exceeds " + std::to_string(n) +
                                                         " segments");
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < n; ++i) (matrix.labels[i] == Label::positive ? pos : neg).push_back(i);
        rng.Shuffle(std::span<std::size_t>(pos));
        rng.Shuffle(std::span<std::size_t>(neg));
        std::size_t cursor = 0;
        for (std::size_t i : pos) plan.assignments[i] = cursor++ % k;
        for (std::size_t i : neg) plan.assignments[i] = cursor++ % k;
        return plan;
    }

    // Subjects in order of first appearance, then shuffled.
    std::map<std::string, std::size_t> subject_slot;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        const auto [it, inserted] = subject_slot.emplace(matrix.sources[i].subject_id, groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(i);
    }
    if (groups.size() < k)
        Fail(ErrorCode::invalid_argument, "subject_grouped split needs at least k = " + std::to_string(k) +
                                              " subjects, found " + std::to_string(groups.size()));
    std::vector<std::size_t> order(groups.size());
    for (std::size_t g = 0; g < order.size(); ++g) order[g] = g;
    rng.Shuffle(std::span<std::size_t>(order));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return groups[a].size() > groups[b].size(); });

    std::vector<std::size_t> fold_size(k, 0);
    for (std::size_t g : order) {
        const auto fold =
            static_cast<std::size_t>(std::min_element(fold_size.begin(), fold_size.end()) - fold_size.begin());
        for (std::size_t i : groups[g]) plan.assignments[i] = fold;
        fold_size[fold] += groups[g].size();
    }
    return plan;
}

}  // namespace coughdwt
