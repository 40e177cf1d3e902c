// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include <map>
#include <set>

#include "coughdwt/error.hpp"
#include "coughdwt/eval.hpp"
#include "coughdwt/random.hpp"
#include "doctest.h"

using namespace coughdwt;

namespace {

constexpr Label P = Label::positive;
constexpr Label N = Label::negative;

// Half-up rounding to tenths of a percent by long division.
std::string ReferencePercent(std::uint64_t num, std::uint64_t den) {
    std::uint64_t tenths = (1000 * num) / den;
    const std::uint64_t rem = (1000 * num) % den;
    if (2 * rem >= den) ++tenths;
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

FeatureMatrix LabelledMatrix(std::size_t pos, std::size_t neg, std::size_t subjects) {
    FeatureMatrix m;
    m.names = {"x"};
    for (std::size_t i = 0; i < pos + neg; ++i) {
        m.rows.push_back({static_cast<double>(i)});
        m.labels.push_back(i < pos ? P : N);
        m.sources.push_back({"subj" + std::to_string(i % subjects), i, 0});
    }
    return m;
}

}  // namespace

TEST_CASE("confusion counts") {
    const std::vector<Label> truth = {P, P, N}, pred = {P, N, N};
    const auto cm = Confusion(truth, pred);
    CHECK(cm == ConfusionMatrix{1, 0, 1, 1});
    const auto perfect = Confusion(truth, truth);
    CHECK(perfect.fp == 0);
    CHECK(perfect.fn == 0);
    CHECK_THROWS_WITH_AS(Confusion(truth, std::vector<Label>{P}), doctest::Contains("length mismatch"), Error);
    CHECK_THROWS_WITH_AS(Confusion(std::vector<Label>{}, std::vector<Label>{}), doctest::Contains("empty input"),
                         Error);
}

TEST_CASE("121 segments with one false positive") {
    std::vector<Label> truth(48, P), pred(48, P);
    truth.insert(truth.end(), 73, N);
    pred.insert(pred.end(), 72, N);
    pred.push_back(P);
    const auto cm = Confusion(truth, pred);
    CHECK(cm == ConfusionMatrix{48, 1, 72, 0});
}

TEST_CASE("metrics for the one-error confusion") {
    const auto r = ComputeMetrics({48, 1, 72, 0});
    CHECK(r.acc == Metric{120, 121});
    CHECK(r.rec == Metric{48, 48});
    CHECK(r.spe == Metric{72, 73});
    CHECK(r.pre == Metric{48, 49});
    CHECK(r.f1 == Metric{96, 97});
    CHECK(*r.acc.value() == doctest::Approx(0.99174).epsilon(1e-5));
    CHECK(*r.f1.value() == doctest::Approx(0.98969).epsilon(1e-5));
    CHECK(FormatSummary(r) == "Rec=100.0 Spe=98.6 Acc=99.2 F1=99.0");
}

TEST_CASE("metrics for the perfect confusion") {
    CHECK(FormatSummary(ComputeMetrics({48, 0, 73, 0})) == "Rec=100.0 Spe=100.0 Acc=100.0 F1=100.0");
}

TEST_CASE("undefined metrics") {
    const auto r = ComputeMetrics({0, 0, 5, 0});
    CHECK_FALSE(r.rec.defined());
    CHECK_FALSE(r.pre.defined());
    CHECK_FALSE(r.f1.defined());
    CHECK(*r.acc.value() == 1.0);
    CHECK(*r.spe.value() == 1.0);
    CHECK(r.rec.percent() == "undefined");
    const auto j = MetricsToJson(r);
    CHECK(j["REC"]["value"].is_null());
    CHECK(j["REC"]["defined"] == false);
    CHECK(j["ACC"]["percent"] == "100.0");
    CHECK_THROWS_AS(ComputeMetrics({0, 0, 0, 0}), Error);
}

TEST_CASE("F1 equals the harmonic mean of precision and recall") {
    SeededRng rng(1);
    for (int t = 0; t < 200; ++t) {
        const ConfusionMatrix cm{1 + rng.Below(100), rng.Below(100), rng.Below(100), rng.Below(100)};
        const auto r = ComputeMetrics(cm);
        const double p = *r.pre.value(), q = *r.rec.value();
        CHECK(*r.f1.value() == doctest::Approx(2 * p * q / (p + q)).epsilon(1e-14));
    }
}

TEST_CASE("percent rounding is half-up on exact fractions") {
    CHECK(Metric{1, 8}.percent() == "12.5");
    CHECK(Metric{1, 16}.percent() == "6.3");    // 6.25 rounds up
    CHECK(Metric{1, 32}.percent() == "3.1");    // 3.125 -> 3.1
    CHECK(Metric{1, 2000}.percent() == "0.1");  // 0.05 rounds up
    CHECK(Metric{0, 7}.percent() == "0.0");
    for (std::uint64_t d = 1; d <= 300; ++d)
        for (std::uint64_t n = 0; n <= d; ++n) REQUIRE(Metric{n, d}.percent() == ReferencePercent(n, d));
}

TEST_CASE("swapping polarity swaps recall and specificity") {
    SeededRng rng(2);
    for (int t = 0; t < 100; ++t) {
        const ConfusionMatrix cm{1 + rng.Below(50), 1 + rng.Below(50), 1 + rng.Below(50), 1 + rng.Below(50)};
        const auto s = SwapPolarity(cm);
        CHECK(s.tp == cm.tn);
        CHECK(s.fn == cm.fp);
        const auto a = ComputeMetrics(cm), b = ComputeMetrics(s);
        CHECK(a.rec == b.spe);
        CHECK(a.spe == b.rec);
        CHECK(a.acc == b.acc);
        CHECK(SwapPolarity(s) == cm);
    }
    // relabelling predictions and truth gives the same swap
    const std::vector<Label> truth = {P, P, N, N, P}, pred = {P, N, P, N, N};
    std::vector<Label> t2, p2;
    for (auto l : truth) t2.push_back(l == P ? N : P);
    for (auto l : pred) p2.push_back(l == P ? N : P);
    CHECK(Confusion(t2, p2) == SwapPolarity(Confusion(truth, pred)));
}

TEST_CASE("stratified folds on 48 + 73 segments") {
    const auto m = LabelledMatrix(48, 73, 16);
    const auto plan = MakeFolds(m, 10, SplitMode::segment_stratified, 0);
    CHECK(plan.assignments.size() == 121);
    std::size_t covered = 0;
    for (std::size_t f = 0; f < 10; ++f) {
        std::size_t pos = 0, neg = 0;
        for (std::size_t i : plan.TestIndices(f)) (m.labels[i] == P ? pos : neg)++;
        CHECK((pos == 4 || pos == 5));
        CHECK((neg == 7 || neg == 8));
        covered += pos + neg;
        CHECK(plan.TrainIndices(f).size() + pos + neg == 121);
    }
    CHECK(covered == 121);
    CHECK(MakeFolds(m, 10, SplitMode::segment_stratified, 0).assignments == plan.assignments);
    CHECK(MakeFolds(m, 10, SplitMode::segment_stratified, 1).assignments != plan.assignments);
}

TEST_CASE("fold validation") {
    const auto m = LabelledMatrix(3, 3, 3);
    CHECK_THROWS_AS(MakeFolds(m, 1, SplitMode::segment_stratified, 0), Error);
    CHECK_THROWS_AS(MakeFolds(m, 7, SplitMode::segment_stratified, 0), Error);
    CHECK_THROWS_AS(MakeFolds(m, 4, SplitMode::subject_grouped, 0), Error);
    CHECK_THROWS_AS(ParseSplitMode("random"), Error);
}

TEST_CASE("subject-grouped folds keep each subject in one fold") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto m = LabelledMatrix(48, 73, 16);
        const auto plan = MakeFolds(m, 5, SplitMode::subject_grouped, seed);
        std::map<std::string, std::set<std::size_t>> folds_of;
        for (std::size_t i = 0; i < m.size(); ++i) folds_of[m.sources[i].subject_id].insert(plan.assignments[i]);
        for (const auto& [subject, folds] : folds_of) CHECK(folds.size() == 1);
        std::vector<std::size_t> sizes(5, 0);
        for (auto a : plan.assignments) ++sizes[a];
        for (auto s : sizes) CHECK(s > 0);
        CHECK(MakeFolds(m, 5, SplitMode::subject_grouped, seed).assignments == plan.assignments);
    }
}
