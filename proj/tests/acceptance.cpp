// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors
//
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "coughdwt/config.hpp"
#include "coughdwt/error.hpp"
#include "coughdwt/eval.hpp"
#include "coughdwt/features.hpp"
#include "coughdwt/normalize.hpp"
#include "coughdwt/pipeline.hpp"
#include "coughdwt/random.hpp"
#include "coughdwt/svm.hpp"
#include "coughdwt/wavelet.hpp"
#include "support/svm_check.hpp"
#include "support/synthetic.hpp"

namespace {

using namespace coughdwt;
using Clock = std::chrono::steady_clock;

constexpr double kRoundTripTol = 1e-8;
constexpr double kParsevalRelTol = 1e-8;
constexpr double kFeatureTol = 1e-9;
constexpr double kNormTol = 1e-10;
constexpr double kObjectiveTol = 1e-6;
constexpr double kAnalyticTol = 1e-6;
constexpr double kMinAccuracy = 0.95;
constexpr double kDwtBudgetSeconds = 10.0;
constexpr double kEndToEndBudgetSeconds = 60.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double Seconds(Clock::time_point since) { return std::chrono::duration<double>(Clock::now() - since).count(); }

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, format, a, b, c);
    return buffer;
}

std::vector<double> RandomSignal(std::size_t n, SeededRng& rng) {
    std::vector<double> x(n);
    for (double& v : x) v = 2.0 * rng.Uniform() - 1.0;
    return x;
}

std::string Slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Reference summary cells, as printed, for the two normalizer configurations.
struct PrintedRow {
    const char* cells;
    ConfusionMatrix counts;
};

Outcome MetricReproduction() {
    const PrintedRow rows[] = {{"Rec=100 Spe=98.6 Acc=99.2 F1=99.0", {48, 1, 72, 0}},
                               {"Rec=100 Spe=100 Acc=100 F1=100", {48, 0, 73, 0}}};
    const std::string expected[] = {"Rec=100.0 Spe=98.6 Acc=99.2 F1=99.0", "Rec=100.0 Spe=100.0 Acc=100.0 F1=100.0"};
    Outcome out{true, ""};
    for (int r = 0; r < 2; ++r) {
        const MetricsReport m = ComputeMetrics(rows[r].counts);
        const std::string got = FormatSummary(m);
        // Digit-for-digit against the printed cell, read as numbers.
        double rec, spe, acc, f1;
        std::sscanf(rows[r].cells, "Rec=%lf Spe=%lf Acc=%lf F1=%lf", &rec, &spe, &acc, &f1);
        const bool printed_match = std::stod(m.rec.percent()) == rec && std::stod(m.spe.percent()) == spe &&
                                   std::stod(m.acc.percent()) == acc && std::stod(m.f1.percent()) == f1;
        out.pass = out.pass && got == expected[r] && printed_match;
        out.detail += (r ? "; " : "") + std::string("\"") + got + "\"";
    }
    return out;
}

struct DwtSweep {
    double max_roundtrip = 0.0;
    double max_parseval = 0.0;
    double seconds = 0.0;
    std::size_t signals = 0;
};

DwtSweep SweepDwt(Boundary boundary, bool parseval) {
    DwtSweep s;
    const auto start = Clock::now();
    SeededRng rng(boundary == Boundary::symmetric ? 2024 : 2025);
    for (std::size_t length : {512u, 1000u, 4926u, 78720u}) {
        for (const char* name : {"db2", "db4", "db8"}) {
            const WaveletSpec& spec = GetWavelet(name);
            for (int i = 0; i < 100; ++i) {
                const std::vector<double> x = RandomSignal(length, rng);
                const auto d = DwtDecompose(x, spec, 5, boundary);
                const auto y = IdwtReconstruct(d);
                for (std::size_t t = 0; t < length; ++t)
                    s.max_roundtrip = std::max(s.max_roundtrip, std::abs(y[t] - x[t]));
                if (parseval) {
                    double ex = 0.0, ec = 0.0;
                    for (double v : x) ex += v * v;
                    for (const auto& band : d.bands)
                        for (double v : band) ec += v * v;
                    s.max_parseval = std::max(s.max_parseval, std::abs(ec - ex) / ex);
                }
                ++s.signals;
            }
        }
    }
    s.seconds = Seconds(start);
    return s;
}

Outcome DwtRoundTrip() {
    const DwtSweep sym = SweepDwt(Boundary::symmetric, false);
    const DwtSweep per = SweepDwt(Boundary::periodic, false);
    const double worst = std::max(sym.max_roundtrip, per.max_roundtrip);
    return {worst <= kRoundTripTol && sym.seconds < kDwtBudgetSeconds,
            Fmt("%.0f signals per boundary, max err %.2e", static_cast<double>(sym.signals), worst) +
                Fmt(", %.2f s symmetric / %.2f s periodic", sym.seconds, per.seconds)};
}

Outcome Parseval() {
    const DwtSweep per = SweepDwt(Boundary::periodic, true);
    return {per.max_parseval <= kParsevalRelTol,
            Fmt("%.0f signals, max relative energy error %.2e", static_cast<double>(per.signals), per.max_parseval)};
}

Outcome FeatureContract() {
    SeededRng rng(77);
    const WaveletSpec& spec = GetWavelet("db4");
    double worst_scaled = 0.0, worst_invariant = 0.0;
    bool lengths_ok = true, zc_ok = true;
    for (int s = 0; s < 50; ++s) {
        std::vector<double> x = RandomSignal(78720, rng);
        // vary the spectral content across segments
        const double smooth = rng.Uniform();
        for (std::size_t i = 1; i < x.size(); ++i) x[i] = smooth * x[i - 1] + (1.0 - smooth) * x[i];
        std::vector<double> x2(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) x2[i] = 2.0 * x[i];
        const auto f = ExtractFeatures(DwtDecompose(x, spec, 5, Boundary::symmetric)).values;
        const auto g = ExtractFeatures(DwtDecompose(x2, spec, 5, Boundary::symmetric)).values;
        lengths_ok = lengths_ok && f.size() == kFeatureCount && g.size() == kFeatureCount;
        for (std::size_t b = 0; b < kFeatureBands; ++b) {
            const double* p = &f[b * kStatsPerBand];
            const double* q = &g[b * kStatsPerBand];
            auto rel = [](double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); };
            for (int k : {0, 1, 2, 3}) worst_scaled = std::max(worst_scaled, rel(q[k], 2.0 * p[k]));
            worst_scaled = std::max(worst_scaled, rel(q[4], 4.0 * p[4]));
            zc_ok = zc_ok && q[5] == p[5];
            for (int k : {6, 7, 8}) worst_invariant = std::max(worst_invariant, std::abs(q[k] - p[k]));
        }
    }
    return {lengths_ok && zc_ok && worst_scaled <= kFeatureTol && worst_invariant <= kFeatureTol,
            Fmt("50 segments, length 54, scaled rel err %.2e, invariant abs err %.2e", worst_scaled, worst_invariant)};
}

Outcome NormalizerSelfFit() {
    SeededRng rng(5);
    double worst_mean = 0.0, worst_sd = 0.0;
    bool minmax_exact = true;
    std::size_t checked = 0;
    for (int m = 0; m < 20; ++m) {
        FeatureMatrix fm;
        fm.names = FeatureNames();
        fm.rows.assign(121, std::vector<double>(54));
        for (std::size_t j = 0; j < 54; ++j) {
            const double scale = std::pow(10.0, 8.0 * rng.Uniform() - 4.0);
            const double offset = 50.0 * scale * (rng.Uniform() - 0.5);
            for (auto& row : fm.rows) row[j] = offset + scale * (rng.Uniform() - 0.5);
        }
        for (std::size_t i = 0; i < 121; ++i) {
            fm.labels.push_back(i < 48 ? Label::positive : Label::negative);
            fm.sources.push_back({"s", i, 0});
        }
        const auto z = ApplyNormalizer(FitNormalizer(NormMethod::zscore, fm), fm);
        const auto mm_params = FitNormalizer(NormMethod::minmax, fm);
        const auto mm = ApplyNormalizer(mm_params, fm);
        for (std::size_t j = 0; j < 54; ++j) {
            if (mm_params.constant_flags[j]) continue;
            long double mean = 0.0L;
            for (const auto& row : z.rows) mean += row[j];
            mean /= 121.0L;
            long double ss = 0.0L;
            for (const auto& row : z.rows) ss += (row[j] - mean) * (row[j] - mean);
            worst_mean = std::max(worst_mean, static_cast<double>(std::fabs(mean)));
            worst_sd = std::max(worst_sd, static_cast<double>(std::fabs(std::sqrt(ss / 120.0L) - 1.0L)));
            double lo = mm.rows[0][j], hi = mm.rows[0][j];
            for (const auto& row : mm.rows) lo = std::min(lo, row[j]), hi = std::max(hi, row[j]);
            minmax_exact = minmax_exact && lo == 0.0 && hi == 1.0;
            ++checked;
        }
    }
    return {worst_mean <= kNormTol && worst_sd <= kNormTol && minmax_exact && checked > 0,
            Fmt("%.0f columns, zscore |mean| %.2e, |sd-1| %.2e", static_cast<double>(checked), worst_mean, worst_sd) +
                (minmax_exact ? ", minmax exactly [0,1]" : ", minmax NOT exact")};
}

Outcome SvmOracle() {
    double worst_gap = 0.0;
    std::size_t mismatches = 0, unconverged = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const KernelKind kind = seed % 2 ? KernelKind::linear : KernelKind::rbf;
        const auto problem = testing::RandomSmallProblem(seed, kind);
        const auto cmp = testing::CompareWithOracle(problem, seed, 0);
        worst_gap = std::max(worst_gap, std::abs(cmp.smo_objective - cmp.oracle_objective));
        mismatches += cmp.label_mismatches;
        unconverged += cmp.smo_converged ? 0 : 1;
    }

    const std::vector<std::vector<double>> rows = {{-1.0}, {1.0}};
    const std::vector<int> labels = {-1, 1};
    TrainConfig config;
    config.C = 10.0;
    config.tolerance = 1e-9;
    const SvmModel m = TrainSmo(rows, labels, {KernelKind::linear, 1.0}, config);
    double analytic = std::abs(m.bias);
    if (m.dual_coeffs.size() != 2) analytic = INFINITY;
    else
        for (double c : m.dual_coeffs) analytic = std::max(analytic, std::abs(std::abs(c) - 0.5));

    return {worst_gap <= kObjectiveTol && mismatches == 0 && unconverged == 0 && analytic <= kAnalyticTol,
            Fmt("200 instances, max objective gap %.2e, %.0f prediction mismatches", worst_gap,
                static_cast<double>(mismatches)) +
                Fmt(", analytic err %.2e", analytic)};
}

Outcome EndToEnd(const std::filesystem::path& root) {
    const auto start = Clock::now();
    const auto manifest = testing::WriteTwoBandDataset(root / "two_band", 60, 60, 7);
    nlohmann::json flags = {{"manifest", manifest.string()}, {"out", (root / "two_band_out").string()}};
    const ExperimentConfig base = ResolveConfig(nullptr, flags);
    const Dataset dataset = BuildDataset(base);
    bool pass = true;
    std::string detail = std::to_string(dataset.matrix.size()) + " segments";
    for (const char* norm : {"zscore", "minmax"}) {
        flags["norm"] = norm;
        const auto report = RunExperiment(ResolveConfig(nullptr, flags), dataset);
        const auto& acc = report["pooled"]["metrics"]["ACC"];
        const double value = acc["value"].get<double>();
        pass = pass && value >= kMinAccuracy;
        detail += std::string(", ") + norm + " ACC=" + acc["percent"].get<std::string>() + "%";
    }
    const double seconds = Seconds(start);
    pass = pass && seconds < kEndToEndBudgetSeconds;
    return {pass, detail + Fmt(", %.1f s", seconds)};
}

Outcome RealDataRun(const std::filesystem::path& root, std::filesystem::path& manifest_used) {
    const char* env = std::getenv("COUGHDWT_VIRUFY_MANIFEST");
    const bool real = env != nullptr && *env != '\0';
    manifest_used = real ? std::filesystem::path(env) : testing::WriteCohortShapedDataset(root / "cohort", 3);
    const nlohmann::json flags = {{"manifest", manifest_used.string()}, {"out", (root / "cohort_out").string()}};
    const auto written = Execute(ResolveConfig(nullptr, flags), Command::cross_validate);
    const auto report = nlohmann::json::parse(Slurp(written.at(0)));

    bool complete = true;
    for (const char* key : {"report", "version", "timestamp", "config", "feature_set", "dataset", "protocol", "folds",
                            "pooled"})
        complete = complete && report.contains(key);
    const std::size_t segments = report["dataset"]["segments"];
    complete = complete && report["folds"].size() == 10 && report["pooled"]["confusion"]["total"] == segments;
    for (const auto& fold : report["folds"])
        for (const char* key : {"confusion", "metrics", "summary", "train_metrics", "test_rows"})
            complete = complete && fold.contains(key);
    for (const char* key : {"ACC", "REC", "SPE", "PRE", "F1"})
        complete = complete && report["pooled"]["metrics"].contains(key);
    if (!real) complete = complete && report["dataset"]["positive"] == 48 && report["dataset"]["negative"] == 73;

    return {complete, std::string(real ? "real manifest" : "stand-in cohort (real recordings not present)") + ", " +
                          std::to_string(segments) + " segments, pooled " +
                          report["pooled"]["summary"].get<std::string>() + " (no threshold asserted)"};
}

Outcome Determinism(const std::filesystem::path& root, const std::filesystem::path& manifest) {
    const nlohmann::json flags = {{"manifest", manifest.string()}, {"out", (root / "det_out").string()}, {"seed", 17}};
    const auto config = ResolveConfig(nullptr, flags);
    const std::string a = Slurp(Execute(config, Command::cross_validate).at(0));
    const std::string b = Slurp(Execute(config, Command::cross_validate).at(0));
    const bool same = StripTimestamp(a) == StripTimestamp(b) && !a.empty();
    return {same, std::to_string(a.size()) + "-byte reports " + (same ? "identical" : "DIFFER") + " modulo timestamp"};
}

}  // namespace

int main() {
    testing::TempDir root("acceptance");
    std::filesystem::path cohort_manifest;
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "metric reproduction", MetricReproduction},
        {2, "DWT round trip", DwtRoundTrip},
        {3, "Parseval (periodic)", Parseval},
        {4, "feature contract", FeatureContract},
        {5, "normalizer self-fit", NormalizerSelfFit},
        {6, "SVM vs QP oracle", SvmOracle},
        {7, "end-to-end synthetic CV", [&] { return EndToEnd(root.path()); }},
        {8, "real-data run completes", [&] { return RealDataRun(root.path(), cohort_manifest); }},
        {9, "determinism", [&] { return Determinism(root.path(), cohort_manifest); }},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] AC%d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
