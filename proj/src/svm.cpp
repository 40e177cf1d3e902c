// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include "coughdwt/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "coughdwt/error.hpp"
#include "coughdwt/random.hpp"

namespace coughdwt {
namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& message) { throw Error(Stage::svm, code, message); }

}  // namespace

std::string_view KernelName(KernelKind kind) noexcept { return kind == KernelKind::linear ? "linear" : "rbf"; }

KernelKind ParseKernel(std::string_view name) {
    if (name == "linear") return KernelKind::linear;
    if (name == "rbf") return KernelKind::rbf;
    Fail(ErrorCode::invalid_argument, "unknown kernel '" + std::string(name) + "' (expected linear|rbf)");
}

double KernelEval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        Fail(ErrorCode::invalid_argument, "dimension mismatch: " + std::to_string(x.size()) + " vs " +
                                              std::to_string(y.size()));
    if (spec.kind == KernelKind::linear) {
        double dot = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
        return dot;
    }
    double dist2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        dist2 += d * d;
    }
    return std::exp(-spec.gamma * dist2);
}

std::vector<std::vector<double>> GramMatrix(const KernelSpec& kernel, const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<std::vector<double>> gram(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) gram[i][j] = gram[j][i] = KernelEval(kernel, rows[i], rows[j]);
    return gram;
}

double DualObjective(std::span<const double> alpha, std::span<const int> labels,
                     const std::vector<std::vector<double>>& gram) {
    double linear = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        linear += alpha[i];
        for (std::size_t j = 0; j < alpha.size(); ++j)
            quad += alpha[i] * alpha[j] * labels[i] * labels[j] * gram[i][j];
    }
    return linear - 0.5 * quad;
}

double DefaultGamma(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows[0].empty()) Fail(ErrorCode::invalid_argument, "cannot derive gamma from an empty matrix");
    const std::size_t d = rows[0].size();
    const auto n = static_cast<double>(rows.size());
    double mean_var = 0.0;
    if (rows.size() > 1) {
        for (std::size_t j = 0; j < d; ++j) {
            double mean = 0.0;
            for (const auto& r : rows) mean += r[j];
            mean /= n;
            double ss = 0.0;
            for (const auto& r : rows) ss += (r[j] - mean) * (r[j] - mean);
            mean_var += ss / (n - 1.0);
        }
        mean_var /= static_cast<double>(d);
    }
    if (!(mean_var > 0.0) || !std::isfinite(mean_var)) return 1.0 / static_cast<double>(d);
    return 1.0 / (static_cast<double>(d) * mean_var);
}

SvmModel TrainSmo(const std::vector<std::vector<double>>& rows, std::span<const int> labels,
                  const KernelSpec& kernel, const TrainConfig& config) {
    const std::size_t n = rows.size();
    if (n != labels.size()) Fail(ErrorCode::invalid_argument, "rows and labels differ in length");
    if (!(config.C > 0.0)) Fail(ErrorCode::invalid_argument, "C must be > 0");
    if (!(config.tolerance > 0.0)) Fail(ErrorCode::invalid_argument, "tolerance must be > 0");
    if (config.max_passes < 1) Fail(ErrorCode::invalid_argument, "max_passes must be >= 1");
    if (!(config.positive_weight > 0.0) || !(config.negative_weight > 0.0))
        Fail(ErrorCode::invalid_argument, "class weights must be > 0");
    if (kernel.kind == KernelKind::rbf && !(kernel.gamma > 0.0)) Fail(ErrorCode::invalid_argument, "gamma must be > 0");

    bool has_pos = false, has_neg = false;
    for (int y : labels) {
        if (y == 1) has_pos = true;
        else if (y == -1) has_neg = true;
        else Fail(ErrorCode::invalid_argument, "labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) Fail(ErrorCode::invalid_argument, "single-class training data");
    const std::size_t dim = rows[0].size();
    for (const auto& r : rows) {
        if (r.size() != dim) Fail(ErrorCode::invalid_argument, "rows differ in dimension");
        for (double v : r)
            if (!std::isfinite(v)) Fail(ErrorCode::numeric, "non-finite feature value");
    }

    const auto gram = GramMatrix(kernel, rows);
    std::vector<double> box(n);
    for (std::size_t t = 0; t < n; ++t)
        box[t] = config.C * (labels[t] == 1 ? config.positive_weight : config.negative_weight);

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);  // (Q alpha)_t - 1, Q_ts = y_t y_s K_ts

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    SeededRng rng(config.seed);
    rng.Shuffle(std::span<std::size_t>(order));

    auto in_up = [&](std::size_t t) { return labels[t] == 1 ? alpha[t] < box[t] : alpha[t] > 0.0; };
    auto in_low = [&](std::size_t t) { return labels[t] == 1 ? alpha[t] > 0.0 : alpha[t] < box[t]; };

    const std::size_t max_iterations = static_cast<std::size_t>(config.max_passes) * n;
    SvmModel model;
    model.kernel = kernel;
    model.C = config.C;
    model.positive_weight = config.positive_weight;
    model.negative_weight = config.negative_weight;

    std::size_t iter = 0;
    for (; iter < max_iterations; ++iter) {
        // Maximal violating pair: i maximizes -y G over I_up, j minimizes it over I_low.
        std::size_t i = n, j = n;
        double up_max = -std::numeric_limits<double>::infinity();
        double low_min = std::numeric_limits<double>::infinity();
        for (std::size_t t : order) {
            const double v = -labels[t] * grad[t];
            if (in_up(t) && v > up_max) {
                up_max = v;
                i = t;
            }
            if (in_low(t) && v < low_min) {
                low_min = v;
                j = t;
            }
        }
        if (i == n || j == n || up_max - low_min <= config.tolerance) {
            model.converged = true;
            break;
        }

        const double ci = box[i], cj = box[j];
        const double old_i = alpha[i], old_j = alpha[j];
        double eta = gram[i][i] + gram[j][j] - 2.0 * gram[i][j];
        if (eta <= 0.0) eta = 1e-12;

        double ai = old_i, aj = old_j;
        if (labels[i] != labels[j]) {
            const double delta = (-grad[i] - grad[j]) / eta;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0.0) {
                if (aj < 0.0) { aj = 0.0; ai = diff; }
            } else {
                if (ai < 0.0) { ai = 0.0; aj = -diff; }
            }
            if (diff > ci - cj) {
                if (ai > ci) { ai = ci; aj = ci - diff; }
            } else {
                if (aj > cj) { aj = cj; ai = cj + diff; }
            }
        } else {
            const double delta = (grad[i] - grad[j]) / eta;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > ci) {
                if (ai > ci) { ai = ci; aj = sum - ci; }
            } else {
                if (aj < 0.0) { aj = 0.0; ai = sum; }
            }
            if (sum > cj) {
                if (aj > cj) { aj = cj; ai = sum - cj; }
            } else {
                if (ai < 0.0) { ai = 0.0; aj = sum; }
            }
        }
        alpha[i] = ai;
        alpha[j] = aj;

        const double di = (ai - old_i) * labels[i];
        const double dj = (aj - old_j) * labels[j];
        for (std::size_t t = 0; t < n; ++t) grad[t] += labels[t] * (gram[t][i] * di + gram[t][j] * dj);
    }
    model.iterations = iter;

    // Bias: mean over free vectors, else midpoint of the feasible interval.
    double free_sum = 0.0;
    std::size_t free_count = 0;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        const double v = -labels[t] * grad[t];
        if (alpha[t] > 0.0 && alpha[t] < box[t]) {
            free_sum += v;
            ++free_count;
        } else if (in_up(t)) {
            lower = std::max(lower, v);
        } else {
            upper = std::min(upper, v);
        }
    }
    if (free_count > 0) {
        model.bias = free_sum / static_cast<double>(free_count);
    } else if (std::isfinite(lower) && std::isfinite(upper)) {
        model.bias = 0.5 * (lower + upper);
    } else {
        model.bias = std::isfinite(lower) ? lower : upper;
    }

    model.dual_objective = DualObjective(alpha, labels, gram);
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0.0) {
            model.support_vectors.push_back(rows[t]);
            model.dual_coeffs.push_back(alpha[t] * labels[t]);
            model.support_indices.push_back(t);
        }
    }
    return model;
}

Prediction Predict(const SvmModel& model, std::span<const double> x) {
    if (!model.support_vectors.empty() && model.support_vectors[0].size() != x.size())
        Fail(ErrorCode::invalid_argument, "dimension mismatch: model expects " +
                                              std::to_string(model.support_vectors[0].size()) + " features, got " +
                                              std::to_string(x.size()));
    double decision = model.bias;
    for (std::size_t i = 0; i < model.support_vectors.size(); ++i)
        decision += model.dual_coeffs[i] * KernelEval(model.kernel, model.support_vectors[i], x);
    return {decision >= 0.0 ? Label::positive : Label::negative, decision};
}

nlohmann::json ModelToJson(const SvmModel& model) {
    nlohmann::json j;
    j["kernel"] = KernelName(model.kernel.kind);
    j["gamma"] = model.kernel.kind == KernelKind::rbf ? nlohmann::json(model.kernel.gamma) : nlohmann::json(nullptr);
    j["C"] = model.C;
    j["positive_weight"] = model.positive_weight;
    j["negative_weight"] = model.negative_weight;
    j["bias"] = model.bias;
    j["label_map"] = {{"+1", "positive"}, {"-1", "negative"}};
    j["support_vectors"] = model.support_vectors;
    j["dual_coeffs"] = model.dual_coeffs;
    j["training"] = {{"iterations", model.iterations},
                     {"converged", model.converged},
                     {"dual_objective", model.dual_objective},
                     {"support_indices", model.support_indices}};
    return j;
}

SvmModel ModelFromJson(const nlohmann::json& j) {
    try {
        SvmModel model;
        model.kernel.kind = ParseKernel(j.at("kernel").get<std::string>());
        if (model.kernel.kind == KernelKind::rbf) model.kernel.gamma = j.at("gamma").get<double>();
        model.C = j.at("C").get<double>();
        model.positive_weight = j.value("positive_weight", 1.0);
        model.negative_weight = j.value("negative_weight", 1.0);
        model.bias = j.at("bias").get<double>();
        model.support_vectors = j.at("support_vectors").get<std::vector<std::vector<double>>>();
        model.dual_coeffs = j.at("dual_coeffs").get<std::vector<double>>();
        if (model.support_vectors.size() != model.dual_coeffs.size())
            Fail(ErrorCode::format, "support_vectors and dual_coeffs differ in length");
        if (model.support_vectors.empty()) Fail(ErrorCode::format, "model has no support vectors");
        if (j.contains("training")) {
            const auto& t = j["training"];
            model.iterations = t.value("iterations", std::size_t{0});
            model.converged = t.value("converged", false);
            model.dual_objective = t.value("dual_objective", 0.0);
            model.support_indices = t.value("support_indices", std::vector<std::size_t>{});
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        Fail(ErrorCode::format, std::string("malformed model: ") + e.what());
    }
}

}  // namespace coughdwt
