// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include "coughdwt/features.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "coughdwt/error.hpp"

namespace coughdwt {

const std::vector<std::string>& FeatureNames() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        out.reserve(kFeatureCount);
        for (auto band : kBandNames)
            for (auto stat : kStatNames) out.push_back(std::string(band) + "_" + std::string(stat));
        return out;
    }();
    return names;
}

BandStats BandFeatures(std::span<const double> coeffs) {
    if (coeffs.empty()) throw Error(Stage::features, ErrorCode::invalid_argument, "empty band");
    constexpr double kMomentFloor = 1e-24;
    const auto n = static_cast<double>(coeffs.size());

    double sum = 0.0, sum_abs = 0.0, energy = 0.0;
    for (double c : coeffs) {
        sum += c;
        sum_abs += std::abs(c);
        energy += c * c;
    }
    const double mean = sum / n;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double c : coeffs) {
        const double dev = c - mean;
        const double dev2 = dev * dev;
        m2 += dev2;
        m3 += dev2 * dev;
        m4 += dev2 * dev2;
    }
    const double ss = m2;
    m2 /= n;
    m3 /= n;
    m4 /= n;

    std::size_t crossings = 0;
    int previous_sign = 0;
    for (double c : coeffs) {
        const int sign = (c > 0.0) - (c < 0.0);
        if (sign == 0) continue;
        if (previous_sign != 0 && sign != previous_sign) ++crossings;
        previous_sign = sign;
    }

    double entropy = 0.0;
    if (energy > 0.0) {
        for (double c : coeffs) {
            const double p = (c * c) / energy;
            if (p > 0.0) entropy -= p * std::log(p);
        }
    }

    BandStats stats{};
    stats[0] = mean;
    stats[1] = sum_abs / n;
    stats[2] = coeffs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    stats[3] = std::sqrt(energy / n);
    stats[4] = energy;
    stats[5] = static_cast<double>(crossings);
    stats[6] = m2 < kMomentFloor ? 0.0 : m3 / std::pow(m2, 1.5);
    stats[7] = m2 < kMomentFloor ? 0.0 : m4 / (m2 * m2) - 3.0;
    stats[8] = entropy;
    return stats;
}

FeatureVector ExtractFeatures(const WaveletDecomposition& decomposition) {
    if (decomposition.bands.size() != kFeatureBands)
        throw Error(Stage::features, ErrorCode::invalid_argument,
                    "wrong band count: expected " + std::to_string(kFeatureBands) + " bands (5 levels), got " +
                        std::to_string(decomposition.bands.size()));
    FeatureVector out;
    out.values.reserve(kFeatureCount);
    for (const auto& band : decomposition.bands) {
        const BandStats stats = BandFeatures(band);
        out.values.insert(out.values.end(), stats.begin(), stats.end());
    }
    return out;
}

FeatureMatrix FeatureMatrix::Subset(std::span<const std::size_t> indices) const {
    FeatureMatrix out;
    out.names = names;
    out.rows.reserve(indices.size());
    out.labels.reserve(indices.size());
    out.sources.reserve(indices.size());
    for (std::size_t i : indices) {
        out.rows.push_back(rows.at(i));
        out.labels.push_back(labels.at(i));
        out.sources.push_back(sources.at(i));
    }
    return out;
}

void CheckMatrix(const FeatureMatrix& matrix) {
    if (matrix.rows.size() != matrix.labels.size() || matrix.rows.size() != matrix.sources.size())
        throw Error(Stage::features, ErrorCode::invalid_argument, "rows, labels and sources are misaligned");
    for (const auto& row : matrix.rows)
        if (row.size() != matrix.names.size())
            throw Error(Stage::features, ErrorCode::invalid_argument,
                        "row width " + std::to_string(row.size()) + " != column count " +
                            std::to_string(matrix.names.size()));
}

void WriteFeatureCsv(std::ostream& out, const FeatureMatrix& matrix, std::span<const std::string> preamble) {
    CheckMatrix(matrix);
    for (const auto& line : preamble) out << "# " << line << '\n';
    for (const auto& name : matrix.names) out << name << ',';
    out << "label,subject_id,segment_index\n";
    char buffer[64];
    for (std::size_t r = 0; r < matrix.size(); ++r) {
        for (double v : matrix.rows[r]) {
            std::snprintf(buffer, sizeof buffer, "%.17g", v);
            out << buffer << ',';
        }
        out << LabelName(matrix.labels[r]) << ',' << matrix.sources[r].subject_id << ','
            << matrix.sources[r].segment_index << '\n';
    }
}

}  // namespace coughdwt
