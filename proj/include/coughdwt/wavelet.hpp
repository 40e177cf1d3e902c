// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coughdwt {

enum class Boundary { symmetric, periodic };

std::string_view BoundaryName(Boundary boundary) noexcept;
Boundary ParseBoundary(std::string_view name);

/// Orthogonal two-channel filter bank. dec_lo is stored in convolution order;
/// the other three filters are derived from it (quadrature mirror and time
/// reversal), so they can never drift out of sync.
struct WaveletSpec {
    std::string name;
    std::vector<double> dec_lo;
    std::vector<double> dec_hi;
    std::vector<double> rec_lo;
    std::vector<double> rec_hi;
    int vanishing_moments = 0;

    std::size_t filter_length() const noexcept { return dec_lo.size(); }
};

/// Builds a spec from decomposition low-pass taps and checks the
/// orthogonality invariants. Throws Error(Stage::wavelet) on violation.
WaveletSpec MakeOrthogonalSpec(std::string name, std::vector<double> dec_lo, int vanishing_moments);

/// Checks equal even lengths, unit energy per channel, sum(dec_lo) = sqrt(2),
/// sum(dec_hi) = 0, double-shift orthogonality and the mirror relation.
void ValidateSpec(const WaveletSpec& spec);

/// Registered filter banks: "haar" (alias "db1") and db2 .. db10. Validated
/// once on first use.
const WaveletSpec& GetWavelet(std::string_view name);
std::vector<std::string> AvailableWavelets();

/// Coefficient count produced by one analysis step.
/// symmetric: floor((n + F - 1) / 2); periodic: ceil(n / 2).
std::size_t DwtOutputLength(std::size_t input_length, std::size_t filter_length, Boundary boundary);

struct DwtLevel {
    std::vector<double> approx;
    std::vector<double> detail;
};

/// One analysis step: extend, filter with dec_lo / dec_hi, keep odd samples.
/// Periodic mode wraps the signal, zero-padding odd lengths by one sample.
DwtLevel DwtSingleLevel(std::span<const double> signal, const WaveletSpec& spec, Boundary boundary);

/// One synthesis step producing exactly output_length samples.
std::vector<double> IdwtSingleLevel(std::span<const double> approx, std::span<const double> detail,
                                    const WaveletSpec& spec, Boundary boundary,
                                    std::size_t output_length);

/// Multilevel result. bands = [D1, ..., Dn, An].
struct WaveletDecomposition {
    std::vector<std::vector<double>> bands;
    WaveletSpec spec;
    Boundary boundary = Boundary::symmetric;
    std::size_t original_length = 0;

    std::size_t levels() const noexcept { return bands.empty() ? 0 : bands.size() - 1; }
    std::vector<std::size_t> band_lengths() const;
    /// "D1".."Dn" for details, "An" for the approximation.
    std::string band_name(std::size_t band) const;
};

WaveletDecomposition DwtDecompose(std::span<const double> signal, const WaveletSpec& spec, int levels,
                                  Boundary boundary);

/// Inverse of DwtDecompose; throws on band lengths inconsistent with
/// original_length and the length recurrence.
std::vector<double> IdwtReconstruct(const WaveletDecomposition& decomposition);

/// CSV with header `band,index,value`, values at 17 significant digits.
void WriteCoefficientsCsv(std::ostream& out, const WaveletDecomposition& decomposition);

}  // namespace coughdwt
