// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include "coughdwt/wavelet.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "coughdwt/error.hpp"

namespace coughdwt {
namespace {

struct TapTable {
    const char* name;
    int vanishing_moments;
    std::vector<double> dec_lo;
};

// Daubechies decomposition low-pass taps, convolution order.
// Regenerate with tools/gen_daubechies_taps.py.
const std::vector<TapTable>& DaubechiesTaps() {
    static const std::vector<TapTable> taps = {
    {"haar", 1, {0.70710678118654752, 0.70710678118654752}},
    {"db2", 2,
        {-0.12940952255126038, 0.22414386804201338, 0.83651630373780791,
         0.48296291314453414}},
    {"db3", 3,
        {0.035226291885709537, -0.085441273882026662, -0.13501102001025459,
         0.45987750211849157, 0.80689150931109258, 0.33267055295008262}},
    {"db4", 4,
        {-0.010597401785069032, 0.032883011666885200, 0.030841381835560764,
         -0.18703481171909308, -0.027983769416859854, 0.63088076792985891,
         0.71484657055291565, 0.23037781330889650}},
    {"db5", 5,
        {0.0033357252854737713, -0.012580751999081999, -0.0062414902127982743,
         0.077571493840045714, -0.032244869584638375, -0.24229488706638203,
         0.13842814590132073, 0.72430852843777293, 0.60382926979718967,
         0.16010239797419291}},
    {"db6", 6,
        {-0.0010773010853084796, 0.0047772575109455106, 0.00055384220116149614,
         -0.031582039317486030, 0.027522865530305729, 0.097501605587323049,
         -0.12976686756726194, -0.22626469396543982, 0.31525035170919763,
         0.75113390802109535, 0.49462389039845309, 0.11154074335010946}},
    {"db7", 7,
        {0.00035371379997452025, -0.0018016407040474909, 0.00042957797292136652,
         0.012550998556099841, -0.016574541630666881, -0.038029936935014414,
         0.080612609151083072, 0.071309219266830265, -0.22403618499387498,
         -0.14390600392856498, 0.46978228740519312, 0.72913209084623512,
         0.39653931948191731, 0.077852054085009179}},
    {"db8", 8,
        {-0.00011747678412476953, 0.00067544940645056937, -0.00039174037337694705,
         -0.0048703529934515743, 0.0087460940474057767, 0.013981027917398282,
         -0.044088253930794752, -0.017369301001807546, 0.12874742662047846,
         0.00047248457391328277, -0.28401554296154693, -0.015829105256349306,
         0.58535468365420671, 0.67563073629728981, 0.31287159091429997,
         0.054415842243104010}},
    {"db9", 9,
        {3.9347320316271599e-5, -0.00025196318894271014, 0.00023038576352319597,
         0.0018476468830562265, -0.0042815036824634298, -0.0047232047577513973,
         0.022361662123679097, 0.00025094711483145196, -0.067632829061329974,
         0.030725681479333379, 0.14854074933810638, -0.096840783222976461,
         -0.29327378327917491, 0.13319738582500758, 0.65728807805130054,
         0.60482312369011111, 0.24383467461259035, 0.038077947363878347}},
    {"db10", 10,
        {-1.3264202894521245e-5, 9.3588670320069591e-5, -0.00011646685512928545,
         -0.00068585669495971163, 0.0019924052951850561, 0.0013953517470529012,
         -0.010733175483330575, 0.0036065535669561697, 0.033212674059341002,
         -0.029457536821875813, -0.071394147166397087, 0.093057364603572351,
         0.12736934033579326, -0.19594627437737704, -0.24984642432731538,
         0.28117234366057746, 0.68845903945360357, 0.52720118893172559,
         0.18817680007769149, 0.026670057900555554}},
    };
    return taps;
}

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
    throw Error(Stage::wavelet, code, message);
}

// Half-sample symmetric reflection of an arbitrary index into [0, n).
std::size_t ReflectIndex(std::ptrdiff_t p, std::size_t n) {
    const auto period = static_cast<std::ptrdiff_t>(2 * n);
    std::ptrdiff_t q = p % period;
    if (q < 0) q += period;
    return q < static_cast<std::ptrdiff_t>(n) ? static_cast<std::size_t>(q)
                                              : static_cast<std::size_t>(period - 1 - q);
}

std::size_t WrapIndex(std::ptrdiff_t p, std::size_t n) {
    std::ptrdiff_t q = p % static_cast<std::ptrdiff_t>(n);
    if (q < 0) q += static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(q);
}

}  // namespace

std::string_view BoundaryName(Boundary boundary) noexcept {
    return boundary == Boundary::symmetric ? "symmetric" : "periodic";
}

Boundary ParseBoundary(std::string_view name) {
    if (name == "symmetric") return Boundary::symmetric;
    if (name == "periodic") return Boundary::periodic;
    Fail(ErrorCode::invalid_argument, "unknown boundary '" + std::string(name) + "' (expected symmetric|periodic)");
}

void ValidateSpec(const WaveletSpec& spec) {
    constexpr double kTol = 1e-12;
    const std::size_t f = spec.dec_lo.size();
    if (f < 2 || f % 2 != 0) Fail(ErrorCode::invalid_argument, spec.name + ": filter length must be even and >= 2");
    if (spec.dec_hi.size() != f || spec.rec_lo.size() != f || spec.rec_hi.size() != f)
        Fail(ErrorCode::invalid_argument, spec.name + ": filters differ in length");

    double energy_lo = 0.0, energy_hi = 0.0, sum_lo = 0.0, sum_hi = 0.0;
    for (std::size_t k = 0; k < f; ++k) {
        energy_lo += spec.dec_lo[k] * spec.dec_lo[k];
        energy_hi += spec.dec_hi[k] * spec.dec_hi[k];
        sum_lo += spec.dec_lo[k];
        sum_hi += spec.dec_hi[k];
        const double mirror = ((k % 2 == 0) ? -1.0 : 1.0) * spec.dec_lo[f - 1 - k];
        if (spec.dec_hi[k] != mirror) Fail(ErrorCode::numeric, spec.name + ": dec_hi is not the mirror of dec_lo");
        if (spec.rec_lo[k] != spec.dec_lo[f - 1 - k] || spec.rec_hi[k] != spec.dec_hi[f - 1 - k])
            Fail(ErrorCode::numeric, spec.name + ": reconstruction filters are not time reversals");
    }
    if (std::abs(energy_lo + energy_hi - 2.0) > kTol || std::abs(energy_lo - 1.0) > kTol)
        Fail(ErrorCode::numeric, spec.name + ": filter energy is not unit");
    if (std::abs(sum_lo - std::sqrt(2.0)) > kTol) Fail(ErrorCode::numeric, spec.name + ": sum(dec_lo) != sqrt(2)");
    if (std::abs(sum_hi) > kTol) Fail(ErrorCode::numeric, spec.name + ": sum(dec_hi) != 0");
    for (std::size_t shift = 2; shift < f; shift += 2) {
        double acc = 0.0;
        for (std::size_t k = 0; k + shift < f; ++k) acc += spec.dec_lo[k] * spec.dec_lo[k + shift];
        if (std::abs(acc) > kTol) Fail(ErrorCode::numeric, spec.name + ": taps are not shift-orthogonal");
    }
}

WaveletSpec MakeOrthogonalSpec(std::string name, std::vector<double> dec_lo, int vanishing_moments) {
    WaveletSpec spec;
    spec.name = std::move(name);
    spec.vanishing_moments = vanishing_moments;
    const std::size_t f = dec_lo.size();
    spec.dec_hi.resize(f);
    spec.rec_lo.resize(f);
    spec.rec_hi.resize(f);
    for (std::size_t k = 0; k < f; ++k) {
        spec.dec_hi[k] = ((k % 2 == 0) ? -1.0 : 1.0) * dec_lo[f - 1 - k];
        spec.rec_lo[k] = dec_lo[f - 1 - k];
    }
    for (std::size_t k = 0; k < f; ++k) spec.rec_hi[k] = spec.dec_hi[f - 1 - k];
    spec.dec_lo = std::move(dec_lo);
    ValidateSpec(spec);
    return spec;
}

const WaveletSpec& GetWavelet(std::string_view name) {
    static const std::map<std::string, WaveletSpec, std::less<>> registry = [] {
        std::map<std::string, WaveletSpec, std::less<>> out;
        for (const auto& table : DaubechiesTaps())
            out.emplace(table.name, MakeOrthogonalSpec(table.name, table.dec_lo, table.vanishing_moments));
        return out;
    }();
    const std::string_view key = (name == "db1") ? std::string_view("haar") : name;
    const auto it = registry.find(key);
    if (it == registry.end())
        Fail(ErrorCode::invalid_argument, "unknown wavelet '" + std::string(name) + "' (expected haar, db1..db10)");
    return it->second;
}

std::vector<std::string> AvailableWavelets() {
    std::vector<std::string> names;
    for (const auto& table : DaubechiesTaps()) names.emplace_back(table.name);
    return names;
}

std::size_t DwtOutputLength(std::size_t input_length, std::size_t filter_length, Boundary boundary) {
    if (boundary == Boundary::symmetric) return (input_length + filter_length - 1) / 2;
    return (input_length + 1) / 2;
}

DwtLevel DwtSingleLevel(std::span<const double> signal, const WaveletSpec& spec, Boundary boundary) {
    const std::size_t n = signal.size();
    const std::size_t f = spec.filter_length();
    if (n < 2) Fail(ErrorCode::invalid_argument, "signal shorter than 2 samples");
    const std::size_t padded = (boundary == Boundary::periodic) ? n + (n % 2) : n;
    if (boundary == Boundary::periodic && padded < f)
        Fail(ErrorCode::invalid_argument, "too few samples (" + std::to_string(n) + ") for filter length " +
                                              std::to_string(f) + " under periodic boundary");

    // ext[e] holds the extended signal at index e - (f - 1).
    const std::size_t offset = f - 1;
    std::vector<double> ext(n + 2 * offset);
    for (std::size_t e = 0; e < ext.size(); ++e) {
        const auto p = static_cast<std::ptrdiff_t>(e) - static_cast<std::ptrdiff_t>(offset);
        if (boundary == Boundary::symmetric) {
            ext[e] = signal[ReflectIndex(p, n)];
        } else {
            const std::size_t q = WrapIndex(p, padded);
            ext[e] = q < n ? signal[q] : 0.0;
        }
    }

    const std::size_t out_len = DwtOutputLength(n, f, boundary);
    DwtLevel level;
    level.approx.resize(out_len);
    level.detail.resize(out_len);
    // a[i] = sum_k dec_lo[k] * x[2i + shift - k]; the periodic alignment is
    // the one PyWavelets uses for periodization.
    const std::size_t shift = boundary == Boundary::symmetric ? 1 : f / 2;
    for (std::size_t i = 0; i < out_len; ++i) {
        const std::size_t base = 2 * i + shift + offset;
        double a = 0.0, d = 0.0;
        for (std::size_t k = 0; k < f; ++k) {
            const double x = ext[base - k];
            a += spec.dec_lo[k] * x;
            d += spec.dec_hi[k] * x;
        }
        level.approx[i] = a;
        level.detail[i] = d;
    }
    return level;
}

std::vector<double> IdwtSingleLevel(std::span<const double> approx, std::span<const double> detail,
                                    const WaveletSpec& spec, Boundary boundary, std::size_t output_length) {
    const std::size_t f = spec.filter_length();
    if (approx.size() != detail.size())
        Fail(ErrorCode::invalid_argument, "approximation and detail lengths differ");
    if (DwtOutputLength(output_length, f, boundary) != approx.size())
        Fail(ErrorCode::invalid_argument, "inconsistent band lengths: " + std::to_string(approx.size()) +
                                              " coefficients cannot come from " + std::to_string(output_length) +
                                              " samples");

    if (boundary == Boundary::symmetric) {
        std::vector<double> out(output_length, 0.0);
        const auto len = static_cast<std::ptrdiff_t>(output_length);
        for (std::size_t i = 0; i < approx.size(); ++i) {
            for (std::size_t j = 0; j < f; ++j) {
                const auto p = static_cast<std::ptrdiff_t>(2 * i + j + 2) - static_cast<std::ptrdiff_t>(f);
                if (p < 0 || p >= len) continue;
                out[static_cast<std::size_t>(p)] += approx[i] * spec.rec_lo[j] + detail[i] * spec.rec_hi[j];
            }
        }
        return out;
    }

    const std::size_t padded = 2 * approx.size();
    std::vector<double> out(padded, 0.0);
    for (std::size_t i = 0; i < approx.size(); ++i) {
        for (std::size_t j = 0; j < f; ++j) {
            const auto p = static_cast<std::ptrdiff_t>(2 * i + j + 1) - static_cast<std::ptrdiff_t>(f / 2);
            out[WrapIndex(p, padded)] += approx[i] * spec.rec_lo[j] + detail[i] * spec.rec_hi[j];
        }
    }
    out.resize(output_length);
    return out;
}

std::vector<std::size_t> WaveletDecomposition::band_lengths() const {
    std::vector<std::size_t> lengths;
    lengths.reserve(bands.size());
    for (const auto& band : bands) lengths.push_back(band.size());
    return lengths;
}

std::string WaveletDecomposition::band_name(std::size_t band) const {
    const std::size_t n = levels();
    if (band < n) return "D" + std::to_string(band + 1);
    return "A" + std::to_string(n);
}

WaveletDecomposition DwtDecompose(std::span<const double> signal, const WaveletSpec& spec, int levels,
                                  Boundary boundary) {
    if (levels < 1) Fail(ErrorCode::invalid_argument, "levels must be >= 1");
    if (levels >= 63 || signal.size() < (std::size_t{1} << levels))
        Fail(ErrorCode::invalid_argument, "too few samples (" + std::to_string(signal.size()) + ") for " +
                                              std::to_string(levels) + " levels");

    WaveletDecomposition out;
    out.spec = spec;
    out.boundary = boundary;
    out.original_length = signal.size();
    out.bands.reserve(static_cast<std::size_t>(levels) + 1);

    std::vector<double> current(signal.begin(), signal.end());
    for (int level = 0; level < levels; ++level) {
        DwtLevel step = DwtSingleLevel(current, spec, boundary);
        out.bands.push_back(std::move(step.detail));
        current = std::move(step.approx);
    }
    out.bands.push_back(std::move(current));
    return out;
}

std::vector<double> IdwtReconstruct(const WaveletDecomposition& decomposition) {
    const std::size_t n = decomposition.levels();
    if (n == 0) Fail(ErrorCode::invalid_argument, "inconsistent band lengths: decomposition has no bands");
    const std::size_t f = decomposition.spec.filter_length();

    // Level input lengths from the recurrence; the bands must agree with them.
    std::vector<std::size_t> inputs(n);
    std::size_t length = decomposition.original_length;
    for (std::size_t k = 0; k < n; ++k) {
        inputs[k] = length;
        length = DwtOutputLength(length, f, decomposition.boundary);
        if (decomposition.bands[k].size() != length)
            Fail(ErrorCode::invalid_argument, "inconsistent band lengths at " + decomposition.band_name(k));
    }
    if (decomposition.bands[n].size() != length)
        Fail(ErrorCode::invalid_argument, "inconsistent band lengths at " + decomposition.band_name(n));

    std::vector<double> current = decomposition.bands[n];
    for (std::size_t k = n; k-- > 0;)
        current = IdwtSingleLevel(current, decomposition.bands[k], decomposition.spec, decomposition.boundary,
                                  inputs[k]);
    return current;
}

void WriteCoefficientsCsv(std::ostream& out, const WaveletDecomposition& decomposition) {
    out << "band,index,value\n";
    char buffer[64];
    for (std::size_t b = 0; b < decomposition.bands.size(); ++b) {
        const std::string name = decomposition.band_name(b);
        const auto& band = decomposition.bands[b];
        for (std::size_t i = 0; i < band.size(); ++i) {
            std::snprintf(buffer, sizeof buffer, "%.17g", band[i]);
            out << name << ',' << i << ',' << buffer << '\n';
        }
    }
}

}  // namespace coughdwt
