// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include "coughdwt/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "coughdwt/error.hpp"

namespace coughdwt {
namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
    throw Error(Stage::dataset_io, code, message);
}

std::string Trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string Lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// RFC 4180-style field split for a single line; quotes may wrap a field.
std::vector<std::string> SplitCsvLine(std::string_view line, std::size_t line_number) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(Trim(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) Fail(ErrorCode::format, "manifest line " + std::to_string(line_number) + ": unterminated quote");
    fields.push_back(Trim(field));
    return fields;
}

std::uint16_t ReadU16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }
std::uint32_t ReadU32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void PutU16(std::vector<unsigned char>& out, std::uint16_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>(v >> 8));
}
void PutU32(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<unsigned char>((v >> shift) & 0xff));
}
void PutTag(std::vector<unsigned char>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

}  // namespace

std::string_view LabelName(Label label) noexcept { return label == Label::positive ? "positive" : "negative"; }

Label ParseLabel(std::string_view token) {
    const std::string t = Lower(Trim(token));
    if (t == "positive") return Label::positive;
    if (t == "negative") return Label::negative;
    Fail(ErrorCode::format, "unknown label '" + std::string(token) + "' (expected positive|negative)");
}

DatasetManifest ParseManifest(std::string_view text, const std::filesystem::path& base_dir) {
    if (text.size() >= 3 && std::memcmp(text.data(), "\xEF\xBB\xBF", 3) == 0) text.remove_prefix(3);

    DatasetManifest manifest;
    std::set<std::string> seen;
    bool header_seen = false;
    std::size_t line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (Trim(line).empty()) {
            if (end == text.size()) break;
            continue;
        }

        const auto fields = SplitCsvLine(line, line_number);
        if (!header_seen) {
            if (fields.size() != 3 || Lower(fields[0]) != "path" || Lower(fields[1]) != "label" ||
                Lower(fields[2]) != "subject_id")
                Fail(ErrorCode::format, "malformed header: expected 'path,label,subject_id', got '" +
                                            std::string(line) + "'");
            header_seen = true;
            continue;
        }
        if (fields.size() != 3)
            Fail(ErrorCode::format, "manifest line " + std::to_string(line_number) + ": expected 3 fields, got " +
                                        std::to_string(fields.size()));
        if (fields[0].empty()) Fail(ErrorCode::format, "manifest line " + std::to_string(line_number) + ": empty path");

        ManifestEntry entry;
        std::filesystem::path p(fields[0]);
        entry.path = (p.is_absolute() ? p : base_dir / p).lexically_normal();
        try {
            entry.label = ParseLabel(fields[1]);
        } catch (const Error& e) {
            Fail(ErrorCode::format, "manifest line " + std::to_string(line_number) + ": " + e.message());
        }
        entry.subject_id = fields[2];
        if (!seen.insert(entry.path.string()).second)
            Fail(ErrorCode::format, "manifest line " + std::to_string(line_number) + ": duplicate path '" +
                                        fields[0] + "'");
        (entry.label == Label::positive ? manifest.class_counts.positive : manifest.class_counts.negative) += 1;
        manifest.entries.push_back(std::move(entry));
        if (end == text.size()) break;
    }
    if (!header_seen) Fail(ErrorCode::format, "malformed header: manifest is empty");
    return manifest;
}

DatasetManifest LoadManifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) Fail(ErrorCode::io, "missing file: cannot open manifest '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return ParseManifest(buffer.str(), path.parent_path());
}

WavData DecodeWav(std::span<const unsigned char> bytes) {
    if (bytes.size() < 12) Fail(ErrorCode::format, "truncated: file shorter than RIFF header");
    if (std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
        Fail(ErrorCode::format, "not a RIFF/WAVE file");

    bool have_fmt = false;
    bool have_data = false;
    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;
    std::span<const unsigned char> data;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const unsigned char* header = bytes.data() + pos;
        const std::uint32_t size = ReadU32(header + 4);
        const std::size_t body = pos + 8;
        if (size > bytes.size() - body)
            Fail(ErrorCode::format, "truncated: chunk '" + std::string(reinterpret_cast<const char*>(header), 4) +
                                        "' declares " + std::to_string(size) + " bytes, " +
                                        std::to_string(bytes.size() - body) + " available");
        if (std::memcmp(header, "fmt ", 4) == 0) {
            if (size < 16) Fail(ErrorCode::format, "truncated: fmt chunk shorter than 16 bytes");
            format = ReadU16(bytes.data() + body);
            channels = ReadU16(bytes.data() + body + 2);
            rate = ReadU32(bytes.data() + body + 4);
            bits = ReadU16(bytes.data() + body + 14);
            have_fmt = true;
        } else if (std::memcmp(header, "data", 4) == 0) {
            data = bytes.subspan(body, size);
            have_data = true;
        }
        pos = body + size + (size % 2);
    }
    if (!have_fmt) Fail(ErrorCode::format, "missing fmt chunk");
    if (!have_data) Fail(ErrorCode::format, "missing data chunk");
    if (format != 1) Fail(ErrorCode::format, "non-PCM encoding (format code " + std::to_string(format) + ")");
    if (channels != 1)
        Fail(ErrorCode::format, "expected mono, got " + std::to_string(channels) + " channels (no downmix)");
    if (bits != 16) Fail(ErrorCode::format, "expected 16 bits/sample, got " + std::to_string(bits));
    if (rate == 0) Fail(ErrorCode::format, "sample rate is zero");
    if (data.size() % 2 != 0) Fail(ErrorCode::format, "truncated: odd byte count in 16-bit data chunk");
    if (data.empty()) Fail(ErrorCode::format, "zero samples");

    WavData out;
    out.sample_rate = rate;
    out.samples.resize(data.size() / 2);
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        const auto raw = static_cast<std::int16_t>(ReadU16(data.data() + 2 * i));
        out.samples[i] = static_cast<double>(raw) / 32768.0;
    }
    return out;
}

WavData ReadWav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) Fail(ErrorCode::io, "missing file: cannot open '" + path.string() + "'");
    const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return DecodeWav(bytes);
    } catch (const Error& e) {
        Fail(e.code(), path.string() + ": " + e.message());
    }
}

std::vector<unsigned char> EncodeWav(std::span<const double> samples, unsigned sample_rate) {
    const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
    std::vector<unsigned char> out;
    out.reserve(44 + data_bytes);
    PutTag(out, "RIFF");
    PutU32(out, 36 + data_bytes);
    PutTag(out, "WAVE");
    PutTag(out, "fmt ");
    PutU32(out, 16);
    PutU16(out, 1);
    PutU16(out, 1);
    PutU32(out, sample_rate);
    PutU32(out, sample_rate * 2);
    PutU16(out, 2);
    PutU16(out, 16);
    PutTag(out, "data");
    PutU32(out, data_bytes);
    for (double x : samples) {
        const double scaled = std::clamp(std::round(x * 32768.0), -32768.0, 32767.0);
        PutU16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
    }
    return out;
}

void WriteWav(const std::filesystem::path& path, std::span<const double> samples, unsigned sample_rate) {
    const auto bytes = EncodeWav(samples, sample_rate);
    std::ofstream out(path, std::ios::binary);
    if (!out) Fail(ErrorCode::io, "cannot write '" + path.string() + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::size_t WindowLength(unsigned sample_rate, double duration_ms) {
    if (!(duration_ms > 0.0)) Fail(ErrorCode::invalid_argument, "duration_ms must be > 0");
    if (sample_rate == 0) Fail(ErrorCode::invalid_argument, "sample_rate must be > 0");
    const double samples = std::round(static_cast<double>(sample_rate) * duration_ms / 1000.0);
    if (samples < 1.0) Fail(ErrorCode::invalid_argument, "window shorter than one sample");
    return static_cast<std::size_t>(samples);
}

Segmentation SegmentSignal(std::span<const double> samples, unsigned sample_rate, double duration_ms) {
    if (samples.empty()) Fail(ErrorCode::invalid_argument, "cannot segment an empty signal");
    const std::size_t window = WindowLength(sample_rate, duration_ms);
    Segmentation out;
    const std::size_t count = samples.size() / window;
    if (count == 0) {
        out.warnings.push_back("signal of " + std::to_string(samples.size()) + " samples is shorter than one " +
                               std::to_string(window) + "-sample window; no segments");
        return out;
    }
    out.segments.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        const auto first = samples.begin() + static_cast<std::ptrdiff_t>(s * window);
        out.segments.emplace_back(first, first + static_cast<std::ptrdiff_t>(window));
    }
    return out;
}

LoadedSegments LoadSegments(const DatasetManifest& manifest, double duration_ms) {
    LoadedSegments out;
    for (std::size_t e = 0; e < manifest.entries.size(); ++e) {
        const ManifestEntry& entry = manifest.entries[e];
        WavData wav = ReadWav(entry.path);
        if (out.sample_rate == 0) {
            out.sample_rate = wav.sample_rate;
        } else if (wav.sample_rate != out.sample_rate) {
            Fail(ErrorCode::format, "non-uniform sample rate: '" + entry.path.string() + "' is " +
                                        std::to_string(wav.sample_rate) + " Hz, expected " +
                                        std::to_string(out.sample_rate) + " Hz");
        }
        Segmentation seg = SegmentSignal(wav.samples, wav.sample_rate, duration_ms);
        for (auto& w : seg.warnings) out.warnings.push_back(entry.path.filename().string() + ": " + w);
        for (std::size_t s = 0; s < seg.segments.size(); ++s) {
            AudioSegment segment;
            segment.samples = std::move(seg.segments[s]);
            segment.sample_rate = wav.sample_rate;
            segment.label = entry.label;
            segment.source = SegmentSource{entry.subject_id, e, s};
            out.segments.push_back(std::move(segment));
        }
    }
    return out;
}

}  // namespace coughdwt
