#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "riskmix/distribution.hpp"
#include "riskmix/reports.hpp"
#include "riskmix/scenarios.hpp"
#include "riskmix/spectral.hpp"

namespace riskmix {

/// Minimal streaming JSON emitter. Keys are written in call order and reals
/// through format_real, so output is byte-deterministic for identical input
/// data; reports produced this way diff cleanly across runs.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view name);
    JsonWriter& value(double v);
    JsonWriter& value(std::int64_t v);
    JsonWriter& value(std::uint64_t v);
    JsonWriter& value(bool v);
    JsonWriter& value(std::string_view s);
    JsonWriter& null();
    /// Injects pre-rendered JSON verbatim.
    JsonWriter& raw(std::string_view json);

    const std::string& str() const noexcept { return out_; }

private:
    void element_prefix();

    std::string out_;
    std::vector<bool> needs_comma_;
    bool after_key_ = false;
};

// --- input parsing ---------------------------------------------------------

/// Reads a whole file; throws Error(Errc::ParseError) on IO failure.
std::string read_file(const std::filesystem::path& path);

/// {"atoms":[{"x":-10.0,"p":0.1},...]}
DiscreteDistribution parse_distribution_json(const std::string& text);

/// One real per line; optional "value" header; blank lines ignored.
DiscreteDistribution parse_samples_csv(const std::string& text);

/// Sniffs the format: JSON when the first non-space byte is '{', sample CSV
/// otherwise.
DiscreteDistribution load_distribution_file(const std::filesystem::path& path);

/// {"points":[{"alpha":0.2,"weight":0.5},...]}
SpectralMeasure parse_spectral_json(const std::string& text);
SpectralMeasure load_spectral_file(const std::filesystem::path& path);

/// {"probs":[...],"values":[[...],...]}
JointScenarios parse_joint_json(const std::string& text);
JointScenarios load_joint_file(const std::filesystem::path& path);

// --- serialization ---------------------------------------------------------

void write_json(JsonWriter& w, const DiscreteDistribution& d);
void write_json(JsonWriter& w, const SpectralMeasure& nu);
void write_json(JsonWriter& w, const JointScenarios& joint);

/// Emit the report fields (no surrounding braces) so callers can prepend
/// discriminators in JSON-lines streams.
void write_fields(JsonWriter& w, const DecompositionReport& report);
void write_fields(JsonWriter& w, const GapReport& report);

std::string to_json(const DiscreteDistribution& d);
std::string to_json(const DecompositionReport& report);
std::string to_json(const GapReport& report);

}  // namespace riskmix
