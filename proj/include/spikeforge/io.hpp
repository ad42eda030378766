#pragma once

#include "spikeforge/model.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spikeforge {

/// Malformed document, schema violation, or invariant violation, with a
/// position or element path in the message.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Network JSON (version 1). Serialization is a deterministic byte function
// of the network: fixed key order, shortest round-trip number rendering,
// "inf" as the wire form of the infinite leak.
std::string serialize_network(const NetworkDef& net);
NetworkDef parse_network(std::string_view text);

// Raster CSV: header "step,neuron_id", rows sorted by (step, neuron_id).
// Parsing infers neuron_count and step_count from the largest entries.
std::string write_raster(const SpikeRaster& raster);
SpikeRaster parse_raster(std::string_view text);

// Stimulus CSV: header "step,neuron_id,amplitude", entries in schedule order.
std::string write_stimulus(const StimulusSchedule& stim);
StimulusSchedule parse_stimulus(std::string_view text);

// STDP configuration JSON.
std::string serialize_stdp(const StdpConfig& cfg);
StdpConfig parse_stdp(std::string_view text);

/// One benchmark result cell. A cell that hit the per-cell timeout carries
/// no wall time and a spike count of -1.
struct BenchRow {
    std::string backend;
    int neurons = 0;
    double connection_probability = 0.0;
    int steps = 0;
    std::optional<double> wall_time_seconds;
    long long spike_count = 0;
    std::uint64_t seed = 0;

    bool operator==(const BenchRow&) const = default;
};

extern const char* const kBenchHeader;  // "backend,neurons,..."

std::string format_bench_row(const BenchRow& row);
std::string write_bench(const std::vector<BenchRow>& rows);
std::vector<BenchRow> parse_bench(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

} // namespace spikeforge
