#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace spikeforge {

/// Distinguished "infinite" leak: pulls the membrane all the way back to the
/// reset state in a single step. Proxy neurons rely on this being exact.
inline constexpr double kInfiniteLeak = std::numeric_limits<double>::infinity();

inline bool is_infinite_leak(double leak) { return std::isinf(leak); }

struct NeuronParams {
    double threshold = 1.0;
    double leak = 0.0;          // >= 0, or kInfiniteLeak
    double reset = 0.0;
    int refractory = 0;         // steps a neuron stays silent after a spike
    int axonal_delay = 0;       // steps added to every outgoing synapse
    std::string behavior = "lif";

    bool operator==(const NeuronParams&) const = default;
};

struct SynapseDef {
    int pre = 0;
    int post = 0;
    double weight = 1.0;
    int delay = 1;              // >= 1; a spike at t is integrated at t + delay
    bool stdp_enabled = false;

    bool operator==(const SynapseDef&) const = default;
};

/// The full directed synaptic graph; the single source of truth every
/// backend consumes. Immutable by convention once handed to an engine.
struct NetworkDef {
    std::vector<NeuronParams> neurons;       // ids 0..N-1, dense
    std::vector<SynapseDef> synapses;
    std::map<std::string, std::string> metadata;

    int neuron_count() const { return static_cast<int>(neurons.size()); }

    bool operator==(const NetworkDef&) const = default;
};

struct StimulusEntry {
    int step = 0;
    int neuron = 0;
    double amplitude = 0.0;     // added to the membrane at that step

    bool operator==(const StimulusEntry&) const = default;
};

struct StimulusSchedule {
    std::vector<StimulusEntry> entries;

    bool operator==(const StimulusSchedule&) const = default;
};

struct StdpConfig {
    int window = 20;                 // pair window tau_w, in steps
    std::vector<double> a_plus;      // potentiation per offset k = 1..window
    std::vector<double> a_minus;     // depression per offset k = 1..window
    double w_min = 0.0;
    double w_max = 1.0;

    /// Exponential kernels a[k] = A * exp(-k / tau), k = 1..window.
    static StdpConfig defaults();

    bool operator==(const StdpConfig&) const = default;
};

struct SimulationConfig {
    int steps = 1;                   // T >= 1
    std::uint64_t seed = 0;
    std::optional<StdpConfig> stdp;
    bool record_membrane = false;
};

struct SpikeEvent {
    std::int32_t step = 0;
    std::int32_t neuron = 0;

    auto operator<=>(const SpikeEvent&) const = default;
};

/// Ordered, duplicate-free set of (step, neuron) spike events; the
/// observable output all backends must agree on.
struct SpikeRaster {
    std::vector<SpikeEvent> events;  // sorted lexicographically
    int neuron_count = 0;
    int step_count = 0;
};

struct RunResult {
    SpikeRaster raster;
    std::vector<std::vector<double>> membrane_trace;  // one row per step when recorded
};

/// Structural validation; returns one message per violated invariant,
/// empty when the network is well formed. Never throws.
std::vector<std::string> validate_network(const NetworkDef& net);

/// Stimulus validation against a network and step horizon.
std::vector<std::string> validate_stimulus(const StimulusSchedule& stim,
                                           int neuron_count, int steps);

std::vector<std::string> validate_stdp(const StdpConfig& cfg);

/// Event-set equality, optionally filtered to the given neuron ids.
bool raster_equal(const SpikeRaster& a, const SpikeRaster& b);
bool raster_equal(const SpikeRaster& a, const SpikeRaster& b,
                  const std::unordered_set<int>& restrict_to);

/// Events with neuron id < neuron_limit, as a raster over that id range.
SpikeRaster restrict_raster(const SpikeRaster& r, int neuron_limit);

/// One leak application: move v toward reset by `leak`, clamping at reset
/// (the membrane never crosses reset due to leak alone).
inline double leak_toward(double v, double leak, double reset) {
    const double d = v - reset;
    if (d > 0.0) {
        const double stepped = d - leak;
        return reset + (stepped > 0.0 ? stepped : 0.0);
    }
    if (d < 0.0) {
        const double stepped = d + leak;
        return reset + (stepped < 0.0 ? stepped : 0.0);
    }
    return v;
}

} // namespace spikeforge
