#pragma once

#include "spikeforge/model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace spikeforge {

/// Storage backing the synaptic weight matrix. Dense is the default for the
/// network sizes the benchmarks target; row-compressed storage takes over
/// for the very large neuron counts produced by lowering delay-heavy nets,
/// where an N x N allocation stops being viable. Both storages propagate
/// contributions in ascending (pre, post) order, so results are identical.
enum class WeightStorage { Auto, Dense, Sparse };

class WeightMatrix {
public:
    static WeightMatrix build(int n, const std::vector<SynapseDef>& synapses,
                              WeightStorage storage);

    int size() const { return n_; }
    bool dense() const { return dense_storage_; }

    double at(int pre, int post) const;

    /// u[j] += sum over spiking pre i of W(i, j); `spiked` ascending.
    void propagate(const std::vector<int>& spiked, std::span<double> u) const;

    /// Per-synapse slot handles for in-place plasticity updates.
    /// slot(i) names the storage cell of synapses[i] passed to build().
    std::size_t slot(std::size_t synapse_index) const { return synapse_slot_[synapse_index]; }
    double slot_get(std::size_t slot) const;
    void slot_set(std::size_t slot, double w);

private:
    int n_ = 0;
    bool dense_storage_ = true;
    std::vector<double> dense_;        // row-major, n*n
    std::vector<std::size_t> row_ptr;  // CSR
    std::vector<int> col;
    std::vector<double> val;
    std::vector<std::size_t> synapse_slot_;  // synapse list index -> storage slot
};

/// Per-synapse handle used by the STDP pass.
struct StdpSynapse {
    int pre = 0;
    int post = 0;
    std::size_t slot = 0;
};

/// All simulation state of the matrix backend: one entry per neuron in each
/// vector, plus the weight matrix and the spike history window for STDP.
struct MatState {
    int n = 0;
    std::vector<double> membrane;
    std::vector<double> thresholds;
    std::vector<double> leaks;
    std::vector<double> resets;
    std::vector<int> refractory_periods;
    std::vector<int> refractory_counters;
    std::vector<std::uint8_t> spikes_prev;   // spike vector of the previous step
    std::vector<int> spiked_list;            // ids set in spikes_prev, ascending
    WeightMatrix weights;
    std::vector<StdpSynapse> stdp_synapses;
    int step_index = 0;

    // Spike history ring: the current vector plus the `window` vectors before
    // it, so pairings at the full window offset are still visible.
    int stdp_window = 0;
    std::vector<std::vector<std::uint8_t>> history;
    int history_next = 0;
    std::int64_t history_pushed = 0;

    std::vector<double> scratch_u;
    std::vector<double> scratch_pot;
    std::vector<double> scratch_dep;
};

/// Elementwise constant leak toward the reset state, clamped at reset.
void apply_leak(std::span<double> membrane, std::span<const double> leaks,
                std::span<const double> resets);

/// Build matrix-backend state. Requires a valid homogeneous network: every
/// behavior "lif", every synaptic delay 1, every axonal delay 0 (run delay
/// lowering first for anything else).
MatState mat_init(const NetworkDef& net, const SimulationConfig& cfg,
                  WeightStorage storage = WeightStorage::Auto);

/// Advance one step. `ext` holds per-neuron external amplitudes for this
/// step (empty span means none). Returns the ids that spiked, ascending.
const std::vector<int>& mat_step(MatState& state, std::span<const double> ext);

/// Windowed pairwise STDP on stdp-enabled synapses; call after mat_step.
/// Weight support never grows: positions without a synapse stay exactly 0.
void apply_stdp(MatState& state, const StdpConfig& cfg);

/// T steps of mat_step (+ apply_stdp when configured), collecting the raster.
RunResult mat_run(const NetworkDef& net, const SimulationConfig& cfg,
                  const StimulusSchedule& stim,
                  WeightStorage storage = WeightStorage::Auto);

} // namespace spikeforge
