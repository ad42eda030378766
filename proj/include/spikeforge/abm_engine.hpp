#pragma once

#include "spikeforge/model.hpp"
#include "spikeforge/rng.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace spikeforge {

struct BehaviorResult {
    double membrane = 0.0;
    bool spiked = false;
};

/// One neuron model rule, invoked once per agent per step with the leak not
/// yet applied. `input` aggregates this step's synaptic deliveries and
/// external stimulus. Stochastic rules draw only from `rng`, which is keyed
/// by (seed, agent id, step), so results are reproducible and agents consume
/// independent streams. Refractory handling and post-spike reset are applied
/// by the engine, identically for every behavior.
class SpikingBehavior {
public:
    virtual ~SpikingBehavior() = default;
    virtual BehaviorResult step(const NeuronParams& params, double membrane,
                                double input, SequentialRng& rng) const = 0;
};

/// Deterministic leaky integrate-and-fire; matches the matrix backend's
/// update rule exactly.
class LifBehavior final : public SpikingBehavior {
public:
    BehaviorResult step(const NeuronParams& params, double membrane,
                        double input, SequentialRng& rng) const override;
};

/// LIF that, when above threshold, fires with probability `p`.
class StochasticLifBehavior final : public SpikingBehavior {
public:
    explicit StochasticLifBehavior(double fire_probability);
    BehaviorResult step(const NeuronParams& params, double membrane,
                        double input, SequentialRng& rng) const override;

private:
    double fire_probability_;
};

/// Process-wide behavior registry. "lif" and "stochastic_lif" (p = 0.5) are
/// pre-registered; names are claimed once and cannot be redefined.
class BehaviorRegistry {
public:
    static BehaviorRegistry& global();

    void register_behavior(const std::string& name,
                           std::shared_ptr<const SpikingBehavior> behavior);
    std::shared_ptr<const SpikingBehavior> find(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    BehaviorRegistry();
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const SpikingBehavior>> behaviors_;
};

/// Agent-based world: every neuron an agent, synaptic and axonal delays as
/// shift registers. Stepping is two synchronous phases (all neuron steps,
/// then all register shifts), so no agent ever observes a same-step spike
/// and iteration order cannot change the result.
class AbmWorld {
public:
    AbmWorld(const NetworkDef& net, const SimulationConfig& cfg);

    /// One step; returns the ids that spiked, ascending.
    const std::vector<int>& step(std::span<const double> ext);

    int neuron_count() const { return n_; }
    int step_index() const { return step_index_; }
    double membrane(int neuron) const { return membrane_[neuron]; }

private:
    int n_ = 0;
    std::uint64_t seed_ = 0;
    int step_index_ = 0;

    std::vector<NeuronParams> params_;
    std::vector<const SpikingBehavior*> behavior_;
    std::vector<std::shared_ptr<const SpikingBehavior>> behavior_refs_;

    std::vector<double> membrane_;
    std::vector<int> refractory_left_;
    std::vector<double> pending_input_;   // deliveries consumed by the next neuron phase

    // Synapse channels, ordered by (pre, post); registers live in one arena.
    std::vector<int> channel_post_;
    std::vector<double> channel_weight_;
    std::vector<std::size_t> channel_reg_;
    std::vector<int> channel_len_;
    std::vector<std::uint8_t> reg_arena_;

    // Outgoing channel index ranges per neuron.
    std::vector<std::size_t> out_begin_;
    std::vector<int> out_channel_;

    // Axonal shift registers (length = axonal_delay; zero-length = direct).
    std::vector<std::size_t> axon_reg_;
    std::vector<int> axon_len_;
    std::vector<std::uint8_t> axon_arena_;

    std::vector<int> spiked_;
};

/// T invocations of the two-phase step; delays run natively, no lowering.
RunResult abm_run(const NetworkDef& net, const SimulationConfig& cfg,
                  const StimulusSchedule& stim);

} // namespace spikeforge
