#pragma once

#include "spikeforge/model.hpp"

namespace spikeforge {

/// Naive event-list simulator used as ground truth for both backends and the
/// delay-lowering pass. Scalar loops, explicit per-delivery queue, no shared
/// kernel code with either engine. LIF behaviors only.
///
/// Semantics: constant leak clamped at the reset state, strict-greater
/// threshold, membrane held at reset during refractory, a spike at step t on
/// a synapse with delay d and pre-neuron axonal delay a arrives at t + d + a.
SpikeRaster oracle_run(const NetworkDef& net, const SimulationConfig& cfg,
                       const StimulusSchedule& stim);

} // namespace spikeforge
