#pragma once

#include "spikeforge/io.hpp"
#include "spikeforge/netgen.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace spikeforge {

/// One full benchmark sweep: every backend crossed with every
/// (size, probability) cell under the shared stimulation protocol.
struct BenchOptions {
    std::vector<int> sizes{100, 1000, 10000};
    std::vector<double> probs{0.25, 0.5, 0.75, 1.0};
    int steps = 1000;
    std::vector<std::string> backends{"mat", "abm"};
    std::uint64_t seed = 0;
    int input_neuron_count = 3;
    int input_period = 10;
    double amplitude = 2.0;
    std::optional<double> timeout_seconds;
    bool parallel = false;
};

using BenchRowCallback = std::function<void(const BenchRow&)>;

/// Runs one cell. Wall time covers the step loop only; scenario
/// construction and engine setup happen before the clock starts.
/// A cell that exceeds the timeout reports no wall time and -1 spikes.
BenchRow run_bench_cell(const std::string& backend, const BenchScenario& scenario,
                        std::optional<double> timeout_seconds = std::nullopt);

/// Runs the whole sweep in backend-major, then size, then probability
/// order. `on_row` (optional) fires per completed cell; under --parallel
/// rows are still delivered in submission order.
std::vector<BenchRow> run_bench(const BenchOptions& opts,
                                const BenchRowCallback& on_row = {});

/// Human-readable wall-time matrix, one block per backend, rows by size
/// and columns by connection probability.
std::string format_bench_matrix(const std::vector<BenchRow>& rows);

} // namespace spikeforge
