#include "spikeforge/abm_engine.hpp"
#include "spikeforge/io.hpp"
#include "spikeforge/lowering.hpp"
#include "spikeforge/mat_engine.hpp"
#include "spikeforge/model.hpp"
#include "spikeforge/netgen.hpp"
#include "spikeforge/oracle.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

namespace py = pybind11;
using namespace spikeforge;

namespace {

std::string repr_event(const SpikeEvent& e) {
    std::ostringstream out;
    out << "SpikeEvent(step=" << e.step << ", neuron=" << e.neuron << ")";
    return out.str();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discrete-time spiking network simulation: matrix and "
              "agent-based backends, delay lowering, reference oracle, "
              "network generation, file formats.";

    py::register_exception<FormatError>(m, "FormatError");

    m.attr("INFINITE_LEAK") = kInfiniteLeak;

    py::class_<NeuronParams>(m, "NeuronParams")
        .def(py::init<>())
        .def_readwrite("threshold", &NeuronParams::threshold)
        .def_readwrite("leak", &NeuronParams::leak)
        .def_readwrite("reset", &NeuronParams::reset)
        .def_readwrite("refractory", &NeuronParams::refractory)
        .def_readwrite("axonal_delay", &NeuronParams::axonal_delay)
        .def_readwrite("behavior", &NeuronParams::behavior)
        .def("__eq__", [](const NeuronParams& a, const NeuronParams& b) { return a == b; });

    py::class_<SynapseDef>(m, "SynapseDef")
        .def(py::init<>())
        .def(py::init([](int pre, int post, double weight, int delay, bool stdp) {
                 return SynapseDef{pre, post, weight, delay, stdp};
             }),
             py::arg("pre"), py::arg("post"), py::arg("weight") = 1.0,
             py::arg("delay") = 1, py::arg("stdp") = false)
        .def_readwrite("pre", &SynapseDef::pre)
        .def_readwrite("post", &SynapseDef::post)
        .def_readwrite("weight", &SynapseDef::weight)
        .def_readwrite("delay", &SynapseDef::delay)
        .def_readwrite("stdp_enabled", &SynapseDef::stdp_enabled)
        .def("__eq__", [](const SynapseDef& a, const SynapseDef& b) { return a == b; });

    py::class_<NetworkDef>(m, "NetworkDef")
        .def(py::init<>())
        .def_readwrite("neurons", &NetworkDef::neurons)
        .def_readwrite("synapses", &NetworkDef::synapses)
        .def_readwrite("metadata", &NetworkDef::metadata)
        .def("neuron_count", &NetworkDef::neuron_count)
        .def("__eq__", [](const NetworkDef& a, const NetworkDef& b) { return a == b; });

    py::class_<StimulusEntry>(m, "StimulusEntry")
        .def(py::init<>())
        .def(py::init([](int step, int neuron, double amplitude) {
                 return StimulusEntry{step, neuron, amplitude};
             }),
             py::arg("step"), py::arg("neuron"), py::arg("amplitude"))
        .def_readwrite("step", &StimulusEntry::step)
        .def_readwrite("neuron", &StimulusEntry::neuron)
        .def_readwrite("amplitude", &StimulusEntry::amplitude);

    py::class_<StimulusSchedule>(m, "StimulusSchedule")
        .def(py::init<>())
        .def_readwrite("entries", &StimulusSchedule::entries);

    py::class_<StdpConfig>(m, "StdpConfig")
        .def(py::init<>())
        .def_static("defaults", &StdpConfig::defaults)
        .def_readwrite("window", &StdpConfig::window)
        .def_readwrite("a_plus", &StdpConfig::a_plus)
        .def_readwrite("a_minus", &StdpConfig::a_minus)
        .def_readwrite("w_min", &StdpConfig::w_min)
        .def_readwrite("w_max", &StdpConfig::w_max);

    py::class_<SimulationConfig>(m, "SimulationConfig")
        .def(py::init<>())
        .def_readwrite("steps", &SimulationConfig::steps)
        .def_readwrite("seed", &SimulationConfig::seed)
        .def_readwrite("stdp", &SimulationConfig::stdp)
        .def_readwrite("record_membrane", &SimulationConfig::record_membrane);

    py::class_<SpikeEvent>(m, "SpikeEvent")
        .def(py::init<>())
        .def_readwrite("step", &SpikeEvent::step)
        .def_readwrite("neuron", &SpikeEvent::neuron)
        .def("__eq__", [](const SpikeEvent& a, const SpikeEvent& b) { return a == b; })
        .def("__repr__", &repr_event);

    py::class_<SpikeRaster>(m, "SpikeRaster")
        .def(py::init<>())
        .def_readwrite("events", &SpikeRaster::events)
        .def_readwrite("neuron_count", &SpikeRaster::neuron_count)
        .def_readwrite("step_count", &SpikeRaster::step_count)
        .def("__len__", [](const SpikeRaster& r) { return r.events.size(); });

    py::class_<RunResult>(m, "RunResult")
        .def(py::init<>())
        .def_readwrite("raster", &RunResult::raster)
        .def_readwrite("membrane_trace", &RunResult::membrane_trace);

    py::class_<ProxyInfo>(m, "ProxyInfo")
        .def_readwrite("pre", &ProxyInfo::pre)
        .def_readwrite("post", &ProxyInfo::post)
        .def_readwrite("position", &ProxyInfo::position);

    py::class_<LoweredNetwork>(m, "LoweredNetwork")
        .def_readwrite("net", &LoweredNetwork::net)
        .def_readwrite("original_count", &LoweredNetwork::original_count)
        .def_readwrite("proxy_map", &LoweredNetwork::proxy_map)
        .def("proxy_id_base", &LoweredNetwork::proxy_id_base);

    py::class_<BenchScenario>(m, "BenchScenario")
        .def(py::init<>())
        .def_readwrite("neuron_count", &BenchScenario::neuron_count)
        .def_readwrite("connection_probability", &BenchScenario::connection_probability)
        .def_readwrite("steps", &BenchScenario::steps)
        .def_readwrite("input_neuron_count", &BenchScenario::input_neuron_count)
        .def_readwrite("input_period", &BenchScenario::input_period)
        .def_readwrite("amplitude", &BenchScenario::amplitude)
        .def_readwrite("seed", &BenchScenario::seed);

    py::class_<ScenarioBundle>(m, "ScenarioBundle")
        .def_readwrite("net", &ScenarioBundle::net)
        .def_readwrite("cfg", &ScenarioBundle::cfg)
        .def_readwrite("stim", &ScenarioBundle::stim)
        .def_readwrite("input_neurons", &ScenarioBundle::input_neurons);

    m.def("validate_network", &validate_network, py::arg("net"),
          "Structural violations, one message each; empty when valid.");
    m.def("oracle_run", &oracle_run, py::arg("net"), py::arg("cfg"),
          py::arg("stim") = StimulusSchedule{},
          py::call_guard<py::gil_scoped_release>());
    m.def("mat_run",
          [](const NetworkDef& net, const SimulationConfig& cfg,
             const StimulusSchedule& stim) {
              py::gil_scoped_release release;
              return mat_run(net, cfg, stim);
          },
          py::arg("net"), py::arg("cfg"), py::arg("stim") = StimulusSchedule{});
    m.def("abm_run", &abm_run, py::arg("net"), py::arg("cfg"),
          py::arg("stim") = StimulusSchedule{},
          py::call_guard<py::gil_scoped_release>());
    m.def("lower_delays", &lower_delays, py::arg("net"));
    m.def("proxy_count", &proxy_count, py::arg("net"));
    m.def("erdos_renyi", &erdos_renyi, py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("build_scenario", &build_scenario, py::arg("scenario"));
    m.def("raster_equal",
          py::overload_cast<const SpikeRaster&, const SpikeRaster&>(&raster_equal),
          py::arg("a"), py::arg("b"));
    m.def("restrict_raster", &restrict_raster, py::arg("raster"), py::arg("neuron_limit"));
    m.def("serialize_network", &serialize_network, py::arg("net"));
    m.def("parse_network", [](const std::string& text) { return parse_network(text); },
          py::arg("text"));
    m.def("write_raster", &write_raster, py::arg("raster"));
    m.def("parse_raster", [](const std::string& text) { return parse_raster(text); },
          py::arg("text"));
    m.def("write_stimulus", &write_stimulus, py::arg("stim"));
    m.def("parse_stimulus", [](const std::string& text) { return parse_stimulus(text); },
          py::arg("text"));
    m.def("serialize_stdp", &serialize_stdp, py::arg("cfg"));
    m.def("parse_stdp", [](const std::string& text) { return parse_stdp(text); },
          py::arg("text"));
    m.def("behavior_names", [] { return BehaviorRegistry::global().names(); });
    m.def("register_stochastic_lif",
          [](const std::string& name, double fire_probability) {
              BehaviorRegistry::global().register_behavior(
                  name, std::make_shared<StochasticLifBehavior>(fire_probability));
          },
          py::arg("name"), py::arg("fire_probability"),
          "Register a named above-threshold-fires-with-probability-p rule.");
}
