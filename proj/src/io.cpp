#include "spikeforge/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace spikeforge {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

void require_keys(const ordered_json& obj, const std::string& where,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
    for (const char* key : required)
        if (!obj.contains(key)) fail(where + ": missing required key \"" + key + "\"");
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* k : required) known = known || key == k;
        for (const char* k : optional) known = known || key == k;
        if (!known) fail(where + ": unknown key \"" + key + "\"");
    }
}

int get_int(const ordered_json& obj, const std::string& where, const char* key) {
    const ordered_json& v = obj.at(key);
    if (!v.is_number_integer()) fail(where + "." + key + ": expected an integer");
    return v.get<int>();
}

double get_number(const ordered_json& obj, const std::string& where, const char* key) {
    const ordered_json& v = obj.at(key);
    if (!v.is_number()) fail(where + "." + key + ": expected a number");
    return v.get<double>();
}

ordered_json parse_json(std::string_view text, const char* what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string(what) + ": malformed JSON at byte " + std::to_string(e.byte) + ": " +
             e.what());
    }
}

// Splits on '\n'; a single trailing newline is allowed and dropped.
std::vector<std::string_view> csv_lines(std::string_view text, const char* what) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    if (lines.empty()) fail(std::string(what) + ": empty input");
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

long long parse_ll(std::string_view field, const std::string& where) {
    long long value = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        fail(where + ": expected an integer, got \"" + std::string(field) + "\"");
    return value;
}

double parse_double(std::string_view field, const std::string& where) {
    double value = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        fail(where + ": expected a number, got \"" + std::string(field) + "\"");
    return value;
}

} // namespace

std::string serialize_network(const NetworkDef& net) {
    ordered_json doc;
    doc["version"] = 1;
    ordered_json neurons = ordered_json::array();
    for (const NeuronParams& p : net.neurons) {
        ordered_json q;
        q["threshold"] = p.threshold;
        if (is_infinite_leak(p.leak))
            q["leak"] = "inf";
        else
            q["leak"] = p.leak;
        q["reset"] = p.reset;
        q["refractory"] = p.refractory;
        q["axonal_delay"] = p.axonal_delay;
        q["behavior"] = p.behavior;
        neurons.push_back(std::move(q));
    }
    doc["neurons"] = std::move(neurons);
    ordered_json synapses = ordered_json::array();
    for (const SynapseDef& s : net.synapses) {
        ordered_json q;
        q["pre"] = s.pre;
        q["post"] = s.post;
        q["weight"] = s.weight;
        q["delay"] = s.delay;
        q["stdp"] = s.stdp_enabled;
        synapses.push_back(std::move(q));
    }
    doc["synapses"] = std::move(synapses);
    doc["metadata"] = ordered_json::object();
    for (const auto& [k, v] : net.metadata) doc["metadata"][k] = v;
    return doc.dump(2) + "\n";
}

NetworkDef parse_network(std::string_view text) {
    const ordered_json doc = parse_json(text, "network");
    if (!doc.is_object()) fail("network: top-level value must be an object");
    require_keys(doc, "network", {"version", "neurons", "synapses"}, {"metadata"});

    if (!doc["version"].is_number_integer() || doc["version"].get<int>() != 1)
        fail("network.version: unsupported version (expected 1)");
    if (!doc["neurons"].is_array()) fail("network.neurons: expected an array");
    if (!doc["synapses"].is_array()) fail("network.synapses: expected an array");

    NetworkDef net;
    int index = 0;
    for (const ordered_json& q : doc["neurons"]) {
        const std::string where = "neurons[" + std::to_string(index) + "]";
        if (!q.is_object()) fail(where + ": expected an object");
        require_keys(q, where, {"threshold", "leak", "reset", "refractory"},
                     {"axonal_delay", "behavior"});
        NeuronParams p;
        p.threshold = get_number(q, where, "threshold");
        const ordered_json& leak = q.at("leak");
        if (leak.is_string()) {
            if (leak.get<std::string>() != "inf")
                fail(where + ".leak: expected a number or \"inf\"");
            p.leak = kInfiniteLeak;
        } else if (leak.is_number()) {
            p.leak = leak.get<double>();
        } else {
            fail(where + ".leak: expected a number or \"inf\"");
        }
        p.reset = get_number(q, where, "reset");
        p.refractory = get_int(q, where, "refractory");
        p.axonal_delay = q.contains("axonal_delay") ? get_int(q, where, "axonal_delay") : 0;
        if (q.contains("behavior")) {
            if (!q.at("behavior").is_string()) fail(where + ".behavior: expected a string");
            p.behavior = q.at("behavior").get<std::string>();
        }
        net.neurons.push_back(std::move(p));
        ++index;
    }

    index = 0;
    for (const ordered_json& q : doc["synapses"]) {
        const std::string where = "synapses[" + std::to_string(index) + "]";
        if (!q.is_object()) fail(where + ": expected an object");
        require_keys(q, where, {"pre", "post", "weight", "delay"}, {"stdp"});
        SynapseDef s;
        s.pre = get_int(q, where, "pre");
        s.post = get_int(q, where, "post");
        s.weight = get_number(q, where, "weight");
        s.delay = get_int(q, where, "delay");
        if (q.contains("stdp")) {
            if (!q.at("stdp").is_boolean()) fail(where + ".stdp: expected a boolean");
            s.stdp_enabled = q.at("stdp").get<bool>();
        }
        net.synapses.push_back(s);
        ++index;
    }

    if (doc.contains("metadata")) {
        if (!doc["metadata"].is_object()) fail("network.metadata: expected an object");
        for (const auto& [k, v] : doc["metadata"].items()) {
            if (!v.is_string()) fail("network.metadata." + k + ": expected a string value");
            net.metadata[k] = v.get<std::string>();
        }
    }

    const std::vector<std::string> violations = validate_network(net);
    if (!violations.empty()) fail("network: " + violations.front());
    return net;
}

std::string write_raster(const SpikeRaster& raster) {
    std::string out = "step,neuron_id\n";
    out.reserve(out.size() + raster.events.size() * 12);
    char buf[32];
    for (const SpikeEvent& e : raster.events) {
        auto r = std::to_chars(buf, buf + sizeof(buf), e.step);
        out.append(buf, r.ptr);
        out.push_back(',');
        r = std::to_chars(buf, buf + sizeof(buf), e.neuron);
        out.append(buf, r.ptr);
        out.push_back('\n');
    }
    return out;
}

SpikeRaster parse_raster(std::string_view text) {
    const std::vector<std::string_view> lines = csv_lines(text, "raster");
    if (lines[0] != "step,neuron_id")
        fail("raster: line 1: expected header \"step,neuron_id\"");

    SpikeRaster raster;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = "raster: line " + std::to_string(i + 1);
        const std::vector<std::string_view> fields = split_fields(lines[i]);
        if (fields.size() != 2) fail(where + ": expected 2 fields");
        const long long step = parse_ll(fields[0], where);
        const long long neuron = parse_ll(fields[1], where);
        if (step < 0 || neuron < 0) fail(where + ": negative value");
        const SpikeEvent e{static_cast<std::int32_t>(step), static_cast<std::int32_t>(neuron)};
        if (!raster.events.empty() && !(raster.events.back() < e))
            fail(where + ": rows must be strictly increasing by (step, neuron_id)");
        raster.events.push_back(e);
        raster.step_count = std::max(raster.step_count, e.step + 1);
        raster.neuron_count = std::max(raster.neuron_count, e.neuron + 1);
    }
    return raster;
}

std::string write_stimulus(const StimulusSchedule& stim) {
    std::string out = "step,neuron_id,amplitude\n";
    for (const StimulusEntry& e : stim.entries) {
        out += std::to_string(e.step);
        out.push_back(',');
        out += std::to_string(e.neuron);
        out.push_back(',');
        out += shortest(e.amplitude);
        out.push_back('\n');
    }
    return out;
}

StimulusSchedule parse_stimulus(std::string_view text) {
    const std::vector<std::string_view> lines = csv_lines(text, "stimulus");
    if (lines[0] != "step,neuron_id,amplitude")
        fail("stimulus: line 1: expected header \"step,neuron_id,amplitude\"");

    StimulusSchedule stim;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = "stimulus: line " + std::to_string(i + 1);
        const std::vector<std::string_view> fields = split_fields(lines[i]);
        if (fields.size() != 3) fail(where + ": expected 3 fields");
        StimulusEntry e;
        e.step = static_cast<int>(parse_ll(fields[0], where));
        e.neuron = static_cast<int>(parse_ll(fields[1], where));
        e.amplitude = parse_double(fields[2], where);
        stim.entries.push_back(e);
    }
    return stim;
}

std::string serialize_stdp(const StdpConfig& cfg) {
    ordered_json doc;
    doc["window"] = cfg.window;
    doc["a_plus"] = cfg.a_plus;
    doc["a_minus"] = cfg.a_minus;
    doc["w_min"] = cfg.w_min;
    doc["w_max"] = cfg.w_max;
    return doc.dump(2) + "\n";
}

StdpConfig parse_stdp(std::string_view text) {
    const ordered_json doc = parse_json(text, "stdp");
    if (!doc.is_object()) fail("stdp: top-level value must be an object");
    require_keys(doc, "stdp", {"window", "a_plus", "a_minus", "w_min", "w_max"}, {});

    StdpConfig cfg;
    cfg.window = get_int(doc, "stdp", "window");
    if (!doc["a_plus"].is_array() || !doc["a_minus"].is_array())
        fail("stdp: a_plus and a_minus must be arrays");
    for (const ordered_json& v : doc["a_plus"]) {
        if (!v.is_number()) fail("stdp.a_plus: expected numbers");
        cfg.a_plus.push_back(v.get<double>());
    }
    for (const ordered_json& v : doc["a_minus"]) {
        if (!v.is_number()) fail("stdp.a_minus: expected numbers");
        cfg.a_minus.push_back(v.get<double>());
    }
    cfg.w_min = get_number(doc, "stdp", "w_min");
    cfg.w_max = get_number(doc, "stdp", "w_max");

    const std::vector<std::string> violations = validate_stdp(cfg);
    if (!violations.empty()) fail(violations.front());
    return cfg;
}

const char* const kBenchHeader = "backend,neurons,connection_probability,steps,"
                                 "wall_time_seconds,spike_count,seed";

std::string format_bench_row(const BenchRow& row) {
    std::string out = row.backend;
    out.push_back(',');
    out += std::to_string(row.neurons);
    out.push_back(',');
    out += shortest(row.connection_probability);
    out.push_back(',');
    out += std::to_string(row.steps);
    out.push_back(',');
    if (row.wall_time_seconds) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", *row.wall_time_seconds);
        out += buf;
    } else {
        out += "timeout";
    }
    out.push_back(',');
    out += std::to_string(row.spike_count);
    out.push_back(',');
    out += std::to_string(row.seed);
    out.push_back('\n');
    return out;
}

std::string write_bench(const std::vector<BenchRow>& rows) {
    std::string out = std::string(kBenchHeader) + "\n";
    for (const BenchRow& row : rows) out += format_bench_row(row);
    return out;
}

std::vector<BenchRow> parse_bench(std::string_view text) {
    const std::vector<std::string_view> lines = csv_lines(text, "bench");
    if (lines[0] != kBenchHeader) fail("bench: line 1: unexpected header");

    std::vector<BenchRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = "bench: line " + std::to_string(i + 1);
        const std::vector<std::string_view> fields = split_fields(lines[i]);
        if (fields.size() != 7) fail(where + ": expected 7 fields");
        BenchRow row;
        row.backend = std::string(fields[0]);
        row.neurons = static_cast<int>(parse_ll(fields[1], where));
        row.connection_probability = parse_double(fields[2], where);
        row.steps = static_cast<int>(parse_ll(fields[3], where));
        if (fields[4] == "timeout")
            row.wall_time_seconds = std::nullopt;
        else
            row.wall_time_seconds = parse_double(fields[4], where);
        row.spike_count = parse_ll(fields[5], where);
        row.seed = static_cast<std::uint64_t>(parse_ll(fields[6], where));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write file: " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw FormatError("write failed: " + path.string());
}

} // namespace spikeforge
