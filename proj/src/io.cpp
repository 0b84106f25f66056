#include "rydgrover/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rydgrover::io {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json to_json(const ProtocolConfig& config) {
    json j;
    j["architecture"] = to_string(config.architecture);
    j["k"] = config.k;
    j["marked"] = config.marked;
    if (config.architecture == Architecture::Subregister) {
        j["subregister"] = {{"n_s", config.n_s}, {"k_s", config.k_s}};
    }
    j["mode"] = config.mode == RunMode::Ideal ? "ideal" : "dynamical";
    if (config.dynamics) {
        j["dynamics"] = {{"omega", config.dynamics->omega},
                         {"B", config.dynamics->blockade_b},
                         {"gamma", config.dynamics->gamma}};
    }
    return j;
}

ProtocolConfig protocol_config_from_json(const json& j) {
    ProtocolConfig config;
    config.architecture = architecture_from_string(j.at("architecture").get<std::string>());
    config.k = j.at("k").get<int>();
    config.marked = j.at("marked").get<std::vector<int>>();
    if (j.contains("subregister")) {
        config.n_s = j["subregister"].at("n_s").get<int>();
        config.k_s = j["subregister"].at("k_s").get<int>();
    }
    if (j.contains("mode")) {
        const std::string mode = j["mode"].get<std::string>();
        if (mode == "ideal")
            config.mode = RunMode::Ideal;
        else if (mode == "dynamical")
            config.mode = RunMode::Dynamical;
        else
            throw std::invalid_argument("config: unknown mode " + mode);
    }
    if (j.contains("dynamics")) {
        DynamicsParams p;
        p.omega = j["dynamics"].at("omega").get<double>();
        p.blockade_b = j["dynamics"].at("B").get<double>();
        p.gamma = j["dynamics"].value("gamma", 0.0);
        config.dynamics = p;
    }
    config.validate();
    return config;
}

json to_json(const PulseSpec& pulse) {
    json j;
    j["atom"] = pulse.atom;
    j["kind"] = pulse.kind == PulseKind::Bare ? "bare" : "bright";
    j["from_level"] = pulse.from_level;
    j["to_level"] = pulse.to_level;
    j["angle"] = pulse.angle;
    j["phase"] = pulse.phase;
    if (pulse.blockade) {
        j["blockade"] = {{"atoms", pulse.blockade->atoms}, {"levels", pulse.blockade->levels}};
    }
    return j;
}

PulseSpec pulse_spec_from_json(const json& j) {
    PulseSpec pulse;
    pulse.atom = j.at("atom").get<int>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "bare")
        pulse.kind = PulseKind::Bare;
    else if (kind == "bright")
        pulse.kind = PulseKind::Bright;
    else
        throw std::invalid_argument("pulse: unknown kind " + kind);
    pulse.from_level = j.value("from_level", 0);
    pulse.to_level = j.at("to_level").get<int>();
    pulse.angle = j.at("angle").get<double>();
    pulse.phase = j.value("phase", 0.0);
    if (j.contains("blockade")) {
        BlockadeCondition cond;
        cond.atoms = j["blockade"].at("atoms").get<std::vector<int>>();
        cond.levels = j["blockade"].at("levels").get<std::vector<int>>();
        pulse.blockade = std::move(cond);
    }
    return pulse;
}

json to_json(const PairModel& model) {
    return json{{"name", model.name},   {"n0", model.n0},       {"C3", model.c3},
                {"C6", model.c6},       {"delta", model.delta}, {"tau0", model.tau0},
                {"energy_scale", model.energy_scale}};
}

PairModel pair_model_from_json(const json& j) {
    PairModel model;
    model.name = j.at("name").get<std::string>();
    model.n0 = j.at("n0").get<double>();
    model.c3 = j.at("C3").get<double>();
    model.c6 = j.value("C6", 0.0);
    model.delta = j.value("delta", 0.0);
    model.tau0 = j.at("tau0").get<double>();
    model.energy_scale = j.value("energy_scale", 2.07e16);
    if (model.n0 <= 0.0 || model.c3 < 0.0 || model.tau0 <= 0.0)
        throw std::invalid_argument("species: bad parameters");
    return model;
}

PairModel load_species(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open species file: " + path.string());
    json j;
    in >> j;
    return pair_model_from_json(j);
}

void save_species(const PairModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write species file: " + path.string());
    out << to_json(model).dump(2) << "\n";
}

json trace_to_json(const GroverTrace& trace) {
    json j;
    j["k"] = trace.k;
    j["marked"] = trace.marked;
    j["iterations"] = trace.iterations;
    j["success_prob"] = trace.success_prob;
    j["norm_sq"] = trace.norm_sq;
    j["cumulative_pulses"] = trace.cumulative_pulses;
    return j;
}

std::string trace_to_csv(const GroverTrace& trace) {
    std::ostringstream out;
    out << "iteration,success_prob,norm,cumulative_pulses\n";
    for (std::size_t i = 0; i < trace.success_prob.size(); ++i) {
        out << i << ',' << format_double(trace.success_prob[i]) << ','
            << format_double(std::sqrt(trace.norm_sq[i])) << ','
            << format_double(trace.cumulative_pulses[i]) << '\n';
    }
    return out.str();
}

json state_to_json(const RegisterState& state) {
    json j;
    json dims = json::array();
    for (const AtomSpec& spec : state.atoms()) dims.push_back(spec.num_levels);
    j["dims"] = dims;
    j["ordering"] = "mixed-radix, atom 0 most significant";
    json amps = json::array();
    for (const Complex& a : state.amplitudes()) amps.push_back({a.real(), a.imag()});
    j["amplitudes"] = amps;
    return j;
}

json table_report_to_json(const TableReport& report) {
    json rows = json::array();
    auto cell_json = [](const std::optional<TableCell>& cell) -> json {
        if (!cell) return nullptr;
        json c;
        c["printed"] = cell->printed;
        if (cell->model) c["model"] = *cell->model;
        c["note"] = cell->note;
        c["agree"] = cell->agree;
        return c;
    };
    for (const TableRow& row : report.rows) {
        json r;
        r["N"] = row.n_elements;
        if (row.k > 0) r["k"] = row.k;
        if (row.k_minus_1 > 0) r["k_minus_1"] = row.k_minus_1;
        r["sequential"] = cell_json(row.sequential);
        r["simultaneous"] = cell_json(row.simultaneous);
        r["subregister"] = cell_json(row.subregister);
        if (row.subregister) {
            r["subregister_with_ea"] = row.subregister_with_ea;
            r["k_s"] = row.sub_ks;
            r["n_s"] = row.sub_ns;
        }
        r["threshold"] = row.threshold;
        r["threshold_display"] = row.threshold_display;
        rows.push_back(r);
    }
    json budgets = json::array();
    for (const ErrorBudget& b : report.budgets) {
        budgets.push_back({{"architecture", b.architecture},
                           {"N", b.n_elements},
                           {"E_step", b.e_step},
                           {"emission", b.emission_component},
                           {"blockade", b.blockade_component},
                           {"ancilla", b.ancilla_component},
                           {"pulses_per_iteration", b.pulses_per_iteration},
                           {"threshold", b.threshold},
                           {"verdict", to_string(b.verdict)}});
    }
    return json{{"rows", rows}, {"budgets", budgets}, {"E_a", report.e_a}, {"d_um", report.lattice_d}};
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

std::string checksum_hex(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

ManifestWriter::ManifestWriter(std::string subcommand, std::uint64_t seed)
    : subcommand_(std::move(subcommand)), seed_(seed) {}

void ManifestWriter::write_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << contents;
    }
    outputs_.push_back({{"path", path.string()}, {"checksum", checksum_hex(contents)}});
}

void ManifestWriter::finalize(const std::filesystem::path& manifest_path) {
    json manifest;
    manifest["subcommand"] = subcommand_;
    manifest["seed"] = seed_;
    if (!config_.is_null()) manifest["config"] = config_;
    manifest["outputs"] = outputs_;
    if (manifest_path.has_parent_path()) std::filesystem::create_directories(manifest_path.parent_path());
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + manifest_path.string());
    out << manifest.dump(2) << "\n";
}

} // namespace rydgrover::io
