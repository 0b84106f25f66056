#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "rydgrover/errorbudget.hpp"
#include "rydgrover/interactions.hpp"
#include "rydgrover/protocols.hpp"

namespace rydgrover::io {

using nlohmann::json;

// Floating-point values are printed with 12 significant digits everywhere so
// regression diffs stay meaningful.
std::string format_double(double v);

json to_json(const ProtocolConfig& config);
ProtocolConfig protocol_config_from_json(const json& j);

json to_json(const PulseSpec& pulse);
PulseSpec pulse_spec_from_json(const json& j);

json to_json(const PairModel& model);
PairModel pair_model_from_json(const json& j);
PairModel load_species(const std::filesystem::path& path);
void save_species(const PairModel& model, const std::filesystem::path& path);

json trace_to_json(const GroverTrace& trace);
std::string trace_to_csv(const GroverTrace& trace);

json state_to_json(const RegisterState& state); // [re, im] pairs, mixed-radix order

json table_report_to_json(const TableReport& report);

std::uint64_t fnv1a64(const std::string& bytes);
std::string checksum_hex(const std::string& bytes);

// Writes a file and records (path, checksum) for the run manifest.
class ManifestWriter {
  public:
    ManifestWriter(std::string subcommand, std::uint64_t seed);

    void set_config(json config) { config_ = std::move(config); }
    void write_file(const std::filesystem::path& path, const std::string& contents);
    void finalize(const std::filesystem::path& manifest_path); // manifest written last

  private:
    std::string subcommand_;
    std::uint64_t seed_;
    json config_;
    json outputs_ = json::array();
};

} // namespace rydgrover::io
