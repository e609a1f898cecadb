#include "manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include <json.hpp>

#include "scrub/io.hpp"
#include "scrub/rng.hpp"
#include "scrub/version.hpp"

namespace scrub::cli {

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

}  // namespace

Manifest::Manifest(std::string command, std::uint64_t seed)
    : command_(std::move(command)), seed_(seed) {}

void Manifest::set_param(const std::string& key, const std::string& value) {
    params_[key] = value;
}

void Manifest::set_param(const std::string& key, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    params_[key] = buffer;
}

void Manifest::set_param(const std::string& key, long long value) {
    params_[key] = std::to_string(value);
}

void Manifest::add_note(const std::string& note) { notes_.push_back(note); }

void Manifest::add_input(const std::filesystem::path& path) { inputs_.push_back(path); }

void Manifest::add_output(const std::filesystem::path& path) { outputs_.push_back(path); }

void Manifest::write(const std::filesystem::path& out_dir) const {
    nlohmann::json j;
    j["command"] = command_;
    j["seed"] = seed_;
    j["params"] = params_;
    j["notes"] = notes_;
    j["toolkit_version"] = kVersion;
    j["generator"] = std::string(rng::kGeneratorId);
    j["digest_algorithm"] = "fnv1a64";
    j["timestamp_utc"] = utc_timestamp();
    j["inputs"] = nlohmann::json::array();
    for (const auto& path : inputs_) {
        j["inputs"].push_back(
            {{"path", path.string()}, {"digest", io::file_digest_fnv1a64(path)}});
    }
    j["outputs"] = nlohmann::json::array();
    for (const auto& path : outputs_) {
        j["outputs"].push_back(
            {{"path", path.string()}, {"digest", io::file_digest_fnv1a64(path)}});
    }
    io::write_file_atomic(out_dir / "manifest.json", j.dump(2) + "\n");
}

}  // namespace scrub::cli
