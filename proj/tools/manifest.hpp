#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace scrub::cli {

/// Run metadata written alongside every command's outputs: the command and
/// parameters, the seed, digests of every file read and written, the toolkit
/// version, the generator identifier and a UTC timestamp.
class Manifest {
public:
    Manifest(std::string command, std::uint64_t seed);

    void set_param(const std::string& key, const std::string& value);
    void set_param(const std::string& key, double value);
    void set_param(const std::string& key, long long value);
    void add_note(const std::string& note);
    void add_input(const std::filesystem::path& path);
    void add_output(const std::filesystem::path& path);

    /// Digests the recorded files and writes <out_dir>/manifest.json.
    void write(const std::filesystem::path& out_dir) const;

private:
    std::string command_;
    std::uint64_t seed_;
    std::map<std::string, std::string> params_;
    std::vector<std::string> notes_;
    std::vector<std::filesystem::path> inputs_;
    std::vector<std::filesystem::path> outputs_;
};

}  // namespace scrub::cli
