#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gltool {

// Thrown for malformed config files and flag values; `what()` names the
// source and line when one is known.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what, std::string key = {})
        : std::runtime_error(what), key_(std::move(key)) {}
    // "section.key" responsible for a semantic error, empty otherwise.
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct RunConfig {
    // [graph]
    std::string kind = "honeycomb";
    int nx = 4;
    int ny = 4;
    bool periodic = true;
    std::string graph_file;
    std::optional<double> coupling;  // every J set to this value
    std::optional<double> coupling_min;
    std::optional<double> coupling_max;
    std::uint64_t coupling_seed = 0;

    // [sector]
    std::string sector_file;
    std::string flux = "0";  // 0 | pi | +pi/2 | -pi/2 | random
    std::uint64_t seed = 0;
    std::vector<int> flipped_edges;     // U
    std::vector<int> flipped_vertices;  // V

    // [sweep]
    double gamma_min = 1e-2;
    double gamma_max = 1e2;
    int points = 50;
    std::string spacing = "log";
    std::string mode = "auto";
    int n_max = -1;
    double gamma_spread = 0;
    std::uint64_t gamma_seed = 0;
    int threads = 0;
    bool allow_zero_modes = false;

    // [output]
    std::string csv = "gaps.csv";
    std::string plot;
    bool timing = false;
};

// Flat INI with sections [graph], [sector], [sweep], [output]. Unknown
// sections or keys and unparsable values are errors naming the line.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

// "[1, 2, 3]", "1 2 3" or "1,2,3".
std::vector<int> parse_int_list(const std::string& text);

// Rejects combinations the library would refuse later with a less direct message.
void check_config(const RunConfig& c);

}  // namespace gltool
