#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace gltool {

namespace pt = boost::property_tree;

namespace {

// property_tree drops line numbers after parsing, so a second pass records
// where each section.key was written for later messages.
std::map<std::string, int> key_lines(const std::string& text) {
    std::map<std::string, int> lines;
    std::istringstream in(text);
    std::string line, section;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        boost::algorithm::trim(line);
        if (line.empty() || line[0] == ';' || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = boost::algorithm::trim_copy(line.substr(1, line.size() - 2));
            lines.emplace(section, n);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        lines.emplace(section + "." + boost::algorithm::trim_copy(line.substr(0, eq)), n);
    }
    return lines;
}

class Reader {
public:
    Reader(std::string source, std::map<std::string, int> lines) : source_(std::move(source)), lines_(std::move(lines)) {}

    [[noreturn]] void error(const std::string& key, const std::string& what) const {
        auto it = lines_.find(key);
        // A defaulted key has no line of its own; fall back to its section header.
        if (it == lines_.end() && key.find('.') != std::string::npos) it = lines_.find(key.substr(0, key.find('.')));
        const std::string where = it == lines_.end() ? source_ : source_ + ":" + std::to_string(it->second);
        throw ConfigError(where + ": " + what);
    }

    bool has(const std::string& key) const { return lines_.count(key) > 0; }

    template <class T>
    T value(const std::string& key, const std::string& raw) const {
        try {
            return boost::lexical_cast<T>(boost::algorithm::trim_copy(raw));
        } catch (const boost::bad_lexical_cast&) {
            error(key, "invalid value '" + raw + "' for " + key);
        }
    }

    bool flag(const std::string& key, const std::string& raw) const {
        std::string v = boost::algorithm::trim_copy(raw);
        std::transform(v.begin(), v.end(), v.begin(), ::tolower);
        if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
        if (v == "false" || v == "no" || v == "off" || v == "0") return false;
        error(key, "expected a boolean for " + key + ", got '" + raw + "'");
    }

    std::vector<int> list(const std::string& key, const std::string& raw) const {
        try {
            return parse_int_list(raw);
        } catch (const ConfigError& e) {
            error(key, e.what());
        }
    }

private:
    std::string source_;
    std::map<std::string, int> lines_;
};

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
    std::string s = text;
    for (char& ch : s)
        if (ch == ',' || ch == '[' || ch == ']') ch = ' ';
    std::istringstream in(s);
    std::vector<int> out;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("invalid integer '" + tok + "' in list");
        }
    }
    return out;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    pt::ptree tree;
    try {
        std::istringstream ss(text);
        pt::read_ini(ss, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    const std::map<std::string, int> lines = key_lines(text);
    const Reader r(source, lines);

    static const std::map<std::string, std::set<std::string>> known = {
        {"graph", {"kind", "nx", "ny", "periodic", "file", "coupling", "coupling_min", "coupling_max", "coupling_seed"}},
        {"sector", {"file", "flux", "seed", "U", "V"}},
        {"sweep",
         {"gamma_min", "gamma_max", "points", "spacing", "mode", "n_max", "gamma_spread", "gamma_seed", "threads",
          "allow_zero_modes"}},
        {"output", {"csv", "plot", "timing"}},
    };

    // The INI reader drops sections without keys, so headers are checked here.
    for (const auto& [key, line] : lines)
        if (key.find('.') == std::string::npos && !known.count(key)) r.error(key, "unknown section [" + key + "]");

    RunConfig c;
    for (const auto& [section, body] : tree) {
        auto sec = known.find(section);
        if (sec == known.end()) {
            if (r.has("." + section)) r.error("." + section, "key '" + section + "' outside any section");
            r.error(section, "unknown section [" + section + "]");
        }
        for (const auto& [key, node] : body) {
            const std::string full = section + "." + key;
            if (!sec->second.count(key)) r.error(full, "unknown key '" + key + "' in [" + section + "]");
            const std::string& v = node.data();
            if (section == "graph") {
                if (key == "kind") c.kind = boost::algorithm::trim_copy(v);
                else if (key == "nx") c.nx = r.value<int>(full, v);
                else if (key == "ny") c.ny = r.value<int>(full, v);
                else if (key == "periodic") c.periodic = r.flag(full, v);
                else if (key == "file") c.graph_file = boost::algorithm::trim_copy(v);
                else if (key == "coupling") c.coupling = r.value<double>(full, v);
                else if (key == "coupling_min") c.coupling_min = r.value<double>(full, v);
                else if (key == "coupling_max") c.coupling_max = r.value<double>(full, v);
                else c.coupling_seed = r.value<std::uint64_t>(full, v);
            } else if (section == "sector") {
                if (key == "file") c.sector_file = boost::algorithm::trim_copy(v);
                else if (key == "flux") c.flux = boost::algorithm::trim_copy(v);
                else if (key == "seed") c.seed = r.value<std::uint64_t>(full, v);
                else if (key == "U") c.flipped_edges = r.list(full, v);
                else c.flipped_vertices = r.list(full, v);
            } else if (section == "sweep") {
                if (key == "gamma_min") c.gamma_min = r.value<double>(full, v);
                else if (key == "gamma_max") c.gamma_max = r.value<double>(full, v);
                else if (key == "points") c.points = r.value<int>(full, v);
                else if (key == "spacing") c.spacing = boost::algorithm::trim_copy(v);
                else if (key == "mode") c.mode = boost::algorithm::trim_copy(v);
                else if (key == "n_max") c.n_max = r.value<int>(full, v);
                else if (key == "gamma_spread") c.gamma_spread = r.value<double>(full, v);
                else if (key == "gamma_seed") c.gamma_seed = r.value<std::uint64_t>(full, v);
                else if (key == "threads") c.threads = r.value<int>(full, v);
                else c.allow_zero_modes = r.flag(full, v);
            } else {
                if (key == "csv") c.csv = boost::algorithm::trim_copy(v);
                else if (key == "plot") c.plot = boost::algorithm::trim_copy(v);
                else c.timing = r.flag(full, v);
            }
        }
    }

    try {
        check_config(c);
    } catch (const ConfigError& e) {
        r.error(e.key(), e.what());
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

void check_config(const RunConfig& c) {
    if (c.points < 1) throw ConfigError("points must be at least 1 (empty gamma grid)", "sweep.points");
    if (c.gamma_min < 0 || c.gamma_max < 0) throw ConfigError("gamma_min and gamma_max must be non-negative", "sweep.gamma_min");
    if (c.gamma_min > c.gamma_max) throw ConfigError("gamma_min exceeds gamma_max", "sweep.gamma_min");
    if (c.spacing != "log" && c.spacing != "linear") throw ConfigError("spacing must be log or linear", "sweep.spacing");
    if (c.spacing == "log" && c.gamma_min <= 0) throw ConfigError("log spacing needs gamma_min > 0", "sweep.gamma_min");
    if (c.mode != "auto" && c.mode != "parity" && c.mode != "number")
        throw ConfigError("mode must be auto, parity or number", "sweep.mode");
    if (c.gamma_spread < 0 || c.gamma_spread > 1) throw ConfigError("gamma_spread must lie in [0, 1]", "sweep.gamma_spread");
    if (c.flux != "0" && c.flux != "pi" && c.flux != "+pi/2" && c.flux != "pi/2" && c.flux != "-pi/2" &&
        c.flux != "random")
        throw ConfigError("flux must be 0, pi, +pi/2, -pi/2 or random", "sector.flux");
    if (c.coupling_min.has_value() != c.coupling_max.has_value())
        throw ConfigError("coupling_min and coupling_max go together", "graph.coupling_min");
    if (c.graph_file.empty() && c.kind != "honeycomb" && c.kind != "square" && c.kind != "triangular")
        throw ConfigError("graph kind must be honeycomb, square or triangular", "graph.kind");
}

}  // namespace gltool
