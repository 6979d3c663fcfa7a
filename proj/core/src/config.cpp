#include "rrlab/config.hpp"

#include <fstream>
#include <sstream>

namespace rrlab {

std::map<std::string, std::string> parse_flat_keyvalue(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (auto& ch : line)
            if (ch == '=') ch = ' ';
        std::istringstream ls(line);
        std::string key, value, extra;
        if (!(ls >> key)) continue;  // blank
        if (!(ls >> value) || (ls >> extra))
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key value'");
        if (kv.count(key))
            throw ConfigError("config: duplicate key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

namespace {

double to_double(const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + s + "'");
    }
}

int to_int(const std::string& key, const std::string& s) {
    const double v = to_double(key, s);
    const int i = static_cast<int>(v);
    if (i != v) throw ConfigError("config: key '" + key + "' must be an integer");
    return i;
}

}  // namespace

ModelConfig parse_config_text(const std::string& text) {
    auto kv = parse_flat_keyvalue(text);
    ModelConfig cfg;
    for (const auto& [key, value] : kv) {
        if (key == "dim") cfg.dim = to_int(key, value);
        else if (key == "mass") cfg.mass = to_double(key, value);
        else if (key == "charge") cfg.charge = to_double(key, value);
        else if (key == "potential") cfg.potential = value;
        else if (key == "omega0") cfg.omega0 = to_double(key, value);
        else if (key == "alpha") cfg.alpha = to_double(key, value);
        else if (key == "eta") cfg.eta = to_double(key, value);
        else if (key == "switching_T") cfg.switching_T = to_double(key, value);
        else if (key == "grid_n") cfg.grid_n = to_int(key, value);
        else if (key == "grid_L") cfg.grid_L = to_double(key, value);
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

ModelConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

PotentialSpec ModelConfig::potential_spec() const {
    if (potential == "harmonic") return PotentialSpec::harmonic(omega0, dim, mass);
    if (potential == "quartic") {
        if (dim != 2) throw ConfigError("config: quartic potential requires dim 2");
        return PotentialSpec::polynomial({{1.0, 4, 0}, {1.0, 0, 4}}, mass);
    }
    throw ConfigError("config: unknown potential '" + potential + "'");
}

void ModelConfig::validate() const {
    if (dim != 2 && dim != 3) throw ConfigError("config: dim must be 2 or 3");
    if (!(mass > 0.0)) throw ConfigError("config: mass must be positive");
    if (!(alpha > 0.0)) throw ConfigError("config: alpha must be positive");
    if (!(eta > 0.0)) throw ConfigError("config: eta must be positive");
    if (!(omega0 > 0.0)) throw ConfigError("config: omega0 must be positive");
    if (!(switching_T > 0.0)) throw ConfigError("config: switching_T must be positive");
    if (grid_n < 8) throw ConfigError("config: grid_n must be at least 8");
    if (!(grid_L > 0.0)) throw ConfigError("config: grid_L must be positive");
    potential_spec().require_bound();
}

std::string ModelConfig::canonical_text() const {
    std::ostringstream os;
    os << "dim " << dim << "\nmass " << mass << "\ncharge " << charge << "\npotential "
       << potential << "\nomega0 " << omega0 << "\nalpha " << alpha << "\neta " << eta
       << "\nswitching_T " << switching_T << "\ngrid_n " << grid_n << "\ngrid_L " << grid_L
       << "\n";
    return os.str();
}

}  // namespace rrlab
