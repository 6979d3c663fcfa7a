#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "rrlab/atom.hpp"

namespace rrlab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Run configuration parsed from flat key-value text.
struct ModelConfig {
    int dim = 3;
    double mass = 1.0;
    double charge = 0.1;
    std::string potential = "harmonic";  // harmonic | quartic
    double omega0 = 1.0;
    double alpha = 1e4;
    double eta = 1.0;
    double switching_T = 50.0;
    int grid_n = 64;
    double grid_L = 16.0;

    PotentialSpec potential_spec() const;
    void validate() const;  // throws ConfigError
    std::string canonical_text() const;
};

/// Parses "key value" / "key=value" lines; '#' starts a comment.  Unknown keys
/// are a ConfigError.
ModelConfig parse_config_text(const std::string& text);
ModelConfig load_config_file(const std::string& path);

/// Generic key-value parse used for pulse files as well.
std::map<std::string, std::string> parse_flat_keyvalue(const std::string& text);

}  // namespace rrlab
