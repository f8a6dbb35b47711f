#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thermocq/geom.hpp"

namespace thermocq {

enum class StudyKind { FreqH, FreqP, TimeH, TimeP, Scatter };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// constant-coefficient replacements applied on top of the material preset;
// tensors are given in Voigt order (11, 22, 12)
struct MaterialOverrides {
    std::optional<double> rho, lambda, mu, rho_f, c;
    std::optional<std::array<double, 3>> zeta, kappa, eta;
};

struct RunConfig {
    StudyKind study = StudyKind::FreqH;
    std::string mesh;              // preset name (hexagon, pentagon) or file path
    int degree = 1;
    int levels = 4;
    std::complex<double> s{0.0, 2.8};
    std::string scheme = "bdf2";   // bdf2 | trap
    double dt = 0.0;               // 0: t_end / 16 at the first level
    double t_end = 0.0;            // 0: 1.5 for studies, 2.0 for scatter
    int refine = 1;                // refinements of the base mesh before level 0
    unsigned seed = 20240101;
    int threads = 0;               // 0: THERMOCQ_THREADS env var, else 1
    std::string material;          // preset; empty: manufactured (scatter: pentagon)
    MaterialOverrides overrides;
    std::string outdir = "out";
    Vec2 direction{1.0, 5.0};      // incident direction, normalized on use
    double amplitude = 3.0;        // incident pulse peak scale
    std::vector<double> snapshots{0.25, 0.6, 0.95, 1.3, 1.65, 2.0};

    double final_time() const {
        if (t_end > 0.0) return t_end;
        return study == StudyKind::Scatter ? 2.0 : 1.5;
    }
    int first_level_steps() const {
        const double T = final_time();
        const double step = dt > 0.0 ? dt : T / 16.0;
        return std::max(2, static_cast<int>(T / step + 0.5));
    }
};

// "2.8i", "1+3i", "0.5", "i" and friends
std::complex<double> parse_complex(const std::string& text);

// flat key = value lines with optional [run]/[wave]/[material] headers;
// unknown keys or sections and invalid values throw ConfigError
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

// canonical echo of a validated config, one key per line
std::string describe(const RunConfig& cfg);

} // namespace thermocq
