#include "thermocq/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace thermocq {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double to_double(const std::string& key, const std::string& v) {
    size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config: bad number for '" + key + "': " + v);
    }
    if (pos != v.size()) throw ConfigError("config: trailing junk for '" + key + "': " + v);
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    const double x = to_double(key, v);
    if (x != std::floor(x)) throw ConfigError("config: '" + key + "' must be an integer");
    return static_cast<int>(x);
}

std::vector<std::string> split_ws(const std::string& v) {
    std::istringstream in(v);
    std::vector<std::string> parts;
    std::string p;
    while (in >> p) parts.push_back(p);
    return parts;
}

std::array<double, 3> to_voigt(const std::string& key, const std::string& v) {
    const auto parts = split_ws(v);
    if (parts.size() != 3)
        throw ConfigError("config: '" + key + "' wants 3 Voigt entries (11 22 12)");
    return {to_double(key, parts[0]), to_double(key, parts[1]), to_double(key, parts[2])};
}

} // namespace

std::complex<double> parse_complex(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw ConfigError("config: empty complex value");
    if (t.back() != 'i' && t.back() != 'I') return {to_double("s", t), 0.0};
    const std::string body = t.substr(0, t.size() - 1);
    // locate a sign separating real and imaginary parts (not an exponent sign)
    size_t split = std::string::npos;
    for (size_t p = 1; p < body.size(); ++p) {
        if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E')
            split = p;
    }
    auto im_of = [](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return to_double("s", s);
    };
    if (split == std::string::npos) return {0.0, im_of(body)};
    return {to_double("s", body.substr(0, split)), im_of(body.substr(split))};
}

RunConfig parse_config_text(const std::string& text) {
    static const std::set<std::string> kSections = {"run", "wave", "material"};
    RunConfig cfg;
    bool saw_study = false;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (const size_t h = line.find('#'); h != std::string::npos) line = trim(line.substr(0, h));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": bad section header");
            const std::string sec = trim(line.substr(1, line.size() - 2));
            if (!kSections.count(sec))
                throw ConfigError("config: unknown section [" + sec + "]");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "k") key = "degree";
        if (!seen.insert(key).second) throw ConfigError("config: duplicate key '" + key + "'");

        if (key == "study") {
            if (val == "freq-h")
                cfg.study = StudyKind::FreqH;
            else if (val == "freq-p")
                cfg.study = StudyKind::FreqP;
            else if (val == "time-h")
                cfg.study = StudyKind::TimeH;
            else if (val == "time-p")
                cfg.study = StudyKind::TimeP;
            else if (val == "scatter")
                cfg.study = StudyKind::Scatter;
            else
                throw ConfigError("config: unknown study '" + val + "'");
            saw_study = true;
        } else if (key == "mesh") {
            cfg.mesh = val;
        } else if (key == "degree") {
            cfg.degree = to_int(key, val);
        } else if (key == "levels") {
            cfg.levels = to_int(key, val);
        } else if (key == "s") {
            cfg.s = parse_complex(val);
        } else if (key == "scheme") {
            if (val != "bdf2" && val != "trap")
                throw ConfigError("config: scheme must be bdf2 or trap");
            cfg.scheme = val;
        } else if (key == "dt") {
            cfg.dt = to_double(key, val);
            if (cfg.dt <= 0.0) throw ConfigError("config: dt must be positive");
        } else if (key == "t_end") {
            cfg.t_end = to_double(key, val);
            if (cfg.t_end <= 0.0) throw ConfigError("config: t_end must be positive");
        } else if (key == "refine") {
            cfg.refine = to_int(key, val);
        } else if (key == "seed") {
            const double x = to_double(key, val);
            if (x < 0 || x != std::floor(x)) throw ConfigError("config: bad seed");
            cfg.seed = static_cast<unsigned>(x);
        } else if (key == "threads") {
            cfg.threads = to_int(key, val);
            if (cfg.threads < 0) throw ConfigError("config: threads must be >= 0");
        } else if (key == "material" || key == "preset") {
            cfg.material = val;
        } else if (key == "outdir") {
            cfg.outdir = val;
        } else if (key == "direction") {
            const auto parts = split_ws(val);
            if (parts.size() != 2) throw ConfigError("config: direction wants 2 numbers");
            cfg.direction = {to_double(key, parts[0]), to_double(key, parts[1])};
        } else if (key == "amplitude") {
            cfg.amplitude = to_double(key, val);
            if (cfg.amplitude < 0.0) throw ConfigError("config: amplitude must be >= 0");
        } else if (key == "snapshots") {
            cfg.snapshots.clear();
            for (const auto& p : split_ws(val)) cfg.snapshots.push_back(to_double(key, p));
        } else if (key == "rho") {
            cfg.overrides.rho = to_double(key, val);
        } else if (key == "lambda") {
            cfg.overrides.lambda = to_double(key, val);
        } else if (key == "mu") {
            cfg.overrides.mu = to_double(key, val);
        } else if (key == "rho_f") {
            cfg.overrides.rho_f = to_double(key, val);
        } else if (key == "c") {
            cfg.overrides.c = to_double(key, val);
        } else if (key == "zeta") {
            cfg.overrides.zeta = to_voigt(key, val);
        } else if (key == "kappa") {
            cfg.overrides.kappa = to_voigt(key, val);
        } else if (key == "eta") {
            cfg.overrides.eta = to_voigt(key, val);
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    if (cfg.mesh.empty()) throw ConfigError("config: missing mesh");
    if (!saw_study) throw ConfigError("config: missing study");
    if (cfg.degree < 1 || cfg.degree > 5) throw ConfigError("config: degree must be in 1..5");
    const int min_levels = cfg.study == StudyKind::Scatter ? 1 : 2;
    if (cfg.levels < min_levels || cfg.levels > 8) throw ConfigError("config: bad level count");
    if ((cfg.study == StudyKind::FreqP || cfg.study == StudyKind::TimeP) && cfg.levels > 5)
        throw ConfigError("config: p studies support degrees up to 5");
    if (cfg.s.real() < 0.0) throw ConfigError("config: Re s must be >= 0");
    if (cfg.refine < 0 || cfg.refine > 6) throw ConfigError("config: refine must be in 0..6");
    if (cfg.direction.norm() == 0.0) throw ConfigError("config: direction must be nonzero");
    for (double t : cfg.snapshots)
        if (t <= 0.0) throw ConfigError("config: snapshot times must be positive");
    if (!cfg.material.empty() && cfg.material != "manufactured" && cfg.material != "pentagon" &&
        cfg.material != "trapping" && cfg.material != "unit")
        throw ConfigError("config: unknown material preset '" + cfg.material + "'");
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string describe(const RunConfig& cfg) {
    static const char* kStudyNames[] = {"freq-h", "freq-p", "time-h", "time-p", "scatter"};
    std::ostringstream out;
    out << "study = " << kStudyNames[static_cast<int>(cfg.study)] << "\n";
    out << "mesh = " << cfg.mesh << "\n";
    out << "degree = " << cfg.degree << "\n";
    out << "levels = " << cfg.levels << "\n";
    out << "s = " << cfg.s.real() << (cfg.s.imag() < 0 ? "" : "+") << cfg.s.imag() << "i\n";
    out << "scheme = " << cfg.scheme << "\n";
    out << "t_end = " << cfg.final_time() << "\n";
    out << "steps0 = " << cfg.first_level_steps() << "\n";
    out << "refine = " << cfg.refine << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "threads = " << cfg.threads << "\n";
    out << "material = " << (cfg.material.empty() ? "(study default)" : cfg.material) << "\n";
    out << "outdir = " << cfg.outdir << "\n";
    if (cfg.study == StudyKind::Scatter) {
        out << "direction = " << cfg.direction.x << " " << cfg.direction.y << "\n";
        out << "amplitude = " << cfg.amplitude << "\n";
        out << "snapshots =";
        for (double t : cfg.snapshots) out << " " << t;
        out << "\n";
    }
    return out.str();
}

} // namespace thermocq
