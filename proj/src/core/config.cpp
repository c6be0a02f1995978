#include "core/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace roughpath {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::defaults() {
    Config c;
    c.set("hurst", "0.4");
    c.set("gamma", "0.35");
    c.set("p", "0.28");
    c.set("sigma", "0.05");
    c.set("gamma_prime", "");      // filled as hurst + 1/2 - cm_epsilon
    c.set("cm_epsilon", "0.01");
    c.set("levels", "");           // filled as floor(1/gamma)
    c.set("dim", "2");
    c.set("T", "1.0");
    c.set("grid", "256");
    c.set("modes", "64");
    c.set("alpha", "0.6");
    c.set("chi", "0.2");
    c.set("rho", "1.0");
    c.set("samples", "2000");
    c.set("seed", "12345");
    c.set("out", "out");
    c.set("picard_tol", "1e-7");
    c.set("picard_max_iter", "30");
    c.set("step_cap", "0.5");
    c.set("L", "1.0");
    c.set("beta_surrogate", "0.5");
    c.set("f_scale", "0.25");
    c.set("f_delta", "0.1");
    c.set("g_amp", "0.5");
    c.set("a_mode", "sin");        // sin | const | identity
    c.set("a_amplitude", "0.5");
    c.set("q_list", "1,2,4,8");
    c.set("cm_knots", "");         // defaults to a single knot at T
    c.set("cm_amp", "1.0");
    c.set("path_file", "");
    c.set("y0", "mode1");          // mode1 | mode2 | mixed | decay
    return c;
}

Config Config::load(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ParameterError("config: cannot open " + file);
    Config c = defaults();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config: malformed line " + std::to_string(lineno) + " in " + file);
        c.set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return c;
}

void Config::set(const std::string& key, const std::string& value) { entries_[key] = value; }

bool Config::has(const std::string& key) const {
    auto it = entries_.find(key);
    return it != entries_.end() && !it->second.empty();
}

std::string Config::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ParameterError("config: missing key '" + key + "'");
    return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() || it->second.empty() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
    const std::string v = get(key);
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParameterError("config: key '" + key + "' is not a number: " + v);
    }
}

int Config::get_int(const std::string& key) const {
    const double x = get_double(key);
    if (std::abs(x - std::llround(x)) > 1e-9)
        throw ParameterError("config: key '" + key + "' is not an integer");
    return static_cast<int>(std::llround(x));
}

std::uint64_t Config::get_u64(const std::string& key) const {
    const std::string v = get(key);
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw ParameterError("config: key '" + key + "' is not an unsigned integer: " + v);
    }
}

std::vector<double> Config::get_list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(get(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) continue;
        try {
            out.push_back(std::stod(t));
        } catch (const std::exception&) {
            throw ParameterError("config: key '" + key + "' has a non-numeric entry: " + t);
        }
    }
    return out;
}

std::string Config::serialize() const {
    std::ostringstream out;
    for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
    return out.str();
}

void Config::finalize(bool moment_experiment) {
    const double hurst = get_double("hurst");
    const double gamma = get_double("gamma");
    if (!(hurst > 0.25) || !(hurst <= 0.5))
        throw ParameterError("config: hurst must lie in (1/4, 1/2]");
    if (!(gamma < hurst)) throw ParameterError("config: need gamma < hurst");

    if (!has("gamma_prime"))
        set("gamma_prime", std::to_string(hurst + 0.5 - get_double("cm_epsilon")));
    if (!has("levels")) {
        const double inv = 1.0 / gamma;
        if (std::abs(inv - std::llround(inv)) < 1e-9)
            throw ParameterError("config: 1/gamma must not be an integer");
        set("levels", std::to_string(static_cast<int>(std::floor(inv))));
    }

    const double gamma_prime = get_double("gamma_prime");
    if (!(gamma_prime > gamma) || !(gamma + gamma_prime > 1.0))
        throw ParameterError("config: need gamma' > gamma and gamma + gamma' > 1");
    const double p = get_double("p");
    if (moment_experiment && !(2.0 * (gamma_prime - p) > 1.0))
        throw ParameterError("config: moment experiment needs 2(gamma' - p) > 1");
    if (get_int("grid") < 2) throw ParameterError("config: grid must have at least 2 cells");
    if (get_int("modes") < 1) throw ParameterError("config: modes must be positive");
    if (get_int("dim") < 1) throw ParameterError("config: dim must be positive");
}

}  // namespace roughpath
