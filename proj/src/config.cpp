#include "optophase/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace optophase {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, const std::string& key, int line)
{
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        std::ostringstream os;
        os << "line " << line << ": value for '" << key << "' is not a number: '" << text << "'";
        throw std::invalid_argument(os.str());
    }
    return value;
}

}  // namespace

SystemConfig parse_system_config(std::istream& in)
{
    std::map<std::string, double> values;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        const std::string text = trim(raw);
        if (text.empty())
            continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "line " << line << ": expected 'key = value'";
            throw std::invalid_argument(os.str());
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string val = trim(text.substr(eq + 1));
        if (!values.emplace(key, parse_number(val, key, line)).second) {
            std::ostringstream os;
            os << "line " << line << ": key '" << key << "' given twice";
            throw std::invalid_argument(os.str());
        }
    }

    static const char* const known[] = {"omega_m", "mass",    "length",      "omega_f", "coupling_k",
                                        "kappa",   "n_roundtrips", "hbar", "k_boltzmann", "c_light"};
    for (const auto& [key, _] : values) {
        bool ok = false;
        for (const char* k : known)
            ok = ok || key == k;
        if (!ok)
            throw std::invalid_argument("unknown configuration key '" + key + "'");
    }
    const auto get = [&](const char* key) -> std::optional<double> {
        if (auto it = values.find(key); it != values.end())
            return it->second;
        return std::nullopt;
    };
    const auto require = [&](const char* key) {
        if (auto v = get(key))
            return *v;
        throw std::invalid_argument(std::string("missing configuration key '") + key + "'");
    };

    SystemConfig cfg;
    if (auto v = get("hbar")) cfg.constants.hbar = *v;
    if (auto v = get("k_boltzmann")) cfg.constants.k_boltzmann = *v;
    if (auto v = get("c_light")) cfg.constants.c_light = *v;

    auto& p = cfg.params;
    p.omega_m = require("omega_m");
    p.mass = require("mass");
    p.length = require("length");
    p.kappa = get("kappa");
    if (auto n = get("n_roundtrips")) {
        if (*n != static_cast<double>(static_cast<long>(*n)))
            throw std::invalid_argument("n_roundtrips must be an integer");
        p.n_roundtrips = static_cast<long>(*n);
    }
    const auto omega_f = get("omega_f");
    const auto k = get("coupling_k");
    if (omega_f && k)
        throw std::invalid_argument("give either omega_f or coupling_k, not both");
    if (omega_f)
        p.omega_f = *omega_f;
    else if (k)
        p = with_coupling_k(p, cfg.constants, *k);
    else
        throw std::invalid_argument("missing configuration key 'omega_f' (or 'coupling_k')");

    derive_couplings(p, cfg.constants);   // validates
    return cfg;
}

SystemConfig load_system_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open configuration file '" + path + "'");
    return parse_system_config(in);
}

}  // namespace optophase
