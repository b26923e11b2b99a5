#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "common.hpp"

namespace qalb {

inline constexpr const char* artifact_version = "0.1.0";

inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Flat `key = value` settings with `#` comments. Unknown keys are rejected.
class Config {
public:
    static const std::set<std::string>& known_keys()
    {
        static const std::set<std::string> k = {
            "experiment", "preset", "lattice", "tau", "dt", "steps", "horizon", "qc", "f0", "method",
            "init", "divergence_threshold", "grid", "stream_only",
            "logistic_a", "logistic_b", "Rf0", "max_order", "stepper",
            "Q", "N", "variant", "dt_over_tau", "bound_steps", "Nmax",
            "G", "D", "T", "b", "Re", "position_bits"};
        return k;
    }

    void set(const std::string& key, const std::string& value, const std::string& where = "")
    {
        if (!known_keys().count(key))
            throw error(errc::config, (where.empty() ? "" : where + ": ") + "unknown key '" + key + "'");
        values_[key] = value;
    }

    void parse_assignment(const std::string& line, const std::string& where = "")
    {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw error(errc::config, where + ": expected 'key = value', got '" + line + "'");
        const std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (k.empty()) throw error(errc::config, where + ": empty key");
        set(k, v, where);
    }

    void parse(std::istream& is, const std::string& name = "<config>")
    {
        std::string line;
        int n = 0;
        while (std::getline(is, line)) {
            ++n;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            parse_assignment(line, name + ":" + std::to_string(n));
        }
    }

    void load(const std::string& path)
    {
        std::ifstream f(path);
        if (!f) throw error(errc::config, "cannot open config file '" + path + "'");
        parse(f, path);
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string str(const std::string& key, const std::string& def) const
    {
        auto it = values_.find(key);
        return it == values_.end() ? def : it->second;
    }

    double num(const std::string& key, double def) const
    {
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        return to_double(key, it->second);
    }

    long integer(const std::string& key, long def) const
    {
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        const double v = to_double(key, it->second);
        if (v != static_cast<double>(static_cast<long>(v)))
            throw error(errc::config, "key '" + key + "' expects an integer, got '" + it->second + "'");
        return static_cast<long>(v);
    }

    bool flag(const std::string& key, bool def) const
    {
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        const std::string& v = it->second;
        if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "off" || v == "0" || v == "no") return false;
        throw error(errc::config, "key '" + key + "' expects a boolean, got '" + v + "'");
    }

    std::vector<double> list(const std::string& key, const std::vector<double>& def) const
    {
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        std::vector<double> out;
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
        if (out.empty()) throw error(errc::config, "key '" + key + "' expects a comma-separated list");
        return out;
    }

    const std::map<std::string, std::string>& values() const { return values_; }

    void write_metadata(std::ostream& os, const std::string& command) const
    {
        os << "# qalb run metadata\n";
        os << "artifact_version = " << artifact_version << "\n";
        os << "command = " << command << "\n";
        for (auto& [k, v] : values_) os << k << " = " << v << "\n";
    }

private:
    static double to_double(const std::string& key, const std::string& s)
    {
        try {
            size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw error(errc::config, "key '" + key + "' expects a number, got '" + s + "'");
        }
    }

    std::map<std::string, std::string> values_;
};

inline std::string fmt17(double v) { return fmt::format("{:.17g}", v); }

inline void csv_row(std::ostream& os, const std::vector<std::string>& cells)
{
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

inline void csv_row(std::ostream& os, const std::vector<double>& cells)
{
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << fmt17(cells[i]);
    }
    os << '\n';
}

} // namespace qalb
