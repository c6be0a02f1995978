#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace roughpath {

/// Flat `key = value` configuration with typed getters. Unknown keys are
/// kept verbatim so experiment metadata can round-trip.
class Config {
public:
    Config() = default;

    static Config defaults();
    static Config load(const std::string& file);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;

    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;
    std::vector<double> get_list(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }
    std::string serialize() const;

    /// Validates cross-field constraints (regularity chain, moment condition
    /// when requested) and fills derived keys (gamma_prime, levels) that were
    /// left empty.
    void finalize(bool moment_experiment = false);

private:
    std::map<std::string, std::string> entries_;
};

}  // namespace roughpath
