#pragma once

#include <cstdint>
#include <string>

namespace cdlab {

// Flat `key = value` configuration.  Unknown keys are rejected.
struct Config {
    int point_search_height = 1000;
    int hensel_precision_extra = 10;
    int threads = 0;  // 0: use available parallelism
    std::string cache_path;
    std::uint64_t seed = 1;

    int effective_threads() const;
};

Config load_config(const std::string& path);           // throws on unknown keys
Config config_from_text(const std::string& text);      // same, for tests
void apply_env_overrides(Config& cfg);                 // CDLAB_THREADS

}  // namespace cdlab
