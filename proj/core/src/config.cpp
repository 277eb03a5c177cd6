#include "cdlab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cdlab {

int Config::effective_threads() const {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

}  // namespace

Config config_from_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) + " is not key = value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        auto as_int = [&](const char* what) {
            long long v = std::stoll(val);
            if (v <= 0) throw std::invalid_argument(std::string("config: ") + what + " must be positive");
            return v;
        };
        if (key == "point_search_height")
            cfg.point_search_height = (int)as_int("point_search_height");
        else if (key == "hensel_precision_extra")
            cfg.hensel_precision_extra = (int)as_int("hensel_precision_extra");
        else if (key == "threads")
            cfg.threads = (int)as_int("threads");
        else if (key == "cache_path")
            cfg.cache_path = val;
        else if (key == "seed")
            cfg.seed = (std::uint64_t)as_int("seed");
        else
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_text(ss.str());
}

void apply_env_overrides(Config& cfg) {
    if (const char* t = std::getenv("CDLAB_THREADS")) {
        int v = std::atoi(t);
        if (v > 0) cfg.threads = v;
    }
}

}  // namespace cdlab
