#include "cdlab/cache.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

#include "cdlab/errors.hpp"

namespace cdlab::cache {

std::string format_record(const Record& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "{\"version\":%d,\"d\":%lld,\"n\":%lld,\"dim_mu3\":%d,\"dim_hom\":%d,"
                  "\"tam_exp\":%d,\"w\":%d,\"r3_lo\":%d,\"r3_hi\":%d}",
                  r.version, (long long)r.d, (long long)r.n, r.dim_mu3, r.dim_hom, r.tam_exp, r.w, r.r3_lo, r.r3_hi);
    return buf;
}

Store read_store(const std::string& path) {
    Store s;
    std::ifstream in(path);
    if (!in) return s;
    static const std::set<std::string> allowed{"version", "d", "n",     "dim_mu3", "dim_hom",
                                               "tam_exp", "w", "r3_lo", "r3_hi"};
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!allowed.count(it.key()))
                throw std::runtime_error("cache: unknown field '" + it.key() + "' at line " + std::to_string(lineno));
        Record r;
        r.version = j.at("version").get<int>();
        if (r.version != 1) throw std::runtime_error("cache: unsupported version at line " + std::to_string(lineno));
        r.d = j.at("d").get<std::int64_t>();
        r.n = j.at("n").get<std::int64_t>();
        r.dim_mu3 = j.at("dim_mu3").get<int>();
        r.dim_hom = j.at("dim_hom").get<int>();
        r.tam_exp = j.at("tam_exp").get<int>();
        r.w = j.at("w").get<int>();
        r.r3_lo = j.at("r3_lo").get<int>();
        r.r3_hi = j.at("r3_hi").get<int>();
        s.records.push_back(r);
    }
    return s;
}

void append_records(const std::string& path, const std::vector<Record>& recs) {
    if (recs.empty()) return;
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cache: cannot open " + path + " for append");
    for (const auto& r : recs) out << format_record(r) << "\n";
}

}  // namespace cdlab::cache
