#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cdlab::cache {

// One result-cache line.  The JSON field order is fixed:
// {"version":1,"d":..,"n":..,"dim_mu3":..,"dim_hom":..,"tam_exp":..,"w":..,"r3_lo":..,"r3_hi":..}
struct Record {
    int version = 1;
    std::int64_t d = 0;
    std::int64_t n = 0;
    int dim_mu3 = 0;
    int dim_hom = 0;
    int tam_exp = 0;
    int w = 0;
    int r3_lo = 0;
    int r3_hi = 0;
};

struct Store {
    std::vector<Record> records;
};

std::string format_record(const Record& r);

// Reads a JSON-lines cache; unknown fields are rejected, as are records of a
// different version.  A missing file yields an empty store.
Store read_store(const std::string& path);

// Append-only write of the given records.
void append_records(const std::string& path, const std::vector<Record>& recs);

}  // namespace cdlab::cache
