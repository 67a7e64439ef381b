#pragma once

#include <stdexcept>
#include <string>

namespace heckespan {

// Exit-code mapping used by the CLI: usage 2, data 3, capacity 4.

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct data_unavailable : std::runtime_error {
    int level = 0;
    int weight = 0;
    data_unavailable(const std::string& msg, int lv = 0, int wt = 0)
        : std::runtime_error(msg), level(lv), weight(wt) {}
};

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ingest_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace heckespan
