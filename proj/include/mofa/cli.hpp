#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mofa::cli {

struct Config {
    double tolerance = 1e-9;
    int backtrack_budget = 10000;
    int family_samples = 3;
    int sample_count = 25;
    double sample_lo = -5.0;
    double sample_hi = 5.0;
    std::uint64_t seed = 0;
};

/// Reads {"tolerance", "budget", "family_samples", "samples", "range": [lo, hi], "seed"}; absent keys keep `base`.
Config read_config(const std::string& text, Config base = {});

/// Exit status: 0 success, 1 domain failure, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mofa::cli
