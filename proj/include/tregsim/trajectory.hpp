#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tregsim {

// One response onset as it fired (after grid snapping and any promotion of a
// secondary draw against an unprimed clone).
struct ResponseRecord {
    double t_days = 0.0;
    int clone = 0;
    bool primary = false;
};

// Time-sampled output of one seeded run. Parallel vectors, one entry per
// sample. Proportions are of the grand total and sum to 1 whenever the total
// is positive; at a zero total all three are reported as 0.
struct Trajectory {
    std::vector<double> time_days;
    std::vector<double> time_years;
    std::vector<double> p_total;
    std::vector<double> r_total;
    std::vector<double> q_total;
    std::vector<double> precursor_prop;
    std::vector<double> active_prop;
    std::vector<double> quiescent_prop;
    std::vector<std::string> phase;

    std::vector<ResponseRecord> responses;

    std::uint64_t seed = 0;
    std::string parameter_fingerprint;
    std::uint64_t clamp_warnings = 0;

    std::size_t size() const { return time_days.size(); }
};

}  // namespace tregsim
