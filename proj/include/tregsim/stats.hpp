#pragma once

#include <string>
#include <vector>

namespace tregsim {

enum class MwMode { Auto, Exact, Approx };
enum class MwMethod { Exact, NormalApprox };

struct MannWhitneyResult {
    double u_x = 0.0;
    double u_y = 0.0;
    double p_two_sided = 1.0;  // in (0, 1]
    MwMethod method = MwMethod::Exact;
    bool tie_corrected = false;
};

// Middle order statistic; mean of the middle two for even length.
// Throws std::invalid_argument on empty input.
double median(std::vector<double> values);

// Unbiased (n-1) sample standard deviation. Throws std::invalid_argument for
// n < 2.
double sample_sd(const std::vector<double>& values);

// Two-sided Mann-Whitney U from midranks. Auto picks exact enumeration when
// max(n_x, n_y) <= 8 and the pooled sample is tie-free, otherwise the normal
// approximation with tie and continuity corrections. Requesting exact with
// ties throws std::invalid_argument.
MannWhitneyResult mann_whitney(const std::vector<double>& x,
                               const std::vector<double>& y,
                               MwMode mode = MwMode::Auto);

}  // namespace tregsim
