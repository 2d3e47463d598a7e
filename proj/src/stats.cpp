#include "tregsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace tregsim {

double median(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("median: empty input");
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double sample_sd(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw std::invalid_argument("sample_sd: need at least two values");
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(n - 1));
}

namespace {

struct RankInfo {
    std::vector<double> ranks_x;  // midranks of x in the pooled sample
    double rank_sum_x = 0.0;
    bool has_ties = false;
    double tie_term = 0.0;  // sum of t^3 - t over tie groups
};

RankInfo midranks(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t nx = x.size();
    std::vector<std::pair<double, std::size_t>> pooled;
    pooled.reserve(nx + y.size());
    for (std::size_t i = 0; i < nx; ++i) {
        pooled.emplace_back(x[i], i);
    }
    for (std::size_t j = 0; j < y.size(); ++j) {
        pooled.emplace_back(y[j], nx + j);
    }
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    RankInfo info;
    const std::size_t total = pooled.size();
    std::size_t i = 0;
    while (i < total) {
        std::size_t j = i;
        while (j < total && pooled[j].first == pooled[i].first) {
            ++j;
        }
        const std::size_t t = j - i;
        // Positions i..j-1 share the average of ranks i+1..j.
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        if (t > 1) {
            info.has_ties = true;
            const double td = static_cast<double>(t);
            info.tie_term += td * td * td - td;
        }
        for (std::size_t k = i; k < j; ++k) {
            if (pooled[k].second < nx) {
                info.rank_sum_x += rank;
            }
        }
        i = j;
    }
    return info;
}

// Number of k-element subsets of ranks {1..total} for every possible rank
// sum; the null distribution of the rank statistic in the tie-free case.
std::vector<std::vector<std::uint64_t>> rank_sum_counts(std::size_t total, std::size_t k) {
    const std::size_t max_sum = total * (total + 1) / 2;
    std::vector<std::vector<std::uint64_t>> f(k + 1,
                                              std::vector<std::uint64_t>(max_sum + 1, 0));
    f[0][0] = 1;
    for (std::size_t r = 1; r <= total; ++r) {
        for (std::size_t kk = std::min(k, r); kk >= 1; --kk) {
            for (std::size_t s = max_sum; s >= r; --s) {
                f[kk][s] += f[kk - 1][s - r];
            }
        }
    }
    return f;
}

MannWhitneyResult exact_mann_whitney(double u_x, std::size_t nx, std::size_t ny) {
    const std::size_t total = nx + ny;
    const auto f = rank_sum_counts(total, nx);

    // Tie-free, so U values are integers; compare two-tailed distances from
    // the center in exact integer arithmetic.
    const long long nxy = static_cast<long long>(nx) * static_cast<long long>(ny);
    const long long u_obs = std::llround(u_x);
    const long long d_obs = std::llabs(2 * u_obs - nxy);

    const long long min_sum = static_cast<long long>(nx) * static_cast<long long>(nx + 1) / 2;
    std::uint64_t count = 0;
    std::uint64_t all = 0;
    const auto& row = f[nx];
    for (std::size_t s = 0; s < row.size(); ++s) {
        if (row[s] == 0) {
            continue;
        }
        all += row[s];
        const long long u = static_cast<long long>(s) - min_sum;
        if (std::llabs(2 * u - nxy) >= d_obs) {
            count += row[s];
        }
    }

    MannWhitneyResult out;
    out.u_x = static_cast<double>(u_obs);
    out.u_y = static_cast<double>(nxy - u_obs);
    out.p_two_sided = static_cast<double>(count) / static_cast<double>(all);
    out.method = MwMethod::Exact;
    out.tie_corrected = false;
    return out;
}

MannWhitneyResult approx_mann_whitney(double u_x, std::size_t nx, std::size_t ny,
                                      const RankInfo& info) {
    const double dnx = static_cast<double>(nx);
    const double dny = static_cast<double>(ny);
    const double total = dnx + dny;
    const double mu = dnx * dny / 2.0;
    const double tie_adjust = info.tie_term / (total * (total - 1.0));
    const double var = dnx * dny / 12.0 * ((total + 1.0) - tie_adjust);

    MannWhitneyResult out;
    out.u_x = u_x;
    out.u_y = dnx * dny - u_x;
    out.method = MwMethod::NormalApprox;
    out.tie_corrected = info.has_ties;

    if (var <= 0.0) {
        out.p_two_sided = 1.0;  // pooled sample is constant
        return out;
    }
    // Continuity correction of 0.5 toward the mean; at or inside the
    // correction the test carries no evidence.
    const double shifted = std::abs(u_x - mu) - 0.5;
    if (shifted <= 0.0) {
        out.p_two_sided = 1.0;
        return out;
    }
    const double z = shifted / std::sqrt(var);
    double p = std::erfc(z / std::sqrt(2.0));
    p = std::min(p, 1.0);
    p = std::max(p, std::numeric_limits<double>::min());  // keep p > 0 on underflow
    out.p_two_sided = p;
    return out;
}

}  // namespace

MannWhitneyResult mann_whitney(const std::vector<double>& x,
                               const std::vector<double>& y,
                               MwMode mode) {
    if (x.empty() || y.empty()) {
        throw std::invalid_argument("mann_whitney: both samples must be non-empty");
    }
    const std::size_t nx = x.size();
    const std::size_t ny = y.size();
    const RankInfo info = midranks(x, y);
    const double u_x = info.rank_sum_x - static_cast<double>(nx) * (static_cast<double>(nx) + 1.0) / 2.0;

    bool exact = false;
    switch (mode) {
        case MwMode::Exact:
            if (info.has_ties) {
                throw std::invalid_argument("mann_whitney: exact mode requires a tie-free pooled sample");
            }
            exact = true;
            break;
        case MwMode::Approx:
            exact = false;
            break;
        case MwMode::Auto:
            exact = !info.has_ties && std::max(nx, ny) <= 8;
            break;
    }

    return exact ? exact_mann_whitney(u_x, nx, ny)
                 : approx_mann_whitney(u_x, nx, ny, info);
}

}  // namespace tregsim
