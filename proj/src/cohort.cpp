#include "tregsim/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "tregsim/errors.hpp"
#include "tregsim/format.hpp"
#include "tregsim/stats.hpp"

namespace tregsim {

namespace {

std::string strip(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    std::size_t end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(strip(field));
    }
    if (!line.empty() && line.back() == ',') {
        fields.push_back("");
    }
    return fields;
}

double parse_double(const std::string& text, const std::string& where) {
    const std::string s = strip(text);
    if (s.empty()) {
        throw DataError(where + ": empty numeric field");
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) {
        throw DataError(where + ": not a number: '" + s + "'");
    }
    return v;
}

}  // namespace

IngestResult ingest_cohort(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open cohort file: " + path);
    }

    IngestResult out;
    std::string line;
    long line_no = 0;

    if (!std::getline(in, line)) {
        throw DataError(path + ": empty file, expected header age,precursor_prop,quiescent_prop");
    }
    ++line_no;
    {
        std::string header = strip(line);
        header.erase(std::remove(header.begin(), header.end(), ' '), header.end());
        if (header != "age,precursor_prop,quiescent_prop") {
            throw DataError(path + ":1: bad header '" + strip(line) +
                            "', expected age,precursor_prop,quiescent_prop");
        }
    }

    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = strip(line);
        if (row.empty() || row[0] == '#') {
            continue;
        }
        const std::string where = path + ":" + std::to_string(line_no);
        const auto fields = split_csv(row);
        if (fields.size() != 3) {
            throw DataError(where + ": expected 3 fields, got " + std::to_string(fields.size()));
        }
        CohortSample sample;
        sample.age = parse_double(fields[0], where);
        sample.precursor_prop = parse_double(fields[1], where);
        sample.quiescent_prop = parse_double(fields[2], where);
        sample.source = SampleSource::Lab;
        if (!std::isfinite(sample.age) || sample.age < 0.0) {
            throw DataError(where + ": age must be >= 0, got " + fields[0]);
        }
        for (double prop : {sample.precursor_prop, sample.quiescent_prop}) {
            if (!(prop >= 0.0 && prop <= 1.0)) {
                throw DataError(where + ": proportion outside [0, 1]: " + fmt17(prop));
            }
        }
        out.samples.push_back(sample);
    }

    if (out.samples.empty()) {
        out.warnings.push_back(path + ": no data rows after header");
    }
    return out;
}

std::vector<CohortSample> sample_cross_section(const Trajectory& traj,
                                               const std::vector<double>& ages,
                                               double days_per_year) {
    if (traj.size() == 0) {
        throw DataError("cross-section requested from an empty trajectory");
    }
    const auto& times = traj.time_days;
    const double last = times.back();
    // Ages a little past the final sample still map onto it, up to one
    // trailing sampling gap; beyond that is extrapolation and refused.
    const double slack = times.size() >= 2 ? last - times[times.size() - 2] : 0.0;

    std::vector<CohortSample> out;
    out.reserve(ages.size());
    for (double age : ages) {
        const double t = age * days_per_year;
        if (!std::isfinite(t) || t < 0.0 || t > last + slack) {
            throw DataError("age " + fmt17(age) + " years is beyond the simulated horizon");
        }
        const auto it = std::lower_bound(times.begin(), times.end(), t);
        std::size_t idx;
        if (it == times.end()) {
            idx = times.size() - 1;
        } else {
            idx = static_cast<std::size_t>(it - times.begin());
            if (idx > 0) {
                const double after = times[idx] - t;
                const double before = t - times[idx - 1];
                if (before <= after) {  // ties resolve to the earlier sample
                    idx -= 1;
                }
            }
        }
        CohortSample sample;
        sample.age = age;
        sample.precursor_prop = traj.precursor_prop[idx];
        sample.quiescent_prop = traj.quiescent_prop[idx];
        sample.source = SampleSource::Simulation;
        out.push_back(sample);
    }
    return out;
}

ComparisonTable compare_cohorts(const std::vector<CohortSample>& lab,
                                const std::vector<CohortSample>& sim) {
    if (lab.empty() || sim.empty()) {
        throw DataError("cohort comparison needs non-empty lab and simulation lists");
    }

    struct BinData {
        std::vector<double> lab_p, lab_q, sim_p, sim_q;
    };
    std::map<int, BinData> bins;
    for (const auto& s : lab) {
        auto& bin = bins[static_cast<int>(std::floor(s.age / 10.0))];
        bin.lab_p.push_back(s.precursor_prop);
        bin.lab_q.push_back(s.quiescent_prop);
    }
    for (const auto& s : sim) {
        auto& bin = bins[static_cast<int>(std::floor(s.age / 10.0))];
        bin.sim_p.push_back(s.precursor_prop);
        bin.sim_q.push_back(s.quiescent_prop);
    }

    ComparisonTable table;
    bool any_both = false;
    for (const auto& [decade, data] : bins) {
        ComparisonRow row;
        row.label = std::to_string(decade * 10) + "-" + std::to_string(decade * 10 + 9);
        row.n_lab = static_cast<int>(data.lab_p.size());
        row.n_sim = static_cast<int>(data.sim_p.size());
        row.has_both = row.n_lab > 0 && row.n_sim > 0;
        if (row.has_both) {
            any_both = true;
            row.median_diff_precursor = std::abs(median(data.lab_p) - median(data.sim_p));
            row.median_diff_quiescent = std::abs(median(data.lab_q) - median(data.sim_q));
            row.p_precursor = mann_whitney(data.lab_p, data.sim_p).p_two_sided;
            row.p_quiescent = mann_whitney(data.lab_q, data.sim_q).p_two_sided;
        }
        table.rows.push_back(row);
    }
    if (!any_both) {
        throw DataError("no decade bin has data from both cohorts");
    }
    return table;
}

namespace {

std::string render_p(double p) {
    if (p < 0.001) {
        return "p<0.001";
    }
    return "p=" + fmt_fixed(p, 3);
}

}  // namespace

std::string render_table(const ComparisonTable& table, TableStyle style) {
    std::string out;
    if (style == TableStyle::Csv) {
        out += "age_group,n_lab,n_sim,median_diff_precursor,p_precursor,"
               "median_diff_quiescent,p_quiescent\n";
        for (const auto& row : table.rows) {
            out += row.label;
            out += ',' + std::to_string(row.n_lab);
            out += ',' + std::to_string(row.n_sim);
            if (row.has_both) {
                out += ',' + fmt17(row.median_diff_precursor);
                out += ',' + fmt17(row.p_precursor);
                out += ',' + fmt17(row.median_diff_quiescent);
                out += ',' + fmt17(row.p_quiescent);
            } else {
                out += ",n/a,n/a,n/a,n/a";
            }
            out += '\n';
        }
        return out;
    }

    const char* fmt = "%-10s %6s %6s %24s %16s %24s %16s\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, "age group", "n_lab", "n_sim",
                  "median diff (precursor)", "MW (precursor)",
                  "median diff (quiescent)", "MW (quiescent)");
    out += buf;
    for (const auto& row : table.rows) {
        const std::string nl = std::to_string(row.n_lab);
        const std::string ns = std::to_string(row.n_sim);
        std::string dp = "n/a", pp = "n/a", dq = "n/a", pq = "n/a";
        if (row.has_both) {
            dp = fmt_fixed(row.median_diff_precursor, 4);
            pp = render_p(row.p_precursor);
            dq = fmt_fixed(row.median_diff_quiescent, 4);
            pq = render_p(row.p_quiescent);
        }
        std::snprintf(buf, sizeof(buf), fmt, row.label.c_str(), nl.c_str(), ns.c_str(),
                      dp.c_str(), pp.c_str(), dq.c_str(), pq.c_str());
        out += buf;
    }
    return out;
}

}  // namespace tregsim
