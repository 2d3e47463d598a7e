#pragma once

#include <string>
#include <vector>

#include "tregsim/trajectory.hpp"

namespace tregsim {

enum class SampleSource { Lab, Simulation };

// One cross-sectional observation: a donor (or a simulated pseudo-donor) of a
// given age with the two measured proportions.
struct CohortSample {
    double age = 0.0;  // years
    double precursor_prop = 0.0;
    double quiescent_prop = 0.0;
    SampleSource source = SampleSource::Lab;
};

struct IngestResult {
    std::vector<CohortSample> samples;
    std::vector<std::string> warnings;
};

// Reads a comma-separated file with header `age,precursor_prop,quiescent_prop`.
// Malformed rows and out-of-range values throw DataError naming the line; an
// empty body yields an empty list plus a warning.
IngestResult ingest_cohort(const std::string& path);

// For each age, the trajectory sample nearest in time (ties resolve to the
// earlier sample). Ages beyond the simulated horizon throw DataError naming
// the age.
std::vector<CohortSample> sample_cross_section(const Trajectory& traj,
                                               const std::vector<double>& ages,
                                               double days_per_year);

// Decade bin of floor(age/10); age 19 -> "10-19", age 20 -> "20-29".
struct ComparisonRow {
    std::string label;
    int n_lab = 0;
    int n_sim = 0;
    bool has_both = false;
    // Valid only when has_both:
    double median_diff_precursor = 0.0;
    double median_diff_quiescent = 0.0;
    double p_precursor = 1.0;
    double p_quiescent = 1.0;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;  // ascending by decade
};

// Bins both cohorts by decade and compares them bin by bin: absolute
// difference of group medians plus a two-sided Mann-Whitney p per measure.
// Rows cover every decade where either side has data; one-sided bins render
// as n/a. Throws DataError when no bin has data on both sides.
ComparisonTable compare_cohorts(const std::vector<CohortSample>& lab,
                                const std::vector<CohortSample>& sim);

enum class TableStyle { Text, Csv };

// Text style aligns columns and renders p-values as "p<0.001" below the
// threshold, "p=0.808" style otherwise; csv style emits raw values.
std::string render_table(const ComparisonTable& table, TableStyle style);

}  // namespace tregsim
