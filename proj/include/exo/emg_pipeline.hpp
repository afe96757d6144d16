#pragma once

#include <string>
#include <vector>

#include "exo/emg.hpp"
#include "exo/parallel.hpp"
#include "exo/stats.hpp"

namespace exo::emg {

// One row of the conditions map: which file belongs to which subject and
// condition, plus the repetition markers for that file (semicolon-separated
// onset/offset seconds in the CSV).
struct ConditionEntry {
    std::string file;
    std::string subject;
    std::string condition;
    std::vector<double> markers_s;
};

std::vector<ConditionEntry> load_conditions_map(const std::string& path);

EmgRecording load_recording_csv(const std::string& path, std::vector<double> markers_s = {});
MvcRecord load_mvc_csv(const std::string& path);

struct ComparisonResult {
    std::string muscle;
    std::string condition_a; // baseline
    std::string condition_b;
    stats::StatResult wilcoxon;
    stats::BonferroniFlag flag = stats::BonferroniFlag::NotSignificant;
};

struct MuscleFriedman {
    std::string muscle;
    stats::StatResult result;
};

struct StudyReport {
    std::vector<std::string> conditions; // in map order (first = baseline)
    std::vector<std::string> muscles;
    std::vector<std::string> subjects;
    std::vector<MuscleFriedman> friedman; // only when >= 3 conditions
    std::vector<ComparisonResult> comparisons;
    int bonferroni_m = 1;
};

// Full batch pipeline: preprocess each recording, segment, average the
// repetitions per (subject, condition, muscle), then run the paired
// statistics per muscle. Per-recording work parallelizes; assembly is
// order-independent.
StudyReport run_study(const std::string& recordings_dir, const std::string& mvc_file,
                      const std::string& conditions_file,
                      const PreprocessParams& params = {}, Exec exec = Exec::Parallel);

std::string report_to_json(const StudyReport& r);

} // namespace exo::emg
