#include "exo/emg_pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "exo/errors.hpp"
#include "exo/io/csv.hpp"

#include <json.hpp>

namespace exo::emg {

namespace fs = std::filesystem;

std::vector<ConditionEntry> load_conditions_map(const std::string& path) {
    const io::Table t = io::read_csv_file(path);
    if (t.header != std::vector<std::string>{"file", "subject", "condition", "markers"})
        throw io_error("conditions map: expected header file,subject,condition,markers in " +
                       path);
    std::vector<ConditionEntry> entries;
    for (const auto& row : t.rows) {
        if (row.size() != 4)
            throw io_error("conditions map: malformed row in " + path);
        ConditionEntry e;
        e.file = row[0];
        e.subject = row[1];
        e.condition = row[2];
        std::stringstream ss(row[3]);
        std::string tok;
        while (std::getline(ss, tok, ';'))
            if (!tok.empty())
                e.markers_s.push_back(io::parse_num(tok));
        entries.push_back(std::move(e));
    }
    if (entries.empty())
        throw io_error("conditions map: no entries in " + path);
    return entries;
}

EmgRecording load_recording_csv(const std::string& path, std::vector<double> markers_s) {
    const io::Table t = io::read_csv_file(path);
    if (t.header.size() < 2 || t.header.front() != "time_s")
        throw io_error("recording: expected time_s followed by channel columns in " + path);
    if (t.rows.size() < 2)
        throw io_error("recording: too few samples in " + path);
    EmgRecording r;
    r.channels.assign(t.header.begin() + 1, t.header.end());
    r.samples.assign(r.channels.size(), {});
    double t0 = 0, t1 = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        if (row.size() != t.header.size())
            throw io_error("recording: ragged row in " + path);
        const double ts = io::parse_num(row[0]);
        if (i == 0)
            t0 = ts;
        t1 = ts;
        for (std::size_t c = 0; c < r.channels.size(); ++c)
            r.samples[c].push_back(io::parse_num(row[c + 1]));
    }
    if (!(t1 > t0))
        throw io_error("recording: non-increasing time column in " + path);
    r.sample_rate_hz = static_cast<double>(t.rows.size() - 1) / (t1 - t0);
    r.markers_s = std::move(markers_s);
    r.validate();
    return r;
}

MvcRecord load_mvc_csv(const std::string& path) {
    const io::Table t = io::read_csv_file(path);
    if (t.rows.size() != 1)
        throw io_error("mvc: expected a single value row in " + path);
    MvcRecord m;
    for (std::size_t c = 0; c < t.header.size(); ++c)
        m.peak[t.header[c]] = io::parse_num(t.rows[0][c]);
    m.validate();
    return m;
}

// ------------------------------------------------------------------
// Batch pipeline
// ------------------------------------------------------------------

namespace {

struct FeatureKey {
    std::string subject, condition, muscle;
    bool operator<(const FeatureKey& o) const {
        return std::tie(subject, condition, muscle) < std::tie(o.subject, o.condition, o.muscle);
    }
};

} // namespace

StudyReport run_study(const std::string& recordings_dir, const std::string& mvc_file,
                      const std::string& conditions_file, const PreprocessParams& params,
                      Exec exec) {
    const std::vector<ConditionEntry> entries = load_conditions_map(conditions_file);
    const MvcRecord mvc = load_mvc_csv(mvc_file);

    StudyReport report;
    std::set<std::string> subject_set;
    for (const ConditionEntry& e : entries) {
        if (std::find(report.conditions.begin(), report.conditions.end(), e.condition) ==
            report.conditions.end())
            report.conditions.push_back(e.condition); // map order, first = baseline
        subject_set.insert(e.subject);
    }
    report.subjects.assign(subject_set.begin(), subject_set.end());

    // Per-recording feature extraction; recordings are independent.
    std::vector<std::map<FeatureKey, double>> partial(entries.size());
    std::vector<std::string> failures(entries.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (long i = 0; i < static_cast<long>(entries.size()); ++i) {
        const ConditionEntry& e = entries[static_cast<std::size_t>(i)];
        try {
            const fs::path p = fs::path(recordings_dir) / e.file;
            const EmgRecording rec = load_recording_csv(p.string(), e.markers_s);
            const auto envelope = preprocess(rec, mvc, params);
            const auto segments =
                segment_repetitions(envelope, rec.sample_rate_hz, rec.markers_s);
            for (std::size_t c = 0; c < rec.channels.size(); ++c) {
                std::vector<double> reps;
                reps.reserve(segments.size());
                for (const Segment& s : segments)
                    reps.push_back(s.channel_means[c]);
                partial[static_cast<std::size_t>(i)][{e.subject, e.condition, rec.channels[c]}] =
                    condition_mean(reps);
            }
        } catch (const std::exception& ex) {
            failures[static_cast<std::size_t>(i)] = ex.what();
        }
    }
    for (std::size_t i = 0; i < failures.size(); ++i)
        if (!failures[i].empty())
            throw computation_error("emg run: " + entries[i].file + ": " + failures[i]);

    // Order-independent assembly.
    std::map<FeatureKey, double> features;
    for (const auto& m : partial)
        for (const auto& [k, v] : m)
            if (!features.emplace(k, v).second)
                throw domain_error("emg run: duplicate feature for subject " + k.subject + ", " +
                                   k.condition + ", " + k.muscle);

    std::set<std::string> muscle_set;
    for (const auto& [k, v] : features)
        muscle_set.insert(k.muscle);
    report.muscles.assign(muscle_set.begin(), muscle_set.end());

    const std::size_t n_cond = report.conditions.size();
    const int n_pairs = static_cast<int>(n_cond * (n_cond - 1) / 2);
    report.bonferroni_m = n_cond >= 3 ? n_pairs : 1;

    for (const std::string& muscle : report.muscles) {
        // Subjects with complete data for this muscle across all conditions.
        std::vector<std::string> complete;
        for (const std::string& subj : report.subjects) {
            bool ok = true;
            for (const std::string& cond : report.conditions)
                if (!features.count({subj, cond, muscle}))
                    ok = false;
            if (ok)
                complete.push_back(subj);
        }
        if (complete.size() < 2)
            continue;

        if (n_cond >= 3) {
            std::vector<std::vector<double>> matrix;
            for (const std::string& subj : complete) {
                std::vector<double> row;
                for (const std::string& cond : report.conditions)
                    row.push_back(features.at({subj, cond, muscle}));
                matrix.push_back(std::move(row));
            }
            report.friedman.push_back({muscle, stats::friedman(matrix)});
        }

        for (std::size_t a = 0; a < n_cond; ++a) {
            for (std::size_t b = a + 1; b < n_cond; ++b) {
                ComparisonResult cmp;
                cmp.muscle = muscle;
                cmp.condition_a = report.conditions[a];
                cmp.condition_b = report.conditions[b];
                std::vector<std::pair<double, double>> paired;
                std::vector<double> va, vb;
                for (const std::string& subj : complete) {
                    const double xa = features.at({subj, cmp.condition_a, muscle});
                    const double xb = features.at({subj, cmp.condition_b, muscle});
                    paired.emplace_back(xa, xb);
                    va.push_back(xa);
                    vb.push_back(xb);
                }
                cmp.wilcoxon = stats::wilcoxon_signed_rank(paired, exec);
                cmp.wilcoxon.derive_flags(stats::kAlphaRaw / report.bonferroni_m);
                if (!cmp.wilcoxon.undefined_test)
                    cmp.wilcoxon.effect_size_d = stats::effect_size_d(paired);
                const double base_median = stats::median(va);
                if (base_median > 0)
                    cmp.wilcoxon.reduction_percent =
                        stats::reduction_percent(base_median, stats::median(vb));
                cmp.flag = stats::bonferroni(std::vector<double>{cmp.wilcoxon.p_value},
                                             report.bonferroni_m)[0];
                report.comparisons.push_back(std::move(cmp));
            }
        }
    }
    return report;
}

std::string report_to_json(const StudyReport& r) {
    nlohmann::ordered_json j;
    j["thresholds"] = {
        {"alpha_raw", stats::kAlphaRaw},
        {"alpha_corrected", stats::kAlphaRaw / r.bonferroni_m},
        {"bonferroni_m", r.bonferroni_m},
        {"note", "significant: p < alpha_corrected; trend: alpha_corrected <= p < alpha_raw"},
    };
    j["conditions"] = r.conditions;
    j["subjects"] = r.subjects;
    j["muscles"] = r.muscles;
    j["friedman"] = nlohmann::ordered_json::array();
    for (const MuscleFriedman& f : r.friedman) {
        j["friedman"].push_back({{"muscle", f.muscle},
                                 {"chi_square", f.result.statistic},
                                 {"p_value", f.result.p_value},
                                 {"p_reported", stats::format_p(f.result.p_value)},
                                 {"n", f.result.n_effective}});
    }
    j["comparisons"] = nlohmann::ordered_json::array();
    for (const ComparisonResult& c : r.comparisons) {
        nlohmann::ordered_json e = {
            {"muscle", c.muscle},
            {"baseline", c.condition_a},
            {"condition", c.condition_b},
            {"n_effective", c.wilcoxon.n_effective},
            {"statistic", c.wilcoxon.statistic},
            {"p_value", c.wilcoxon.p_value},
            {"p_reported", stats::format_p(c.wilcoxon.p_value)},
            {"exact", c.wilcoxon.exact},
            {"undefined", c.wilcoxon.undefined_test},
            {"significant_raw", c.wilcoxon.significant_raw},
            {"significant_corrected", c.wilcoxon.significant_corrected},
            {"flag", stats::to_string(c.flag)},
        };
        if (c.wilcoxon.effect_size_d)
            e["effect_size_d"] = *c.wilcoxon.effect_size_d;
        if (c.wilcoxon.reduction_percent)
            e["reduction_percent"] = *c.wilcoxon.reduction_percent;
        j["comparisons"].push_back(e);
    }
    return j.dump(2) + "\n";
}

} // namespace exo::emg
