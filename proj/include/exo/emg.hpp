#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace exo::emg {

// Recognized muscle channel names.
const std::vector<std::string>& known_muscles();

struct EmgRecording {
    double sample_rate_hz = 0;
    std::vector<std::string> channels;
    std::vector<std::vector<double>> samples; // per channel, equal lengths
    std::vector<double> markers_s;            // onset/offset pairs, strictly increasing

    double duration_s() const;
    void validate() const;
};

struct MvcRecord {
    std::map<std::string, double> peak; // per-muscle envelope peak, > 0
    void validate() const;
};

// Envelope extraction chain: zero-phase band-pass (2nd-order Butterworth
// high-pass + low-pass run forward-backward), full-wave rectification,
// centered moving average over round(ma_window_s * fs) samples, then
// MVC normalization to %MVC. The band is configuration; the high edge is
// clipped below Nyquist and an unusable band raises config_error.
struct PreprocessParams {
    double band_low_hz = 20.0;
    double band_high_hz = 450.0;
    double ma_window_s = 0.2;
};

std::vector<std::vector<double>> preprocess(const EmgRecording& r, const MvcRecord& mvc,
                                            const PreprocessParams& params = {});

struct Segment {
    double onset_s = 0;
    double offset_s = 0;
    std::vector<double> channel_means; // aligned with recording channel order
};

// Splits the envelope at the marker pairs; throws domain_error for unpaired
// or overlapping markers.
std::vector<Segment> segment_repetitions(const std::vector<std::vector<double>>& envelope,
                                         double sample_rate_hz,
                                         std::span<const double> markers_s);

// Arithmetic mean of per-repetition values; throws domain_error when empty.
double condition_mean(std::span<const double> segment_means);

// Internal filter pieces, exposed for tests.
namespace detail {
struct Biquad {
    double b0, b1, b2, a1, a2;
};
Biquad butterworth_lowpass(double fc_hz, double fs_hz);
Biquad butterworth_highpass(double fc_hz, double fs_hz);
std::vector<double> filtfilt_bandpass(std::span<const double> x, double fs_hz,
                                      double low_hz, double high_hz);
std::vector<double> moving_average(std::span<const double> x, int window);
} // namespace detail

} // namespace exo::emg
