#include "exo/emg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "exo/errors.hpp"

namespace exo::emg {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kButterworthQ = 0.70710678118654752440; // 1/sqrt(2)
} // namespace

const std::vector<std::string>& known_muscles() {
    static const std::vector<std::string> names = {"BIC", "SS", "UT", "PM", "AD", "PD", "MD"};
    return names;
}

double EmgRecording::duration_s() const {
    if (samples.empty() || samples.front().empty() || sample_rate_hz <= 0)
        return 0.0;
    return static_cast<double>(samples.front().size()) / sample_rate_hz;
}

void EmgRecording::validate() const {
    if (!(sample_rate_hz > 0))
        throw domain_error("EmgRecording: sample rate must be > 0");
    if (channels.empty() || channels.size() != samples.size())
        throw domain_error("EmgRecording: channel names and sample columns must match");
    const auto& known = known_muscles();
    for (const std::string& ch : channels)
        if (std::find(known.begin(), known.end(), ch) == known.end())
            throw domain_error("EmgRecording: unknown muscle channel '" + ch + "'");
    const std::size_t len = samples.front().size();
    for (const auto& s : samples)
        if (s.size() != len)
            throw domain_error("EmgRecording: channels differ in length");
    const double dur = duration_s();
    for (std::size_t i = 0; i < markers_s.size(); ++i) {
        if (markers_s[i] < 0 || markers_s[i] > dur)
            throw domain_error("EmgRecording: marker outside the recording");
        if (i > 0 && !(markers_s[i] > markers_s[i - 1]))
            throw domain_error("EmgRecording: markers must be strictly increasing");
    }
}

void MvcRecord::validate() const {
    if (peak.empty())
        throw domain_error("MvcRecord: no MVC values");
    for (const auto& [name, v] : peak)
        if (!(v > 0))
            throw domain_error("MvcRecord: MVC for " + name + " must be > 0");
}

// ------------------------------------------------------------------
// Filters
// ------------------------------------------------------------------

namespace detail {

Biquad butterworth_lowpass(double fc_hz, double fs_hz) {
    const double w0 = 2.0 * kPi * fc_hz / fs_hz;
    const double cw = std::cos(w0);
    const double sw = std::sin(w0);
    const double alpha = sw / (2.0 * kButterworthQ);
    const double a0 = 1.0 + alpha;
    Biquad q{};
    q.b0 = (1.0 - cw) / 2.0 / a0;
    q.b1 = (1.0 - cw) / a0;
    q.b2 = q.b0;
    q.a1 = -2.0 * cw / a0;
    q.a2 = (1.0 - alpha) / a0;
    return q;
}

Biquad butterworth_highpass(double fc_hz, double fs_hz) {
    const double w0 = 2.0 * kPi * fc_hz / fs_hz;
    const double cw = std::cos(w0);
    const double sw = std::sin(w0);
    const double alpha = sw / (2.0 * kButterworthQ);
    const double a0 = 1.0 + alpha;
    Biquad q{};
    q.b0 = (1.0 + cw) / 2.0 / a0;
    q.b1 = -(1.0 + cw) / a0;
    q.b2 = q.b0;
    q.a1 = -2.0 * cw / a0;
    q.a2 = (1.0 - alpha) / a0;
    return q;
}

namespace {

void run_biquad(const Biquad& q, std::vector<double>& x) {
    double x1 = 0, x2 = 0, y1 = 0, y2 = 0;
    for (double& v : x) {
        const double x0 = v;
        const double y0 = q.b0 * x0 + q.b1 * x1 + q.b2 * x2 - q.a1 * y1 - q.a2 * y2;
        x2 = x1;
        x1 = x0;
        y2 = y1;
        y1 = y0;
        v = y0;
    }
}

} // namespace

std::vector<double> filtfilt_bandpass(std::span<const double> x, double fs_hz, double low_hz,
                                      double high_hz) {
    const std::size_t n = x.size();
    if (n == 0)
        return {};
    // Odd reflection padding so the forward/backward passes settle before
    // they reach the real signal.
    const std::size_t pad = std::min(n - 1, static_cast<std::size_t>(fs_hz * 0.5));
    std::vector<double> buf;
    buf.reserve(n + 2 * pad);
    for (std::size_t i = 0; i < pad; ++i)
        buf.push_back(2.0 * x[0] - x[pad - i]);
    buf.insert(buf.end(), x.begin(), x.end());
    for (std::size_t i = 0; i < pad; ++i)
        buf.push_back(2.0 * x[n - 1] - x[n - 2 - i]);

    const Biquad hp = butterworth_highpass(low_hz, fs_hz);
    const Biquad lp = butterworth_lowpass(high_hz, fs_hz);
    run_biquad(hp, buf);
    run_biquad(lp, buf);
    std::reverse(buf.begin(), buf.end());
    run_biquad(hp, buf);
    run_biquad(lp, buf);
    std::reverse(buf.begin(), buf.end());

    return {buf.begin() + static_cast<long>(pad), buf.begin() + static_cast<long>(pad + n)};
}

std::vector<double> moving_average(std::span<const double> x, int window) {
    const auto n = static_cast<long>(x.size());
    if (window < 1)
        throw domain_error("moving_average: window must be >= 1");
    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
    for (long i = 0; i < n; ++i)
        prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(i)];
    std::vector<double> out(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        // Centered window, shrinking at the edges.
        const long lo = std::max(0L, i - window / 2);
        const long hi = std::min(n, i - window / 2 + window);
        const double sum = prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo)];
        out[static_cast<std::size_t>(i)] = sum / static_cast<double>(hi - lo);
    }
    return out;
}

} // namespace detail

// ------------------------------------------------------------------
// Pipeline
// ------------------------------------------------------------------

std::vector<std::vector<double>> preprocess(const EmgRecording& r, const MvcRecord& mvc,
                                            const PreprocessParams& params) {
    r.validate();
    mvc.validate();
    const double nyquist = r.sample_rate_hz / 2.0;
    const double high = std::min(params.band_high_hz, 0.9 * nyquist);
    if (!(params.band_low_hz > 0) || !(high > params.band_low_hz))
        throw config_error("preprocess: band-pass edges unusable at this sample rate");
    const int window = std::max(1, static_cast<int>(std::lround(params.ma_window_s * r.sample_rate_hz)));

    std::vector<std::vector<double>> envelope(r.channels.size());
    for (std::size_t c = 0; c < r.channels.size(); ++c) {
        const auto it = mvc.peak.find(r.channels[c]);
        if (it == mvc.peak.end())
            throw config_error("preprocess: no MVC value for channel " + r.channels[c]);
        std::vector<double> y =
            detail::filtfilt_bandpass(r.samples[c], r.sample_rate_hz, params.band_low_hz, high);
        for (double& v : y)
            v = std::abs(v);
        y = detail::moving_average(y, window);
        const double scale = 100.0 / it->second;
        for (double& v : y)
            v *= scale;
        envelope[c] = std::move(y);
    }
    return envelope;
}

std::vector<Segment> segment_repetitions(const std::vector<std::vector<double>>& envelope,
                                         double sample_rate_hz,
                                         std::span<const double> markers_s) {
    if (envelope.empty() || envelope.front().empty())
        throw domain_error("segment_repetitions: empty envelope");
    if (!(sample_rate_hz > 0))
        throw domain_error("segment_repetitions: sample rate must be > 0");
    if (markers_s.empty() || markers_s.size() % 2 != 0)
        throw domain_error("segment_repetitions: markers must pair into [onset, offset]");
    const auto len = static_cast<long>(envelope.front().size());
    std::vector<Segment> segments;
    double prev_offset = -1.0;
    for (std::size_t k = 0; k < markers_s.size(); k += 2) {
        const double onset = markers_s[k];
        const double offset = markers_s[k + 1];
        if (!(offset > onset))
            throw domain_error("segment_repetitions: offset must exceed onset");
        if (onset < prev_offset)
            throw domain_error("segment_repetitions: overlapping repetitions");
        prev_offset = offset;
        const long i0 = std::clamp(static_cast<long>(std::lround(onset * sample_rate_hz)), 0L, len - 1);
        const long i1 = std::clamp(static_cast<long>(std::lround(offset * sample_rate_hz)), i0 + 1, len);
        Segment seg;
        seg.onset_s = onset;
        seg.offset_s = offset;
        seg.channel_means.reserve(envelope.size());
        for (const auto& ch : envelope) {
            double sum = 0.0;
            for (long i = i0; i < i1; ++i)
                sum += ch[static_cast<std::size_t>(i)];
            seg.channel_means.push_back(sum / static_cast<double>(i1 - i0));
        }
        segments.push_back(std::move(seg));
    }
    return segments;
}

double condition_mean(std::span<const double> segment_means) {
    if (segment_means.empty())
        throw domain_error("condition_mean: empty repetition list");
    const double sum = std::accumulate(segment_means.begin(), segment_means.end(), 0.0);
    return sum / static_cast<double>(segment_means.size());
}

} // namespace exo::emg
