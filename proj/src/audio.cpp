#include "pianoskill/audio.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <fftw3.h>

#include "pianoskill/error.hpp"

namespace pianoskill {

namespace {

constexpr double kPowerEps = 1e-10;

// Slaney mel scale: linear below 1 kHz, logarithmic above.
double hz_to_mel(double hz) {
    constexpr double f_sp = 200.0 / 3.0;
    constexpr double min_log_hz = 1000.0;
    const double min_log_mel = min_log_hz / f_sp;
    const double logstep = std::log(6.4) / 27.0;
    if (hz < min_log_hz) return hz / f_sp;
    return min_log_mel + std::log(hz / min_log_hz) / logstep;
}

double mel_to_hz(double mel) {
    constexpr double f_sp = 200.0 / 3.0;
    constexpr double min_log_hz = 1000.0;
    const double min_log_mel = min_log_hz / f_sp;
    const double logstep = std::log(6.4) / 27.0;
    if (mel < min_log_mel) return mel * f_sp;
    return min_log_hz * std::exp(logstep * (mel - min_log_mel));
}

// One FFTW plan per FFT size, shared process-wide. Plans are created with
// FFTW_UNALIGNED so they can execute on arbitrary caller buffers.
fftw_plan plan_for(int n_fft) {
    static std::mutex mutex;
    static std::map<int, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = plans.find(n_fft);
    if (it != plans.end()) return it->second;
    std::vector<double> in(static_cast<std::size_t>(n_fft));
    std::vector<fftw_complex> out(static_cast<std::size_t>(n_fft / 2 + 1));
    fftw_plan plan = fftw_plan_dft_r2c_1d(n_fft, in.data(), out.data(),
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(n_fft, plan);
    return plan;
}

} // namespace

void MelSpectrogramParams::validate() const {
    if (sample_rate <= 0) throw ValidationError("mel params: sample_rate must be positive");
    if (n_fft <= 0 || (n_fft & (n_fft - 1)) != 0)
        throw ValidationError("mel params: n_fft must be a positive power of two");
    if (hop <= 0 || hop > n_fft)
        throw ValidationError("mel params: need 0 < hop <= n_fft");
    if (n_mels < 1) throw ValidationError("mel params: n_mels must be >= 1");
    if (fmin < 0.0 || fmin >= fmax || fmax > static_cast<double>(sample_rate) / 2.0)
        throw ValidationError("mel params: need 0 <= fmin < fmax <= sample_rate/2");
}

std::vector<double> mel_filterbank(const MelSpectrogramParams& params) {
    params.validate();
    const int n_bins = params.n_fft / 2 + 1;
    const double mel_lo = hz_to_mel(params.fmin);
    const double mel_hi = hz_to_mel(params.fmax);

    std::vector<double> mel_f(static_cast<std::size_t>(params.n_mels) + 2);
    for (int i = 0; i < params.n_mels + 2; ++i)
        mel_f[static_cast<std::size_t>(i)] =
            mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (params.n_mels + 1));

    std::vector<double> fb(static_cast<std::size_t>(params.n_mels) * n_bins, 0.0);
    for (int m = 0; m < params.n_mels; ++m) {
        const double f_lo = mel_f[static_cast<std::size_t>(m)];
        const double f_mid = mel_f[static_cast<std::size_t>(m) + 1];
        const double f_hi = mel_f[static_cast<std::size_t>(m) + 2];
        const double enorm = 2.0 / (f_hi - f_lo); // area normalization
        for (int k = 0; k < n_bins; ++k) {
            const double f_k = static_cast<double>(k) * params.sample_rate / params.n_fft;
            const double lower = (f_k - f_lo) / (f_mid - f_lo);
            const double upper = (f_hi - f_k) / (f_hi - f_mid);
            const double w = std::max(0.0, std::min(lower, upper));
            fb[static_cast<std::size_t>(m) * n_bins + k] = w * enorm;
        }
    }
    return fb;
}

PowerSpectrogram stft_power(const AudioWindow& window, const MelSpectrogramParams& params) {
    params.validate();
    const long len = static_cast<long>(window.samples.size());
    const int pad = params.n_fft / 2;
    if (len < pad + 1)
        throw ValidationError("audio window of " + std::to_string(len) +
                              " samples is too short for n_fft " +
                              std::to_string(params.n_fft) + " with centered frames");

    // centered framing over reflect-padded signal
    auto sample_at = [&](long idx) {
        if (idx < 0) idx = -idx;
        if (idx >= len) idx = 2 * (len - 1) - idx;
        return window.samples[static_cast<std::size_t>(idx)];
    };

    const int n_bins = params.n_fft / 2 + 1;
    const int n_frames = static_cast<int>(1 + len / params.hop);

    std::vector<double> hann(static_cast<std::size_t>(params.n_fft));
    for (int i = 0; i < params.n_fft; ++i)
        hann[static_cast<std::size_t>(i)] =
            0.5 - 0.5 * std::cos(2.0 * M_PI * i / params.n_fft);

    PowerSpectrogram out;
    out.n_bins = n_bins;
    out.n_frames = n_frames;
    out.data.assign(static_cast<std::size_t>(n_bins) * n_frames, 0.0);

    fftw_plan plan = plan_for(params.n_fft);
    std::vector<double> frame(static_cast<std::size_t>(params.n_fft));
    std::vector<fftw_complex> spectrum(static_cast<std::size_t>(n_bins));

    for (int t = 0; t < n_frames; ++t) {
        const long start = static_cast<long>(t) * params.hop - pad;
        for (int i = 0; i < params.n_fft; ++i)
            frame[static_cast<std::size_t>(i)] =
                sample_at(start + i) * hann[static_cast<std::size_t>(i)];
        fftw_execute_dft_r2c(plan, frame.data(), spectrum.data());
        for (int k = 0; k < n_bins; ++k) {
            const double re = spectrum[static_cast<std::size_t>(k)][0];
            const double im = spectrum[static_cast<std::size_t>(k)][1];
            out.at(k, t) = re * re + im * im;
        }
    }
    return out;
}

MelMatrix melspectrogram(const AudioWindow& window, const MelSpectrogramParams& params) {
    const PowerSpectrogram power = stft_power(window, params);
    const std::vector<double> fb = mel_filterbank(params);

    MelMatrix out;
    out.n_mels = params.n_mels;
    out.n_frames = power.n_frames;
    out.data.assign(static_cast<std::size_t>(params.n_mels) * power.n_frames, 0.0);
    for (int m = 0; m < params.n_mels; ++m) {
        const double* w = &fb[static_cast<std::size_t>(m) * power.n_bins];
        for (int t = 0; t < power.n_frames; ++t) {
            double acc = 0.0;
            for (int k = 0; k < power.n_bins; ++k) acc += w[k] * power.at(k, t);
            out.at(m, t) = acc;
        }
    }
    return out;
}

MelMatrix power_to_db(const MelMatrix& S, double db_ref, double db_floor) {
    if (db_ref <= 0.0) throw ValidationError("power_to_db: db_ref must be positive");
    MelMatrix out = S;
    for (double& v : out.data) {
        if (v < 0.0) throw ValidationError("power_to_db: negative power value");
        v = 10.0 * std::log10(std::max(v, kPowerEps) / db_ref);
        v = std::max(v, db_floor);
    }
    return out;
}

AuralClip build_aural_clip(const AudioWindow& window, const MelSpectrogramParams& params,
                           const AudioStandardization& standardization) {
    const MelMatrix mel = melspectrogram(window, params);
    double max_power = 0.0;
    for (const double v : mel.data) max_power = std::max(max_power, v);
    // a silent window has no reference power; it maps to the dB floor
    const double db_ref = max_power > kPowerEps ? max_power : 1.0;
    const MelMatrix db = power_to_db(mel, db_ref, params.db_floor);

    Image db_image(db.n_frames, db.n_mels, 1); // rows = mel bands, cols = time
    for (int m = 0; m < db.n_mels; ++m)
        for (int t = 0; t < db.n_frames; ++t)
            db_image.at(m, t, 0) = static_cast<float>(db.at(m, t));

    Image resized = resize_bilinear(db_image, kAuralImageSize, kAuralImageSize);
    const float floor = static_cast<float>(params.db_floor);
    const float mean = static_cast<float>(standardization.mean);
    const float inv_std = static_cast<float>(1.0 / standardization.stddev);
    for (float& v : resized.data) v = ((v - floor) / -floor - mean) * inv_std;

    AuralClip clip;
    clip.image = std::move(resized);
    clip.provenance = window.provenance;
    return clip;
}

AudioWindow extract_window(const std::vector<double>& samples, long sample_rate,
                           const ClipSpec& clip, double fps, long target_rate) {
    if (sample_rate <= 0 || target_rate <= 0)
        throw ValidationError("extract_window: sample rates must be positive");
    const auto [start_s, dur_s] = audio_window(clip, fps);
    const long out_len = std::lround(dur_s * static_cast<double>(target_rate));

    AudioWindow out;
    out.sample_rate = target_rate;
    out.provenance = clip;
    out.samples.resize(static_cast<std::size_t>(out_len));
    const double native_last = static_cast<double>(samples.size()) - 1.0;
    for (long i = 0; i < out_len; ++i) {
        const double t = start_s + static_cast<double>(i) / target_rate;
        const double pos = t * static_cast<double>(sample_rate);
        if (pos > native_last + 0.5)
            throw IoError("audio does not cover clip window ending at " +
                          std::to_string(t) + " s");
        const double clamped = std::min(pos, native_last);
        const std::size_t i0 = static_cast<std::size_t>(clamped);
        const std::size_t i1 = std::min(i0 + 1, samples.size() - 1);
        const double w = clamped - static_cast<double>(i0);
        out.samples[static_cast<std::size_t>(i)] =
            samples[i0] * (1.0 - w) + samples[i1] * w;
    }
    return out;
}

} // namespace pianoskill
