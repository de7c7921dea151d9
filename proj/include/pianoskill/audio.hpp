#pragma once

#include <string>
#include <vector>

#include "pianoskill/image.hpp"
#include "pianoskill/sampling.hpp"

namespace pianoskill {

inline constexpr int kAuralImageSize = 224;

/// Time-aligned slice of a performance's audio for one clip.
struct AudioWindow {
    std::vector<double> samples;
    long sample_rate = 0;
    ClipSpec provenance;
};

struct MelSpectrogramParams {
    long sample_rate = 22050; // analysis rate; input is resampled on ingest
    int n_fft = 2048;
    int hop = 512;
    int n_mels = 128;
    double fmin = 0.0;
    double fmax = 11025.0;
    double db_floor = -80.0;

    void validate() const;
};

/// Row-major (n_mels x n_frames) matrix.
struct MelMatrix {
    int n_mels = 0;
    int n_frames = 0;
    std::vector<double> data;

    double& at(int m, int t) { return data[static_cast<std::size_t>(m) * n_frames + t]; }
    double at(int m, int t) const {
        return data[static_cast<std::size_t>(m) * n_frames + t];
    }
};

/// Row-major (n_fft/2+1 x n_frames) magnitude-squared spectrogram.
struct PowerSpectrogram {
    int n_bins = 0;
    int n_frames = 0;
    std::vector<double> data;

    double& at(int k, int t) { return data[static_cast<std::size_t>(k) * n_frames + t]; }
    double at(int k, int t) const {
        return data[static_cast<std::size_t>(k) * n_frames + t];
    }
};

/// Short-time Fourier power: periodic Hann window, centered frames over a
/// reflect-padded signal, n_frames = 1 + floor(len/hop).
PowerSpectrogram stft_power(const AudioWindow& window, const MelSpectrogramParams& params);

/// Decibel-scaled 224x224 single-channel spectrogram image for one clip.
struct AuralClip {
    Image image; // 224x224x1, standardized
    ClipSpec provenance;
};

/// Slaney-style mel filterbank (area-normalized triangles) over the
/// n_fft/2+1 bin center frequencies. Row-major (n_mels x n_bins).
std::vector<double> mel_filterbank(const MelSpectrogramParams& params);

/// stft_power projected onto the mel filterbank.
MelMatrix melspectrogram(const AudioWindow& window, const MelSpectrogramParams& params);

/// Elementwise 10*log10(max(S, eps)/db_ref) clamped below at db_floor;
/// eps = 1e-10 guards the log.
MelMatrix power_to_db(const MelMatrix& S, double db_ref, double db_floor);

struct AudioStandardization {
    double mean = 0.5;
    double stddev = 0.5;
};

/// Full aural path: melspectrogram -> dB (ref = window max power) ->
/// bilinear resize to 224x224 -> linear [db_floor,0] -> [0,1] -> mean/std
/// standardization. No cropping anywhere; band edges are preserved.
AuralClip build_aural_clip(const AudioWindow& window, const MelSpectrogramParams& params,
                           const AudioStandardization& standardization = {});

/// Cuts the clip's window out of a decoded performance, resampling to the
/// analysis rate when needed. Window length = round(duration * rate).
AudioWindow extract_window(const std::vector<double>& samples, long sample_rate,
                           const ClipSpec& clip, double fps, long target_rate);

} // namespace pianoskill
