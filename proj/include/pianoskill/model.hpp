#pragma once

#include <optional>
#include <set>
#include <string>

#include <torch/torch.h>

#include "pianoskill/types.hpp"

namespace pianoskill {

enum class Modality { Video, Audio, MMDL };
enum class BranchId { V, A, M };

std::string to_string(Modality m);
Modality modality_from_string(const std::string& s);

/// Branches whose losses are active under a modality setting: video -> {V},
/// audio -> {A}, mmdl -> {V, A, M}.
std::set<BranchId> active_branches(Modality m);

/// How the scalar regressed level is produced from a branch head.
enum class RegressionHead { Expectation, Scalar };

struct ModelConfig {
    double width_factor = 1.0; // multiplies every hidden channel count
    RegressionHead regression_head = RegressionHead::Expectation;

    int scaled(int channels) const;
    void validate() const;
};

/// Softmax expectation over the class values 1..10; always in (1, 10).
torch::Tensor predicted_level_expectation(const torch::Tensor& logits);

/// Elementwise mean over exactly 10 clip feature vectors, accumulated in
/// double so the result is permutation-stable. Accepts (10, F) or (S, 10, F).
torch::Tensor aggregate_clips(const torch::Tensor& clip_features);

struct BranchOutputs {
    torch::Tensor feature;         // (S, proj_dim) projected sample feature
    torch::Tensor logits;          // (S, 10)
    torch::Tensor predicted_level; // (S,)
};

struct ModelOutputs {
    std::optional<BranchOutputs> v;
    std::optional<BranchOutputs> a;
    std::optional<BranchOutputs> m;

    const BranchOutputs& branch(BranchId id) const;
    bool has(BranchId id) const;
};

/// Five 3x3x3 conv stages (C64, C128, C256, C256, C256 at width 1.0), each
/// ReLU + max-pooled; pooling factors (1,2,2),(2,2,2),(2,2,2),(2,2,2),(2,1,1)
/// take 16x112x112 to 1x7x7 and a global spatial average yields the clip
/// feature.
class VisualBackboneImpl : public torch::nn::Module {
public:
    explicit VisualBackboneImpl(const ModelConfig& config);

    torch::Tensor forward(const torch::Tensor& clips); // (B,3,16,112,112)->(B,F)
    int feature_dim() const { return feature_dim_; }

private:
    torch::nn::Conv3d conv1_{nullptr}, conv2_{nullptr}, conv3_{nullptr},
        conv4_{nullptr}, conv5_{nullptr};
    int feature_dim_ = 0;
};
TORCH_MODULE(VisualBackbone);

/// Standard 18-layer residual network with a single-channel stem; global
/// average pooling yields the clip feature (512-d at width 1.0).
class AuralBackboneImpl : public torch::nn::Module {
public:
    explicit AuralBackboneImpl(const ModelConfig& config);

    torch::Tensor forward(const torch::Tensor& clips); // (B,1,224,224)->(B,F)
    int feature_dim() const { return feature_dim_; }

private:
    torch::nn::Conv2d conv1_{nullptr};
    torch::nn::BatchNorm2d bn1_{nullptr};
    torch::nn::Sequential layer1_, layer2_, layer3_, layer4_;
    int feature_dim_ = 0;
};
TORCH_MODULE(AuralBackbone);

/// Linear -> ReLU projection to 128 (width-scaled) plus the 10-class
/// classifier and the branch's regressed level.
class ProjectionHeadImpl : public torch::nn::Module {
public:
    ProjectionHeadImpl(int in_dim, const ModelConfig& config);

    BranchOutputs forward(const torch::Tensor& sample_feature);
    int in_dim() const { return in_dim_; }

private:
    torch::nn::Linear project_{nullptr}, classify_{nullptr}, scalar_{nullptr};
    RegressionHead regression_head_ = RegressionHead::Expectation;
    int in_dim_ = 0;
};
TORCH_MODULE(ProjectionHead);

/// The three-branch network: per-clip backbones, averaging aggregation,
/// per-branch heads, and a fusion branch fed gradient-stopped copies of the
/// aggregated features so no multimodal loss reaches the backbones.
class SkillModelImpl : public torch::nn::Module {
public:
    explicit SkillModelImpl(const ModelConfig& config);

    /// visual_clips: (S,10,3,16,112,112); aural_clips: (S,10,1,224,224).
    /// Under Video/Audio only the corresponding tensor is consulted and the
    /// other branches are absent from the outputs.
    ModelOutputs forward_batch(const torch::Tensor& visual_clips,
                               const torch::Tensor& aural_clips, Modality modality);

    /// Single sample: (10,3,16,112,112) + (10,1,224,224).
    ModelOutputs forward_sample(const torch::Tensor& visual_clips,
                                const torch::Tensor& aural_clips, Modality modality);

    /// Aggregated sample feature (V: 256-d, A: 512-d, M: 768-d at width 1)
    /// through the branch head.
    BranchOutputs project_and_classify(const torch::Tensor& feature, BranchId branch);

    /// Gradient-stopped concat (video || audio) through the M head.
    BranchOutputs fuse(const torch::Tensor& video_feature,
                       const torch::Tensor& audio_feature);

    const ModelConfig& config() const { return config_; }
    VisualBackbone visual_backbone() { return visual_; }
    AuralBackbone aural_backbone() { return aural_; }

private:
    ModelConfig config_;
    VisualBackbone visual_{nullptr};
    AuralBackbone aural_{nullptr};
    ProjectionHead head_v_{nullptr}, head_a_{nullptr}, head_m_{nullptr};
};
TORCH_MODULE(SkillModel);

/// Initializes the visual backbone from an action-recognition checkpoint
/// (keys "visual.*" of this project's checkpoint format).
void load_visual_pretrained(SkillModel& model, const std::string& path);

/// Initializes the aural backbone from an image-classification checkpoint.
/// A 3-channel stem ("aural.conv1.weight" with in-dim 3) is adapted to the
/// single-channel stem by summing across input channels.
void load_aural_pretrained(SkillModel& model, const std::string& path);

} // namespace pianoskill
