#include "pianoskill/model.hpp"

#include <cmath>

#include "pianoskill/checkpoint.hpp"
#include "pianoskill/error.hpp"
#include "pianoskill/sampling.hpp"
#include "pianoskill/vision.hpp"

namespace pianoskill {

std::string to_string(Modality m) {
    switch (m) {
        case Modality::Video: return "video";
        case Modality::Audio: return "audio";
        case Modality::MMDL: return "mmdl";
    }
    return "?";
}

Modality modality_from_string(const std::string& s) {
    if (s == "video") return Modality::Video;
    if (s == "audio") return Modality::Audio;
    if (s == "mmdl") return Modality::MMDL;
    throw ValidationError("unknown modality \"" + s + "\" (expected video|audio|mmdl)");
}

std::set<BranchId> active_branches(Modality m) {
    switch (m) {
        case Modality::Video: return {BranchId::V};
        case Modality::Audio: return {BranchId::A};
        case Modality::MMDL: return {BranchId::V, BranchId::A, BranchId::M};
    }
    return {};
}

int ModelConfig::scaled(int channels) const {
    return std::max(1, static_cast<int>(std::llround(channels * width_factor)));
}

void ModelConfig::validate() const {
    if (width_factor <= 0.0 || width_factor > 1.0)
        throw ValidationError("width_factor must be in (0, 1]");
}

torch::Tensor predicted_level_expectation(const torch::Tensor& logits) {
    if (logits.dim() != 2 || logits.size(1) != kNumLevels)
        throw ValidationError("predicted_level expects (S, 10) logits");
    const auto probs = torch::softmax(logits, 1);
    const auto values = torch::arange(1, kNumLevels + 1, logits.options());
    return (probs * values).sum(1);
}

torch::Tensor aggregate_clips(const torch::Tensor& clip_features) {
    torch::Tensor feats = clip_features;
    const bool single = feats.dim() == 2;
    if (single) feats = feats.unsqueeze(0);
    if (feats.dim() != 3)
        throw ValidationError("aggregate_clips expects (S, 10, F) clip features");
    if (feats.size(1) != kClipsPerSample)
        throw ValidationError("aggregate_clips expects exactly " +
                              std::to_string(kClipsPerSample) + " clips, got " +
                              std::to_string(feats.size(1)));
    auto mean = feats.to(torch::kDouble).mean(1).to(feats.scalar_type());
    return single ? mean.squeeze(0) : mean;
}

const BranchOutputs& ModelOutputs::branch(BranchId id) const {
    const std::optional<BranchOutputs>* slot = nullptr;
    switch (id) {
        case BranchId::V: slot = &v; break;
        case BranchId::A: slot = &a; break;
        case BranchId::M: slot = &m; break;
    }
    if (!slot->has_value())
        throw ValidationError("requested branch output is absent");
    return **slot;
}

bool ModelOutputs::has(BranchId id) const {
    switch (id) {
        case BranchId::V: return v.has_value();
        case BranchId::A: return a.has_value();
        case BranchId::M: return m.has_value();
    }
    return false;
}

// ---------------------------------------------------------------------------
// visual backbone

VisualBackboneImpl::VisualBackboneImpl(const ModelConfig& config) {
    config.validate();
    const int c1 = config.scaled(64);
    const int c2 = config.scaled(128);
    const int c3 = config.scaled(256);
    const int c4 = config.scaled(256);
    const int c5 = config.scaled(256);
    auto opts = [](int in, int out) {
        return torch::nn::Conv3dOptions(in, out, 3).stride(1).padding(1);
    };
    conv1_ = register_module("conv1", torch::nn::Conv3d(opts(3, c1)));
    conv2_ = register_module("conv2", torch::nn::Conv3d(opts(c1, c2)));
    conv3_ = register_module("conv3", torch::nn::Conv3d(opts(c2, c3)));
    conv4_ = register_module("conv4", torch::nn::Conv3d(opts(c3, c4)));
    conv5_ = register_module("conv5", torch::nn::Conv3d(opts(c4, c5)));
    feature_dim_ = c5;
}

torch::Tensor VisualBackboneImpl::forward(const torch::Tensor& clips) {
    if (clips.dim() != 5 || clips.size(1) != 3 || clips.size(2) != kFramesPerClip ||
        clips.size(3) != kVisualSize || clips.size(4) != kVisualSize)
        throw ValidationError("visual backbone expects (B, 3, 16, 112, 112) input");
    // pooling schedule: time survives the first pool and the last pool is
    // temporal-only, so 16x112x112 -> 1x7x7 without fractional sizes
    auto x = torch::relu_(conv1_->forward(clips));
    x = torch::max_pool3d(x, {1, 2, 2});
    x = torch::relu_(conv2_->forward(x));
    x = torch::max_pool3d(x, {2, 2, 2});
    x = torch::relu_(conv3_->forward(x));
    x = torch::max_pool3d(x, {2, 2, 2});
    x = torch::relu_(conv4_->forward(x));
    x = torch::max_pool3d(x, {2, 2, 2});
    x = torch::relu_(conv5_->forward(x));
    x = torch::max_pool3d(x, {2, 1, 1});
    return x.mean({2, 3, 4}); // global spatial average over 1x7x7
}

// ---------------------------------------------------------------------------
// aural backbone (ResNet-18, single-channel stem)

namespace {

class BasicBlockImpl : public torch::nn::Module {
public:
    BasicBlockImpl(int in, int out, int stride) {
        conv1_ = register_module(
            "conv1", torch::nn::Conv2d(
                         torch::nn::Conv2dOptions(in, out, 3).stride(stride).padding(1).bias(false)));
        bn1_ = register_module("bn1", torch::nn::BatchNorm2d(out));
        conv2_ = register_module(
            "conv2", torch::nn::Conv2d(
                         torch::nn::Conv2dOptions(out, out, 3).stride(1).padding(1).bias(false)));
        bn2_ = register_module("bn2", torch::nn::BatchNorm2d(out));
        if (stride != 1 || in != out) {
            downsample_ = torch::nn::Sequential(
                torch::nn::Conv2d(
                    torch::nn::Conv2dOptions(in, out, 1).stride(stride).bias(false)),
                torch::nn::BatchNorm2d(out));
            register_module("downsample", downsample_);
        }
    }

    torch::Tensor forward(const torch::Tensor& input) {
        auto x = torch::relu_(bn1_->forward(conv1_->forward(input)));
        x = bn2_->forward(conv2_->forward(x));
        const auto identity = downsample_ ? downsample_->forward(input) : input;
        return torch::relu_(x + identity);
    }

private:
    torch::nn::Conv2d conv1_{nullptr}, conv2_{nullptr};
    torch::nn::BatchNorm2d bn1_{nullptr}, bn2_{nullptr};
    torch::nn::Sequential downsample_{nullptr};
};
TORCH_MODULE(BasicBlock);

torch::nn::Sequential make_layer(int in, int out, int stride) {
    return torch::nn::Sequential(BasicBlock(in, out, stride), BasicBlock(out, out, 1));
}

} // namespace

AuralBackboneImpl::AuralBackboneImpl(const ModelConfig& config) {
    config.validate();
    const int w = config.scaled(64);
    conv1_ = register_module(
        "conv1", torch::nn::Conv2d(
                     torch::nn::Conv2dOptions(1, w, 7).stride(2).padding(3).bias(false)));
    bn1_ = register_module("bn1", torch::nn::BatchNorm2d(w));
    layer1_ = register_module("layer1", make_layer(w, w, 1));
    layer2_ = register_module("layer2", make_layer(w, config.scaled(128), 2));
    layer3_ = register_module("layer3", make_layer(config.scaled(128), config.scaled(256), 2));
    layer4_ = register_module("layer4", make_layer(config.scaled(256), config.scaled(512), 2));
    feature_dim_ = config.scaled(512);
}

torch::Tensor AuralBackboneImpl::forward(const torch::Tensor& clips) {
    if (clips.dim() != 4 || clips.size(1) != 1 || clips.size(2) != kAuralImageSize ||
        clips.size(3) != kAuralImageSize)
        throw ValidationError("aural backbone expects (B, 1, 224, 224) input");
    auto x = torch::relu_(bn1_->forward(conv1_->forward(clips)));
    x = torch::max_pool2d(x, 3, 2, 1);
    x = layer1_->forward(x);
    x = layer2_->forward(x);
    x = layer3_->forward(x);
    x = layer4_->forward(x);
    return x.mean({2, 3});
}

// ---------------------------------------------------------------------------
// heads and the full model

ProjectionHeadImpl::ProjectionHeadImpl(int in_dim, const ModelConfig& config)
    : regression_head_(config.regression_head), in_dim_(in_dim) {
    const int proj = config.scaled(128);
    project_ = register_module("project", torch::nn::Linear(in_dim, proj));
    classify_ = register_module("classify", torch::nn::Linear(proj, kNumLevels));
    if (regression_head_ == RegressionHead::Scalar)
        scalar_ = register_module("scalar", torch::nn::Linear(proj, 1));
}

BranchOutputs ProjectionHeadImpl::forward(const torch::Tensor& sample_feature) {
    if (sample_feature.dim() != 2 || sample_feature.size(1) != in_dim_)
        throw ValidationError("head expects (S, " + std::to_string(in_dim_) +
                              ") features, got dim " +
                              std::to_string(sample_feature.dim() == 2
                                                 ? sample_feature.size(1)
                                                 : -1));
    BranchOutputs out;
    out.feature = torch::relu(project_->forward(sample_feature));
    out.logits = classify_->forward(out.feature);
    if (regression_head_ == RegressionHead::Scalar) {
        // squashed affine keeps the level inside (1, 10) and differentiable
        const auto raw = scalar_->forward(out.feature).squeeze(1);
        out.predicted_level = 1.0 + 9.0 * torch::sigmoid(raw);
    } else {
        out.predicted_level = predicted_level_expectation(out.logits);
    }
    return out;
}

SkillModelImpl::SkillModelImpl(const ModelConfig& config) : config_(config) {
    config.validate();
    visual_ = register_module("visual", VisualBackbone(config));
    aural_ = register_module("aural", AuralBackbone(config));
    head_v_ = register_module("head_v",
                              ProjectionHead(visual_->feature_dim(), config));
    head_a_ = register_module("head_a", ProjectionHead(aural_->feature_dim(), config));
    head_m_ = register_module(
        "head_m", ProjectionHead(visual_->feature_dim() + aural_->feature_dim(), config));
}

BranchOutputs SkillModelImpl::project_and_classify(const torch::Tensor& feature,
                                                   BranchId branch) {
    switch (branch) {
        case BranchId::V: return head_v_->forward(feature);
        case BranchId::A: return head_a_->forward(feature);
        case BranchId::M: return head_m_->forward(feature);
    }
    throw ValidationError("bad branch");
}

BranchOutputs SkillModelImpl::fuse(const torch::Tensor& video_feature,
                                   const torch::Tensor& audio_feature) {
    if (!video_feature.defined() || !audio_feature.defined())
        throw ValidationError("fuse requires both modality features");
    const auto fused =
        torch::cat({video_feature.detach(), audio_feature.detach()}, 1);
    return head_m_->forward(fused);
}

ModelOutputs SkillModelImpl::forward_batch(const torch::Tensor& visual_clips,
                                           const torch::Tensor& aural_clips,
                                           Modality modality) {
    const bool want_visual = modality != Modality::Audio;
    const bool want_aural = modality != Modality::Video;

    ModelOutputs out;
    torch::Tensor vfeat, afeat;
    if (want_visual) {
        if (!visual_clips.defined())
            throw ValidationError("modality requires visual clips but none given");
        if (visual_clips.dim() != 6 || visual_clips.size(1) != kClipsPerSample)
            throw ValidationError("expected visual clips (S, 10, 3, 16, 112, 112)");
        const auto s = visual_clips.size(0);
        const auto flat = visual_clips.reshape(
            {s * kClipsPerSample, visual_clips.size(2), visual_clips.size(3),
             visual_clips.size(4), visual_clips.size(5)});
        const auto clip_feats =
            visual_->forward(flat).view({s, kClipsPerSample, visual_->feature_dim()});
        vfeat = aggregate_clips(clip_feats);
        out.v = head_v_->forward(vfeat);
    }
    if (want_aural) {
        if (!aural_clips.defined())
            throw ValidationError("modality requires aural clips but none given");
        if (aural_clips.dim() != 5 || aural_clips.size(1) != kClipsPerSample)
            throw ValidationError("expected aural clips (S, 10, 1, 224, 224)");
        const auto s = aural_clips.size(0);
        const auto flat = aural_clips.reshape({s * kClipsPerSample, aural_clips.size(2),
                                               aural_clips.size(3), aural_clips.size(4)});
        const auto clip_feats =
            aural_->forward(flat).view({s, kClipsPerSample, aural_->feature_dim()});
        afeat = aggregate_clips(clip_feats);
        out.a = head_a_->forward(afeat);
    }
    if (modality == Modality::MMDL) out.m = fuse(vfeat, afeat);
    return out;
}

ModelOutputs SkillModelImpl::forward_sample(const torch::Tensor& visual_clips,
                                            const torch::Tensor& aural_clips,
                                            Modality modality) {
    return forward_batch(
        visual_clips.defined() ? visual_clips.unsqueeze(0) : visual_clips,
        aural_clips.defined() ? aural_clips.unsqueeze(0) : aural_clips, modality);
}

// ---------------------------------------------------------------------------
// pretraining hooks

namespace {

void load_prefixed(SkillModel& model, const Checkpoint& ckpt, const std::string& prefix,
                   bool adapt_stem) {
    torch::NoGradGuard no_grad;
    auto params = model->named_parameters();
    auto buffers = model->named_buffers();
    std::size_t loaded = 0;
    for (const auto& [name, tensor] : ckpt.entries) {
        if (name.rfind(prefix, 0) != 0) continue;
        torch::Tensor* dst = params.find(name);
        if (dst == nullptr) dst = buffers.find(name);
        if (dst == nullptr)
            throw ValidationError("checkpoint key \"" + name +
                                  "\" has no matching model parameter");
        torch::Tensor src = tensor;
        if (adapt_stem && name == prefix + "conv1.weight" && src.dim() == 4 &&
            src.size(1) == 3 && dst->size(1) == 1)
            src = src.sum(1, /*keepdim=*/true); // 3->1 channel stem adaptation
        if (!src.sizes().equals(dst->sizes()))
            throw ValidationError("checkpoint key \"" + name + "\" shape mismatch");
        dst->copy_(src.to(dst->scalar_type()));
        ++loaded;
    }
    if (loaded == 0)
        throw ValidationError("checkpoint contains no \"" + prefix + "*\" keys");
}

} // namespace

void load_visual_pretrained(SkillModel& model, const std::string& path) {
    load_prefixed(model, load_checkpoint(path), "visual.", /*adapt_stem=*/false);
}

void load_aural_pretrained(SkillModel& model, const std::string& path) {
    load_prefixed(model, load_checkpoint(path), "aural.", /*adapt_stem=*/true);
}

} // namespace pianoskill
