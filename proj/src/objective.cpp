#include "pianoskill/objective.hpp"

#include "pianoskill/error.hpp"

namespace pianoskill {

void LossWeights::validate() const {
    for (const double w : {alpha1, alpha2, beta1, beta2, gamma1, gamma2})
        if (w < 0.0) throw ValidationError("loss weights must be non-negative");
}

namespace {

void check_targets(const torch::Tensor& targets) {
    if (targets.dim() != 1 || targets.scalar_type() != torch::kInt64)
        throw ValidationError("targets must be a 1-D int64 tensor of levels");
    if ((targets < kMinLevel).any().item<bool>() ||
        (targets > kMaxLevel).any().item<bool>())
        throw ValidationError("target level outside range 1-10");
}

} // namespace

torch::Tensor cross_entropy(const torch::Tensor& logits, const torch::Tensor& targets) {
    check_targets(targets);
    if (logits.dim() != 2 || logits.size(1) != kNumLevels ||
        logits.size(0) != targets.size(0))
        throw ValidationError("cross_entropy expects (S, 10) logits matching targets");
    const auto log_probs = torch::log_softmax(logits, 1);
    const auto picked = log_probs.gather(1, (targets - 1).unsqueeze(1)).squeeze(1);
    return -picked.mean();
}

double cross_entropy(const torch::Tensor& logits, PlayerLevel target) {
    const auto t = torch::tensor({static_cast<std::int64_t>(
                       PlayerLevel::checked(target.value).value)});
    return cross_entropy(logits.view({1, kNumLevels}).to(torch::kDouble), t)
        .item<double>();
}

torch::Tensor reg_distance(const torch::Tensor& predicted_level,
                           const torch::Tensor& targets) {
    check_targets(targets);
    if (predicted_level.dim() != 1 || predicted_level.size(0) != targets.size(0))
        throw ValidationError("reg_distance expects (S,) predictions matching targets");
    const auto diff = predicted_level - targets.to(predicted_level.scalar_type());
    return (diff.abs() + diff.pow(2)).mean();
}

double reg_distance(double predicted_level, PlayerLevel target) {
    PlayerLevel::checked(target.value);
    const double d = predicted_level - target.value;
    return std::fabs(d) + d * d;
}

LossBreakdown total_loss(const ModelOutputs& outputs, const torch::Tensor& targets,
                         const LossWeights& weights, const std::set<BranchId>& active) {
    weights.validate();
    check_targets(targets);

    torch::Dtype dtype = torch::kFloat32;
    for (const BranchId id : active) {
        if (!outputs.has(id))
            throw ValidationError("missing output for active branch");
        dtype = outputs.branch(id).logits.scalar_type();
    }
    const auto zero = torch::zeros({}, torch::dtype(dtype));

    LossBreakdown b;
    b.ce_v = b.reg_v = b.ce_a = b.reg_a = b.ce_m = b.reg_m = zero;
    auto fill = [&](BranchId id, torch::Tensor& ce, torch::Tensor& reg) {
        if (!active.count(id)) return;
        const auto& branch = outputs.branch(id);
        ce = cross_entropy(branch.logits, targets);
        reg = reg_distance(branch.predicted_level, targets);
    };
    fill(BranchId::V, b.ce_v, b.reg_v);
    fill(BranchId::A, b.ce_a, b.reg_a);
    fill(BranchId::M, b.ce_m, b.reg_m);

    b.total = weights.alpha1 * b.ce_v + weights.alpha2 * b.reg_v + weights.beta1 * b.ce_a +
              weights.beta2 * b.reg_a + weights.gamma1 * b.ce_m + weights.gamma2 * b.reg_m;
    return b;
}

LossBreakdown::Values LossBreakdown::values() const {
    Values v;
    auto get = [](const torch::Tensor& t) {
        return t.defined() ? t.detach().item<double>() : 0.0;
    };
    v.ce_v = get(ce_v);
    v.reg_v = get(reg_v);
    v.ce_a = get(ce_a);
    v.reg_a = get(reg_a);
    v.ce_m = get(ce_m);
    v.reg_m = get(reg_m);
    v.total = get(total);
    return v;
}

} // namespace pianoskill
