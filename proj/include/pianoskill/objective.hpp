#pragma once

#include <set>

#include <torch/torch.h>

#include "pianoskill/model.hpp"
#include "pianoskill/types.hpp"

namespace pianoskill {

/// The six objective coefficients; defaults follow the reference setting
/// (classification terms 1, regression terms 0.1).
struct LossWeights {
    double alpha1 = 1.0; // visual CE
    double alpha2 = 0.1; // visual Reg
    double beta1 = 1.0;  // aural CE
    double beta2 = 0.1;  // aural Reg
    double gamma1 = 1.0; // multimodal CE
    double gamma2 = 0.1; // multimodal Reg

    void validate() const;
};

/// The six loss terms and the weighted total; inactive branches contribute
/// exactly zero. Tensors are 0-dim and share the logits' dtype.
struct LossBreakdown {
    torch::Tensor ce_v, reg_v, ce_a, reg_a, ce_m, reg_m;
    torch::Tensor total;

    struct Values {
        double ce_v = 0, reg_v = 0, ce_a = 0, reg_a = 0, ce_m = 0, reg_m = 0,
               total = 0;
    };
    Values values() const;
};

/// -log softmax(logits)[target]; batched mean over (S, 10) logits and (S,)
/// integer levels in 1..10.
torch::Tensor cross_entropy(const torch::Tensor& logits, const torch::Tensor& targets);
double cross_entropy(const torch::Tensor& logits, PlayerLevel target);

/// |p - t| + (p - t)^2, mean over the batch.
torch::Tensor reg_distance(const torch::Tensor& predicted_level,
                           const torch::Tensor& targets);
double reg_distance(double predicted_level, PlayerLevel target);

/// Weighted sum over the active branches, in the fixed summation order
/// a1*ce_v + a2*reg_v + b1*ce_a + b2*reg_a + g1*ce_m + g2*reg_m.
LossBreakdown total_loss(const ModelOutputs& outputs, const torch::Tensor& targets,
                         const LossWeights& weights, const std::set<BranchId>& active);

} // namespace pianoskill
