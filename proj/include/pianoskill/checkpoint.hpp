#pragma once

#include <string>
#include <utility>
#include <vector>

#include <torch/torch.h>

namespace pianoskill {

/// Ordered map of hierarchical parameter/buffer names to tensors, plus a
/// small JSON metadata document (model configuration).
///
/// File layout (little-endian): magic "PSKLCKPT", u32 version, u32 json
/// length + bytes, u32 entry count, then per entry: u32 name length + bytes,
/// u8 dtype (0=f32, 1=f64, 2=i64), u8 ndim, u64 dims..., raw tensor bytes.
struct Checkpoint {
    std::string meta_json = "{}";
    std::vector<std::pair<std::string, torch::Tensor>> entries;

    const torch::Tensor* find(const std::string& name) const;
};

/// Write-temp-then-rename; a crash never leaves a torn checkpoint behind.
void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

/// Snapshot of every named parameter and buffer of a module.
Checkpoint checkpoint_from_module(const torch::nn::Module& module,
                                  const std::string& meta_json);

/// Copies checkpoint entries into matching parameters/buffers; names and
/// shapes must agree exactly.
void load_into_module(torch::nn::Module& module, const Checkpoint& ckpt);

std::string describe_checkpoint(const Checkpoint& ckpt);

} // namespace pianoskill
