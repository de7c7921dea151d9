#include "pianoskill/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pianoskill/error.hpp"

namespace pianoskill {

namespace {

constexpr char kMagic[8] = {'P', 'S', 'K', 'L', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

std::uint8_t dtype_code(torch::ScalarType t) {
    switch (t) {
        case torch::kFloat32: return 0;
        case torch::kFloat64: return 1;
        case torch::kInt64: return 2;
        default: break;
    }
    throw ValidationError("checkpoint supports f32/f64/i64 tensors only");
}

torch::ScalarType dtype_from_code(std::uint8_t code) {
    switch (code) {
        case 0: return torch::kFloat32;
        case 1: return torch::kFloat64;
        case 2: return torch::kInt64;
        default: break;
    }
    throw ParseError("unknown dtype code in checkpoint");
}

template <typename T>
void write_pod(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw ParseError("truncated checkpoint");
    return v;
}

} // namespace

const torch::Tensor* Checkpoint::find(const std::string& name) const {
    for (const auto& [key, tensor] : entries)
        if (key == name) return &tensor;
    return nullptr;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write checkpoint: " + tmp);
        out.write(kMagic, sizeof(kMagic));
        write_pod<std::uint32_t>(out, kVersion);
        write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(ckpt.meta_json.size()));
        out.write(ckpt.meta_json.data(),
                  static_cast<std::streamsize>(ckpt.meta_json.size()));
        write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(ckpt.entries.size()));
        for (const auto& [name, tensor] : ckpt.entries) {
            write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
            out.write(name.data(), static_cast<std::streamsize>(name.size()));
            const auto t = tensor.contiguous().cpu();
            write_pod<std::uint8_t>(out, dtype_code(t.scalar_type()));
            write_pod<std::uint8_t>(out, static_cast<std::uint8_t>(t.dim()));
            for (int d = 0; d < t.dim(); ++d)
                write_pod<std::uint64_t>(out, static_cast<std::uint64_t>(t.size(d)));
            out.write(static_cast<const char*>(t.const_data_ptr()),
                      static_cast<std::streamsize>(t.numel() * t.element_size()));
        }
        if (!out) throw IoError("failed writing checkpoint: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint: " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw ParseError("not a checkpoint file: " + path);
    const auto version = read_pod<std::uint32_t>(in);
    if (version != kVersion)
        throw ParseError("unsupported checkpoint version " + std::to_string(version));

    Checkpoint ckpt;
    const auto json_len = read_pod<std::uint32_t>(in);
    ckpt.meta_json.resize(json_len);
    in.read(ckpt.meta_json.data(), json_len);
    const auto count = read_pod<std::uint32_t>(in);
    ckpt.entries.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        const auto name_len = read_pod<std::uint32_t>(in);
        std::string name(name_len, '\0');
        in.read(name.data(), name_len);
        const auto dtype = dtype_from_code(read_pod<std::uint8_t>(in));
        const auto ndim = read_pod<std::uint8_t>(in);
        std::vector<std::int64_t> dims(ndim);
        for (auto& d : dims) d = static_cast<std::int64_t>(read_pod<std::uint64_t>(in));
        auto tensor = torch::empty(dims, torch::dtype(dtype));
        in.read(static_cast<char*>(tensor.data_ptr()),
                static_cast<std::streamsize>(tensor.numel() * tensor.element_size()));
        if (!in) throw ParseError("truncated checkpoint tensor in " + path);
        ckpt.entries.emplace_back(std::move(name), std::move(tensor));
    }
    return ckpt;
}

Checkpoint checkpoint_from_module(const torch::nn::Module& module,
                                  const std::string& meta_json) {
    Checkpoint ckpt;
    ckpt.meta_json = meta_json;
    for (const auto& p : module.named_parameters())
        ckpt.entries.emplace_back(p.key(), p.value().detach().clone());
    for (const auto& b : module.named_buffers())
        ckpt.entries.emplace_back(b.key(), b.value().detach().clone());
    return ckpt;
}

void load_into_module(torch::nn::Module& module, const Checkpoint& ckpt) {
    torch::NoGradGuard no_grad;
    auto params = module.named_parameters();
    auto buffers = module.named_buffers();
    std::size_t expected = params.size() + buffers.size();
    if (ckpt.entries.size() != expected)
        throw ValidationError("checkpoint has " + std::to_string(ckpt.entries.size()) +
                              " entries, model needs " + std::to_string(expected));
    for (const auto& [name, tensor] : ckpt.entries) {
        torch::Tensor* dst = params.find(name);
        if (dst == nullptr) dst = buffers.find(name);
        if (dst == nullptr)
            throw ValidationError("checkpoint key \"" + name +
                                  "\" has no matching model state");
        if (!tensor.sizes().equals(dst->sizes()))
            throw ValidationError("checkpoint key \"" + name + "\" shape mismatch");
        dst->copy_(tensor.to(dst->scalar_type()));
    }
}

std::string describe_checkpoint(const Checkpoint& ckpt) {
    std::ostringstream os;
    os << "meta: " << ckpt.meta_json << "\n";
    os << "entries: " << ckpt.entries.size() << "\n";
    for (const auto& [name, tensor] : ckpt.entries) {
        os << "  " << name << "  " << tensor.toString() << " [";
        for (int d = 0; d < tensor.dim(); ++d)
            os << (d ? ", " : "") << tensor.size(d);
        os << "]\n";
    }
    return os.str();
}

} // namespace pianoskill
