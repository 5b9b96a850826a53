#include "hrl/harness/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "hrl/errors.hpp"

namespace hrl::harness {

namespace {

constexpr char kMagic[8] = {'H', 'R', 'L', 'C', 'K', 'P', 'T', '\0'};
constexpr std::uint32_t kMaxCount = 1U << 24;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int k = 0; k < 4; ++k) {
      out_.push_back(static_cast<char>((v >> (8 * k)) & 0xffU));
    }
  }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int k = 0; k < 8; ++k) {
      out_.push_back(static_cast<char>((bits >> (8 * k)) & 0xffU));
    }
  }
  void bytes(const std::string& s) { out_ += s; }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& in) : in_(in) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in_[pos_++])) << (8 * k);
    }
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_++])) << (8 * k);
    }
    return std::bit_cast<double>(bits);
  }
  std::string bytes(std::size_t n) {
    need(n);
    std::string s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t count(const char* what) {
    const std::uint32_t n = u32();
    if (n > kMaxCount) {
      throw InputError(std::string("checkpoint: implausible ") + what + " count");
    }
    return n;
  }
  [[nodiscard]] bool at_end() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) {
      throw InputError("checkpoint: truncated file");
    }
  }
  const std::string& in_;
  std::size_t pos_ = 0;
};

}  // namespace

const nn::NetworkParameters& Checkpoint::get(const std::string& name) const {
  for (const auto& [key, params] : networks) {
    if (key == name) {
      return params;
    }
  }
  throw InputError("checkpoint has no network named '" + name + "'");
}

bool Checkpoint::contains(const std::string& name) const {
  for (const auto& entry : networks) {
    if (entry.first == name) {
      return true;
    }
  }
  return false;
}

std::string encode_checkpoint(const Checkpoint& checkpoint) {
  Writer w;
  w.bytes(std::string(kMagic, sizeof(kMagic)));
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(checkpoint.networks.size()));
  for (const auto& [name, params] : checkpoint.networks) {
    w.u32(static_cast<std::uint32_t>(name.size()));
    w.bytes(name);
    w.u32(static_cast<std::uint32_t>(params.layers.size()));
    for (const auto& layer : params.layers) {
      w.u32(static_cast<std::uint32_t>(layer.weight.cols()));
      w.u32(static_cast<std::uint32_t>(layer.weight.rows()));
      w.u8(static_cast<std::uint8_t>(layer.activation));
    }
    w.u32(static_cast<std::uint32_t>(params.log_std.size()));
  }
  for (const auto& [name, params] : checkpoint.networks) {
    for (const auto& layer : params.layers) {
      for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
        for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
          w.f64(layer.weight(r, c));
        }
      }
      for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
        w.f64(layer.bias[r]);
      }
    }
    for (Eigen::Index k = 0; k < params.log_std.size(); ++k) {
      w.f64(params.log_std[k]);
    }
  }
  return w.take();
}

Checkpoint decode_checkpoint(const std::string& bytes) {
  Reader r(bytes);
  if (r.bytes(sizeof(kMagic)) != std::string(kMagic, sizeof(kMagic))) {
    throw InputError("checkpoint: bad magic string");
  }
  if (const auto version = r.u32(); version != kCheckpointVersion) {
    throw InputError("checkpoint: unsupported version " + std::to_string(version));
  }
  Checkpoint ckpt;
  const std::uint32_t count = r.count("network");
  for (std::uint32_t n = 0; n < count; ++n) {
    std::string name = r.bytes(r.count("name length"));
    nn::NetworkParameters params;
    const std::uint32_t layers = r.count("layer");
    std::vector<nn::LayerSpec> specs;
    for (std::uint32_t k = 0; k < layers; ++k) {
      nn::LayerSpec spec;
      spec.input_width = static_cast<int>(r.count("width"));
      spec.output_width = static_cast<int>(r.count("width"));
      const std::uint8_t act = r.u8();
      if (act > static_cast<std::uint8_t>(nn::Activation::Identity)) {
        throw InputError("checkpoint: unknown activation code");
      }
      spec.activation = static_cast<nn::Activation>(act);
      specs.push_back(spec);
    }
    try {
      nn::validate_specs(specs);
    } catch (const ConfigurationError& e) {
      throw InputError(std::string("checkpoint: inconsistent layer table: ") + e.what());
    }
    for (const auto& spec : specs) {
      params.layers.push_back({Eigen::MatrixXd(spec.output_width, spec.input_width),
                               Eigen::VectorXd(spec.output_width), spec.activation});
    }
    params.log_std.resize(r.count("log_std"));
    ckpt.networks.emplace_back(std::move(name), std::move(params));
  }
  for (auto& [name, params] : ckpt.networks) {
    for (auto& layer : params.layers) {
      for (Eigen::Index row = 0; row < layer.weight.rows(); ++row) {
        for (Eigen::Index col = 0; col < layer.weight.cols(); ++col) {
          layer.weight(row, col) = r.f64();
        }
      }
      for (Eigen::Index k = 0; k < layer.bias.size(); ++k) {
        layer.bias[k] = r.f64();
      }
    }
    for (Eigen::Index k = 0; k < params.log_std.size(); ++k) {
      params.log_std[k] = r.f64();
    }
    if (!params.all_finite()) {
      throw InputError("checkpoint: network '" + name + "' holds non-finite values");
    }
  }
  if (!r.at_end()) {
    throw InputError("checkpoint: trailing bytes after the parameter block");
  }
  return ckpt;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw InputError("cannot write checkpoint '" + path.string() + "'");
  }
  const std::string bytes = encode_checkpoint(checkpoint);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw InputError("failed writing checkpoint '" + path.string() + "'");
  }
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open checkpoint '" + path.string() + "'");
  }
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_checkpoint(bytes);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace hrl::harness
