// Copyright 2026 The gpnn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include <zlib.h>

#include "gpnn/error.hpp"
#include "gpnn/model.hpp"

namespace gpnn {
namespace {

constexpr char kMagic[8] = {'G', 'P', 'N', 'N', 'M', 'O', 'D', 'L'};

class Writer {
 public:
  void bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    buffer_.insert(buffer_.end(), p, p + size);
  }
  void u8(std::uint8_t v) { buffer_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buffer_.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buffer_.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void f64s(const double* v, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) f64(v[i]);
  }
  std::vector<unsigned char>& buffer() { return buffer_; }

 private:
  std::vector<unsigned char> buffer_;
};

class Reader {
 public:
  Reader(const std::vector<unsigned char>& buffer, std::size_t end, std::string path)
      : buffer_(buffer), end_(end), path_(std::move(path)) {}

  void need(std::size_t size) const {
    if (size > end_ - pos_) throw CorruptFile(path_ + ": truncated model file");
  }
  std::uint8_t u8() {
    need(1);
    return buffer_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buffer_[pos_++]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buffer_[pos_++]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  void f64s(double* out, std::uint64_t count) {
    if (count > (end_ - pos_) / 8) throw CorruptFile(path_ + ": truncated model file");
    for (std::uint64_t i = 0; i < count; ++i) out[i] = f64();
  }
  std::size_t position() const { return pos_; }

 private:
  const std::vector<unsigned char>& buffer_;
  std::size_t end_;
  std::size_t pos_ = 0;
  std::string path_;
};

std::uint32_t checksum(const unsigned char* data, std::size_t size) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  while (size > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(size, 1u << 30));
    crc = crc32(crc, data, chunk);
    data += chunk;
    size -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

std::uint32_t kernel_code(KernelFamily k) { return static_cast<std::uint32_t>(k); }

KernelFamily kernel_from_code(std::uint32_t code, const std::string& path) {
  switch (code) {
    case 0:
      return KernelFamily::kRbf;
    case 1:
      return KernelFamily::kExponential;
    case 2:
      return KernelFamily::kMatern32;
    default:
      throw CorruptFile(path + ": unknown kernel code " + std::to_string(code));
  }
}

void write_sidecar(const GpnnModel& model, const std::string& path) {
  std::ofstream meta(path + ".meta");
  if (!meta) throw FormatError("cannot write " + path + ".meta");
  meta.precision(17);
  meta << "format_version = " << kModelFormatVersion << '\n'
       << "kernel = " << to_string(model.kernel()) << '\n'
       << "n = " << model.size() << '\n'
       << "d = " << model.dim() << '\n'
       << "m = " << model.m() << '\n'
       << "leaf_size = " << model.leaf_size() << '\n'
       << "lengthscale = " << model.theta().lengthscale << '\n'
       << "noise_var = " << model.theta().noise_var << '\n'
       << "signal_var = " << model.theta().signal_var << '\n'
       << "alpha = " << model.alpha() << '\n'
       << "lengthscale_hat = " << model.theta_hat().lengthscale << '\n'
       << "noise_var_hat = " << model.theta_hat().noise_var << '\n'
       << "signal_var_hat = " << model.theta_hat().signal_var << '\n'
       << "mu_y = " << model.whitening().mu_y() << '\n'
       << "sigma_y = " << model.whitening().sigma_y() << '\n';
}

}  // namespace

void save_model(const GpnnModel& model, const std::string& path) {
  const std::size_t n = model.size();
  const std::size_t d = model.dim();
  const WhiteningTransform& w = model.whitening();

  Writer out;
  out.bytes(kMagic, sizeof(kMagic));
  out.u32(kModelFormatVersion);
  out.u32(kernel_code(model.kernel()));
  out.u64(n);
  out.u64(d);
  out.u64(model.m());
  out.u64(model.leaf_size());
  for (const Theta& t : {model.theta(), model.theta_hat()}) {
    out.f64(t.lengthscale);
    out.f64(t.noise_var);
    out.f64(t.signal_var);
  }
  out.f64(model.alpha());
  out.u8(w.ridge_applied() ? 1 : 0);
  out.f64(w.mu_y());
  out.f64(w.sigma_y());
  out.f64s(w.mu_x().data(), d);
  // Eigen default storage is column-major; written as stored.
  out.f64s(w.factor().data(), d * d);
  out.f64s(w.factor_inverse().data(), d * d);
  out.f64s(model.train_x().data(), n * d);  // row-major
  out.f64s(model.train_y().data(), n);
  out.u32(checksum(out.buffer().data(), out.buffer().size()));

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw FormatError("cannot write " + path);
  file.write(reinterpret_cast<const char*>(out.buffer().data()),
             static_cast<std::streamsize>(out.buffer().size()));
  if (!file) throw FormatError("write failed for " + path);
  write_sidecar(model, path);
}

GpnnModel load_model(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw FormatError("cannot open " + path);
  const std::vector<unsigned char> buffer((std::istreambuf_iterator<char>(file)),
                                          std::istreambuf_iterator<char>());

  if (buffer.size() < sizeof(kMagic) + 4 ||
      std::memcmp(buffer.data(), kMagic, sizeof(kMagic)) != 0) {
    throw CorruptFile(path + ": not a gpnn model file");
  }
  Reader header(buffer, buffer.size(), path);
  header.u64();  // magic
  const std::uint32_t version = header.u32();
  if (version != kModelFormatVersion) {
    throw VersionMismatch(path + ": model format version " + std::to_string(version) +
                          " is not supported (expected " + std::to_string(kModelFormatVersion) +
                          ")");
  }
  if (buffer.size() < sizeof(kMagic) + 8) throw CorruptFile(path + ": truncated model file");
  const std::size_t body = buffer.size() - 4;
  std::uint32_t stored = 0;
  for (int i = 0; i < 4; ++i) stored |= static_cast<std::uint32_t>(buffer[body + i]) << (8 * i);
  if (stored != checksum(buffer.data(), body)) {
    throw CorruptFile(path + ": checksum mismatch (file truncated or modified)");
  }

  Reader in(buffer, body, path);
  in.u64();  // magic
  in.u32();  // version
  const KernelFamily kernel = kernel_from_code(in.u32(), path);
  const std::uint64_t n = in.u64();
  const std::uint64_t d = in.u64();
  const std::uint64_t m = in.u64();
  const std::uint64_t leaf_size = in.u64();
  if (n == 0 || d == 0 || d > (1u << 20)) throw CorruptFile(path + ": invalid dimensions");
  Theta thetas[2];
  for (Theta& t : thetas) {
    t.lengthscale = in.f64();
    t.noise_var = in.f64();
    t.signal_var = in.f64();
  }
  const double alpha = in.f64();
  const bool ridge = in.u8() != 0;
  const double mu_y = in.f64();
  const double sigma_y = in.f64();
  const auto di = static_cast<Eigen::Index>(d);
  Vector mu_x(di);
  in.f64s(mu_x.data(), d);
  Matrix factor(di, di);
  in.f64s(factor.data(), d * d);
  Matrix factor_inv(di, di);
  in.f64s(factor_inv.data(), d * d);
  if (n > (body - in.position()) / 8 / (d + 1)) throw CorruptFile(path + ": truncated model file");
  PointSet x(static_cast<Eigen::Index>(n), di);
  in.f64s(x.data(), n * d);
  Vector y(static_cast<Eigen::Index>(n));
  in.f64s(y.data(), n);
  if (in.position() != body) throw CorruptFile(path + ": trailing bytes in model file");

  try {
    return GpnnModel(thetas[0], thetas[1], alpha, kernel, m,
                     WhiteningTransform::from_parts(mu_y, sigma_y, std::move(mu_x), std::move(factor),
                                                    std::move(factor_inv), ridge),
                     std::move(x), std::move(y), leaf_size);
  } catch (const InvalidArgument& e) {
    throw CorruptFile(path + ": " + e.what());
  }
}

}  // namespace gpnn
