#include "nfisac/tensor_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "nfisac/csv.hpp"

namespace nfisac {
namespace {

constexpr std::array<char, 4> kMagic{'N', 'F', 'C', 'H'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(b, 8);
}

std::uint64_t get_le(std::istream& in, int bytes) {
  unsigned char b[8] = {};
  if (!in.read(reinterpret_cast<char*>(b), bytes)) throw std::runtime_error("NFCH: truncated stream");
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint32_t checked_dim(std::size_t v) {
  if (v > 0xffffffffu) throw std::runtime_error("NFCH: dimension exceeds u32");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

void write_tensor_csv(const ChannelTensor& tensor, std::ostream& out) {
  out << "n,m,k,re,im\n";
  for (std::size_t n = 0; n < tensor.antennas(); ++n)
    for (std::size_t m = 0; m < tensor.subcarriers(); ++m)
      for (std::size_t k = 0; k < tensor.symbols(); ++k) {
        const cplx v = tensor.at(n, m, k);
        out << (CsvRow() << n + 1 << m + 1 << k << v.real() << v.imag()).str();
      }
}

void write_tensor_binary(const ChannelTensor& tensor, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kTensorFormatVersion);
  put_u32(out, checked_dim(tensor.antennas()));
  put_u32(out, checked_dim(tensor.subcarriers()));
  put_u32(out, checked_dim(tensor.symbols()));
  for (const cplx& v : tensor.data()) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
}

TensorDump read_tensor_binary(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size())) throw std::runtime_error("NFCH: truncated stream");
  if (magic != kMagic) throw std::runtime_error("NFCH: bad magic");
  const auto version = static_cast<std::uint32_t>(get_le(in, 4));
  if (version != kTensorFormatVersion) throw std::runtime_error("NFCH: unsupported version");
  TensorDump dump;
  dump.antennas = static_cast<std::uint32_t>(get_le(in, 4));
  dump.subcarriers = static_cast<std::uint32_t>(get_le(in, 4));
  dump.symbols = static_cast<std::uint32_t>(get_le(in, 4));
  const std::size_t count =
      static_cast<std::size_t>(dump.antennas) * dump.subcarriers * dump.symbols;
  dump.data.resize(count);
  for (cplx& v : dump.data) {
    const double re = std::bit_cast<double>(get_le(in, 8));
    const double im = std::bit_cast<double>(get_le(in, 8));
    v = {re, im};
  }
  return dump;
}

}  // namespace nfisac
