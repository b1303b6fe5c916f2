#pragma once

// Channel tensor export.
//
// CSV: header "n,m,k,re,im", one row per entry, 1-based n and m, 0-based k.
//
// Binary ("NFCH"), all little-endian:
//   bytes 0..3   magic "NFCH"
//   u32          format version (1)
//   u32 x 3      N, M, K
//   f64 pairs    re, im for every entry in [n][m][k] row-major order

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nfisac/channel.hpp"

namespace nfisac {

inline constexpr std::uint32_t kTensorFormatVersion = 1;

struct TensorDump {
  std::uint32_t antennas = 0;
  std::uint32_t subcarriers = 0;
  std::uint32_t symbols = 0;
  std::vector<cplx> data;
};

void write_tensor_csv(const ChannelTensor& tensor, std::ostream& out);
void write_tensor_binary(const ChannelTensor& tensor, std::ostream& out);
/// Throws std::runtime_error on a bad magic, unknown version, or truncation.
TensorDump read_tensor_binary(std::istream& in);

}  // namespace nfisac
