// frontend/wav.cc

// Copyright 2026  CJFE Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "frontend/wav.h"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "util/common.h"

namespace cjfe {
namespace {

constexpr int64_t kSphereHeaderBytes = 1024;

std::vector<char> ReadAll(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open audio file '" + path + "'");
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return bytes;
}

uint32_t ReadU32(const std::vector<char> &b, size_t off) {
  uint32_t v;
  std::memcpy(&v, b.data() + off, 4);
  return v;  // RIFF is little-endian; so are the hosts we build on
}

uint16_t ReadU16(const std::vector<char> &b, size_t off) {
  uint16_t v;
  std::memcpy(&v, b.data() + off, 2);
  return v;
}

std::vector<double> DecodePcm16(const char *payload, size_t bytes,
                                bool big_endian, const std::string &path) {
  if (bytes % 2 != 0) {
    throw FormatError("'" + path + "': truncated 16-bit sample data");
  }
  size_t n = bytes / 2;
  std::vector<double> samples(n);
  for (size_t i = 0; i < n; ++i) {
    uint8_t lo = static_cast<uint8_t>(payload[2 * i]);
    uint8_t hi = static_cast<uint8_t>(payload[2 * i + 1]);
    uint16_t u = big_endian ? static_cast<uint16_t>((lo << 8) | hi)
                            : static_cast<uint16_t>((hi << 8) | lo);
    samples[i] = static_cast<int16_t>(u) / 32768.0;
  }
  return samples;
}

AudioBuffer LoadRiff(const std::vector<char> &bytes, const std::string &path) {
  if (bytes.size() < 12 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw FormatError("'" + path + "': not a WAVE file");
  }
  AudioBuffer audio;
  bool have_fmt = false;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    char id[5] = {0};
    std::memcpy(id, bytes.data() + pos, 4);
    uint32_t chunk_size = ReadU32(bytes, pos + 4);
    size_t body = pos + 8;
    if (body + chunk_size > bytes.size()) {
      throw FormatError("'" + path + "': truncated chunk '" + id + "'");
    }
    if (std::strcmp(id, "fmt ") == 0) {
      if (chunk_size < 16) throw FormatError("'" + path + "': short fmt chunk");
      uint16_t format = ReadU16(bytes, body);
      uint16_t channels = ReadU16(bytes, body + 2);
      uint32_t rate = ReadU32(bytes, body + 4);
      uint16_t bits = ReadU16(bytes, body + 14);
      if (format != 1) {
        throw FormatError("'" + path + "': unsupported encoding (WAVE format tag " +
                          std::to_string(format) + "; only PCM is supported)");
      }
      if (channels != 1) {
        throw DataError("'" + path + "': multi-channel input (" +
                        std::to_string(channels) + " channels); expected mono");
      }
      if (bits != 16) {
        throw FormatError("'" + path + "': unsupported encoding (" +
                          std::to_string(bits) + "-bit; only 16-bit PCM)");
      }
      audio.sample_rate = static_cast<int>(rate);
      have_fmt = true;
    } else if (std::strcmp(id, "data") == 0) {
      if (!have_fmt) throw FormatError("'" + path + "': data chunk before fmt");
      audio.samples = DecodePcm16(bytes.data() + body, chunk_size,
                                  /*big_endian=*/false, path);
      return audio;
    }
    pos = body + chunk_size + (chunk_size % 2);  // chunks are word-aligned
  }
  throw FormatError("'" + path + "': no data chunk found");
}

AudioBuffer LoadSphere(const std::vector<char> &bytes, const std::string &path) {
  if (static_cast<int64_t>(bytes.size()) <= kSphereHeaderBytes) {
    throw FormatError("'" + path + "': truncated SPHERE file");
  }
  std::string header(bytes.data(), kSphereHeaderBytes);
  auto field = [&](const std::string &name) -> std::string {
    size_t at = header.find(name + " ");
    if (at == std::string::npos) return "";
    std::istringstream is(header.substr(at + name.size()));
    std::string type, value;
    is >> type >> value;
    return value;
  };
  AudioBuffer audio;
  std::string rate = field("sample_rate");
  audio.sample_rate = rate.empty() ? 16000 : std::stoi(rate);
  std::string channels = field("channel_count");
  if (!channels.empty() && channels != "1") {
    throw DataError("'" + path + "': multi-channel input (" + channels +
                    " channels); expected mono");
  }
  std::string nbytes = field("sample_n_bytes");
  if (!nbytes.empty() && nbytes != "2") {
    throw FormatError("'" + path + "': unsupported encoding (" + nbytes +
                      " bytes/sample; only 16-bit PCM)");
  }
  std::string coding = field("sample_coding");
  if (!coding.empty() && coding.find("pcm") == std::string::npos) {
    throw FormatError("'" + path + "': unsupported encoding (sample_coding " +
                      coding + ")");
  }
  bool big_endian = field("sample_byte_format") == "10";
  audio.samples = DecodePcm16(bytes.data() + kSphereHeaderBytes,
                              bytes.size() - kSphereHeaderBytes, big_endian, path);
  return audio;
}

}  // namespace

AudioBuffer LoadWav(const std::string &path) {
  std::vector<char> bytes = ReadAll(path);
  if (bytes.size() >= 7 && std::memcmp(bytes.data(), "NIST_1A", 7) == 0) {
    return LoadSphere(bytes, path);
  }
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "RIFF", 4) == 0) {
    return LoadRiff(bytes, path);
  }
  throw FormatError("'" + path + "': unsupported encoding (neither RIFF nor NIST_1A)");
}

}  // namespace cjfe
