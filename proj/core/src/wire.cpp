#include "pir/wire.hpp"

#include <string>

#include "pir/errors.hpp"

namespace pir::wire {
namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
         (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

}  // namespace

std::vector<std::uint8_t> encode(const Frame& frame) {
  if (frame.vectors.size() > UINT16_MAX) throw WireError("too many vectors in one frame");
  std::size_t payload = 2;
  for (const auto& v : frame.vectors) {
    if (v.size() > UINT32_MAX) throw WireError("vector too long");
    payload += 4 + 4 * v.size();
  }
  if (payload > UINT32_MAX) throw WireError("payload too long");

  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + payload);
  out.push_back(kMagic0);
  out.push_back(kMagic1);
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(frame.kind));
  put_u16(out, frame.node);
  put_u32(out, static_cast<std::uint32_t>(payload));
  put_u16(out, static_cast<std::uint16_t>(frame.vectors.size()));
  for (const auto& v : frame.vectors) {
    put_u32(out, static_cast<std::uint32_t>(v.size()));
    for (std::uint32_t e : v) put_u32(out, e);
  }
  return out;
}

std::size_t payload_length(const std::uint8_t* header) { return get_u32(header + 6); }

Frame decode(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kHeaderSize) throw WireError("frame shorter than header");
  if (bytes[0] != kMagic0 || bytes[1] != kMagic1) throw WireError("bad magic");
  if (bytes[2] != kVersion) {
    throw WireError("unsupported version " + std::to_string(bytes[2]));
  }
  const std::uint8_t kind = bytes[3];
  if (kind < 1 || kind > 4) throw WireError("unknown frame kind " + std::to_string(kind));

  Frame frame;
  frame.kind = static_cast<Kind>(kind);
  frame.node = get_u16(bytes.data() + 4);
  const std::size_t payload = payload_length(bytes.data());
  if (bytes.size() != kHeaderSize + payload) throw WireError("payload length mismatch");
  if (payload < 2) throw WireError("payload missing vector count");

  std::size_t pos = kHeaderSize;
  const std::uint16_t vector_count = get_u16(bytes.data() + pos);
  pos += 2;
  frame.vectors.resize(vector_count);
  for (auto& v : frame.vectors) {
    if (pos + 4 > bytes.size()) throw WireError("truncated vector header");
    const std::uint32_t element_count = get_u32(bytes.data() + pos);
    pos += 4;
    if (pos + 4 * std::size_t(element_count) > bytes.size()) {
      throw WireError("truncated vector body");
    }
    v.resize(element_count);
    for (std::uint32_t& e : v) {
      e = get_u32(bytes.data() + pos);
      pos += 4;
    }
  }
  if (pos != bytes.size()) throw WireError("trailing bytes after declared vectors");
  return frame;
}

Frame make_error(std::uint16_t node, ErrorCode code) {
  Frame frame;
  frame.kind = Kind::error;
  frame.node = node;
  frame.vectors = {{static_cast<std::uint32_t>(code)}};
  return frame;
}

}  // namespace pir::wire
