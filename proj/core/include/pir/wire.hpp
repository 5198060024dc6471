#ifndef PIR_WIRE_HPP
#define PIR_WIRE_HPP

#include <cstdint>
#include <vector>

namespace pir::wire {

/* Binary framing shared by every transport. All integers are big-endian.
 *
 *   offset  size  field
 *   0       2     magic 0x50 0x52
 *   2       1     version, currently 1
 *   3       1     kind (1 QUERY, 2 ANSWER, 3 STORE, 4 ERROR)
 *   4       2     node index, 1-based
 *   6       4     payload length in bytes
 *   10      ...   payload
 *
 * payload:
 *   2 bytes        vector count
 *   per vector:
 *     4 bytes      element count
 *     4 bytes each field-element residues
 */

inline constexpr std::uint8_t kMagic0 = 0x50;
inline constexpr std::uint8_t kMagic1 = 0x52;
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 10;

enum class Kind : std::uint8_t { query = 1, answer = 2, store = 3, error = 4 };

// Error payloads carry a single one-element vector with one of these codes.
enum class ErrorCode : std::uint32_t {
  malformed = 1,
  modulus_mismatch = 2,
  dimension_mismatch = 3,
  no_content = 4,
  unexpected_kind = 5,
  wrong_node = 6,
};

struct Frame {
  Kind kind = Kind::error;
  std::uint16_t node = 0;  // 1-based
  std::vector<std::vector<std::uint32_t>> vectors;

  bool operator==(const Frame& o) const = default;
};

std::vector<std::uint8_t> encode(const Frame& frame);

// Throws WireError on bad magic/version/kind or counts that disagree with
// the declared payload length.
Frame decode(const std::vector<std::uint8_t>& bytes);

// Payload length declared in a complete header.
std::size_t payload_length(const std::uint8_t* header);

Frame make_error(std::uint16_t node, ErrorCode code);

}  // namespace pir::wire

#endif  // PIR_WIRE_HPP
