#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace congest {

/// Number of bits needed to write every value in [0, max_value]; at least 1.
constexpr std::size_t bits_for(std::uint64_t max_value) {
  return max_value == 0 ? 1 : static_cast<std::size_t>(std::bit_width(max_value));
}

/// A CONGEST message: an opaque bit string of at most kMaxBits bits.
///
/// Payloads are built with MessageWriter and decoded with MessageReader as a
/// sequence of fixed-width unsigned fields; bit_size() is the exact number of
/// bits written, which is what the engine charges against the bandwidth.
class Message {
 public:
  static constexpr std::size_t kMaxBits = 128;

  Message() = default;

  std::size_t bit_size() const { return bit_size_; }

  /// Payload bytes, little-endian bit order; only the first ceil(bit_size/8)
  /// bytes are meaningful.
  std::array<std::uint8_t, kMaxBits / 8> bytes() const {
    std::array<std::uint8_t, kMaxBits / 8> out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
    return out;
  }

  friend bool operator==(const Message&, const Message&) = default;

 private:
  friend class MessageWriter;
  friend class MessageReader;

  std::array<std::uint64_t, 2> words_{};
  std::uint32_t bit_size_ = 0;
};

class MessageWriter {
 public:
  /// Appends `value` as a field of `width` bits (1..64).
  MessageWriter& put(std::uint64_t value, std::size_t width) {
    if (width == 0 || width > 64) throw std::invalid_argument("message field width must be in [1, 64]");
    if (width < 64 && (value >> width) != 0) throw std::invalid_argument("message field value does not fit its width");
    if (msg_.bit_size_ + width > Message::kMaxBits) throw std::length_error("message exceeds maximum payload size");
    const std::size_t pos = msg_.bit_size_;
    const std::size_t word = pos / 64;
    const std::size_t offset = pos % 64;
    msg_.words_[word] |= value << offset;
    if (offset != 0 && offset + width > 64) msg_.words_[word + 1] |= value >> (64 - offset);
    msg_.bit_size_ += static_cast<std::uint32_t>(width);
    return *this;
  }

  MessageWriter& put_flag(bool flag) { return put(flag ? 1 : 0, 1); }

  Message finish() const { return msg_; }

 private:
  Message msg_;
};

class MessageReader {
 public:
  explicit MessageReader(const Message& msg) : msg_(msg) {}

  std::uint64_t get(std::size_t width) {
    if (width == 0 || width > 64) throw std::invalid_argument("message field width must be in [1, 64]");
    if (pos_ + width > msg_.bit_size_) throw std::out_of_range("read past end of message");
    const std::size_t word = pos_ / 64;
    const std::size_t offset = pos_ % 64;
    std::uint64_t value = msg_.words_[word] >> offset;
    if (offset != 0 && offset + width > 64) value |= msg_.words_[word + 1] << (64 - offset);
    if (width < 64) value &= (std::uint64_t{1} << width) - 1;
    pos_ += width;
    return value;
  }

  bool get_flag() { return get(1) != 0; }

  std::size_t remaining() const { return msg_.bit_size_ - pos_; }

 private:
  const Message& msg_;
  std::size_t pos_ = 0;
};

}  // namespace congest
