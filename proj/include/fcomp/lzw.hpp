// Variable-width LZW over an m-ary alphabet.
//
// The dictionary starts with the m single symbols and never resets.  The
// k-th emitted code (k = 0, 1, ...) is written with ceil(log2(m + k)) bits,
// which is the dictionary size the encoder holds at that moment; the
// decoder, one entry behind, can still reproduce it.  No end-of-stream
// code: the block header carries the source length.
//
// Block file: 8-byte big-endian source length, 2-byte big-endian alphabet
// size, then the code bits MSB-first, zero-padded to a byte boundary.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <iterator>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fcomp {

class BitWriter {
 public:
  void put(std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) put_bit((value >> i) & 1u);
  }
  void put_bit(unsigned bit) {
    if (count_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (count_ % 8));
    ++count_;
  }
  std::size_t bit_count() const { return count_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t count_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t get(unsigned width) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | get_bit();
    return v;
  }
  unsigned get_bit() {
    if (pos_ >= bytes_.size() * 8) throw std::runtime_error("bit stream truncated");
    const unsigned b = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
    ++pos_;
    return b;
  }
  std::size_t position() const { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

/// Dictionary bookkeeping shared by encoder and decoder: entry k is the
/// string of entry prefix[k] followed by symbol last[k].
class LzwCodebook {
 public:
  explicit LzwCodebook(std::uint32_t alphabet_size) : alphabet_size_(alphabet_size) {
    if (alphabet_size == 0) throw std::invalid_argument("LZW alphabet must be nonempty");
    prefix_.reserve(1024);
    for (std::uint32_t s = 0; s < alphabet_size; ++s) {
      prefix_.push_back(kNone);
      last_.push_back(s);
      first_.push_back(s);
    }
  }

  std::uint32_t alphabet_size() const { return alphabet_size_; }
  std::size_t size() const { return prefix_.size(); }

  /// Code width for a dictionary of `entries` entries.
  static unsigned width_for(std::size_t entries) {
    return entries <= 1 ? 0u : static_cast<unsigned>(std::bit_width(entries - 1));
  }

  std::uint32_t add(std::uint32_t prefix, std::uint32_t symbol) {
    prefix_.push_back(prefix);
    last_.push_back(symbol);
    first_.push_back(first_[prefix]);
    return static_cast<std::uint32_t>(prefix_.size() - 1);
  }

  std::uint32_t first_symbol(std::uint32_t code) const { return first_[code]; }

  void append_string(std::uint32_t code, std::vector<std::uint32_t>& out) const {
    const std::size_t start = out.size();
    for (std::uint32_t c = code; c != kNone; c = prefix_[c]) out.push_back(last_[c]);
    std::reverse(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
  }

 private:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;
  std::uint32_t alphabet_size_;
  std::vector<std::uint32_t> prefix_, last_, first_;
};

struct EncodedBlock {
  std::vector<std::uint8_t> bytes;
  std::size_t bit_count = 0;
  std::uint64_t n = 0;
  std::uint32_t alphabet_size = 0;

  double rate() const { return n == 0 ? 0.0 : static_cast<double>(bit_count) / static_cast<double>(n); }
};

inline EncodedBlock lzw_encode(std::span<const std::uint32_t> symbols, std::uint32_t alphabet_size) {
  if (alphabet_size == 0 || alphabet_size > 0xFFFFu)
    throw std::invalid_argument("LZW alphabet size must be in [1, 65535]");
  if (symbols.empty()) throw std::invalid_argument("lzw_encode: empty sequence");

  LzwCodebook book(alphabet_size);
  std::unordered_map<std::uint64_t, std::uint32_t> child;
  child.reserve(symbols.size());
  auto key = [](std::uint32_t prefix, std::uint32_t sym) { return (std::uint64_t{prefix} << 16) | sym; };

  BitWriter out;
  std::size_t emitted = 0;
  auto emit = [&](std::uint32_t code) {
    out.put(code, LzwCodebook::width_for(alphabet_size + emitted));
    ++emitted;
  };

  if (symbols[0] >= alphabet_size) throw std::invalid_argument("symbol outside alphabet");
  std::uint32_t current = symbols[0];
  for (std::size_t i = 1; i < symbols.size(); ++i) {
    const std::uint32_t s = symbols[i];
    if (s >= alphabet_size) throw std::invalid_argument("symbol outside alphabet");
    auto it = child.find(key(current, s));
    if (it != child.end()) {
      current = it->second;
      continue;
    }
    emit(current);
    child.emplace(key(current, s), book.add(current, s));
    current = s;
  }
  emit(current);

  EncodedBlock block;
  block.bit_count = out.bit_count();
  block.bytes = out.take();
  block.n = symbols.size();
  block.alphabet_size = alphabet_size;
  return block;
}

inline std::vector<std::uint32_t> lzw_decode(const EncodedBlock& block) {
  std::vector<std::uint32_t> out;
  if (block.n == 0) return out;
  out.reserve(block.n);
  LzwCodebook book(block.alphabet_size);
  BitReader in(block.bytes);

  std::size_t read = 0;
  auto next_code = [&]() {
    const auto c = static_cast<std::uint32_t>(in.get(LzwCodebook::width_for(block.alphabet_size + read)));
    ++read;
    return c;
  };

  std::uint32_t prev = next_code();
  if (prev >= book.size()) throw std::runtime_error("corrupt LZW stream");
  book.append_string(prev, out);
  while (out.size() < block.n) {
    const std::uint32_t code = next_code();
    std::uint32_t first;
    if (code < book.size()) {
      first = book.first_symbol(code);
    } else if (code == book.size()) {
      first = book.first_symbol(prev);  // the string being defined right now
    } else {
      throw std::runtime_error("corrupt LZW stream");
    }
    book.add(prev, first);
    book.append_string(code, out);
    prev = code;
  }
  if (out.size() != block.n) throw std::runtime_error("LZW stream overruns the declared length");
  return out;
}

inline void write_block(std::ostream& os, const EncodedBlock& block) {
  for (int i = 7; i >= 0; --i) os.put(static_cast<char>((block.n >> (8 * i)) & 0xFF));
  os.put(static_cast<char>((block.alphabet_size >> 8) & 0xFF));
  os.put(static_cast<char>(block.alphabet_size & 0xFF));
  os.write(reinterpret_cast<const char*>(block.bytes.data()), static_cast<std::streamsize>(block.bytes.size()));
}

/// Reads a block file; bit_count is the padded payload length.
inline EncodedBlock read_block(std::istream& is) {
  EncodedBlock block;
  unsigned char header[10];
  if (!is.read(reinterpret_cast<char*>(header), 10)) throw std::runtime_error("block header truncated");
  for (int i = 0; i < 8; ++i) block.n = (block.n << 8) | header[i];
  block.alphabet_size = (std::uint32_t{header[8]} << 8) | header[9];
  block.bytes.assign(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
  block.bit_count = block.bytes.size() * 8;
  return block;
}

}  // namespace fcomp
