#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace birds {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> bytes);
Digest sha256_pair(const Digest& left, const Digest& right);

std::string to_hex(std::span<const std::uint8_t> bytes);
Digest digest_from_hex(const std::string& hex);

unsigned leading_zero_bits(const Digest& digest);

/// Little-endian, length-prefixed field encoder used for every hashed record.
class ByteWriter {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
    void f64(double v);
    void digest(const Digest& d) { out_.insert(out_.end(), d.begin(), d.end()); }
    void bytes(std::span<const std::uint8_t> b);
    void str(const std::string& s);

    std::vector<std::uint8_t>& buffer() { return out_; }
    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    std::vector<std::uint8_t> out_;
};

/// Strict decoder; throws InvalidBlock on truncation.
class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    double f64();
    Digest digest();
    std::string str();

    bool done() const { return pos_ == in_.size(); }
    std::size_t remaining() const { return in_.size() - pos_; }

private:
    void need(std::size_t n) const;

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

}  // namespace birds
