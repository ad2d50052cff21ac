#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tiredge/image.hpp"

namespace tiredge {

using PgmFrame = std::variant<RawFrame, GrayFrame>;

/// Parse a PGM stream (binary P5 or ASCII P2, '#' comments allowed in the
/// header). Frames with maxval <= 255 come back as GrayFrame, larger maxval
/// as RawFrame; P5 samples above 255 are two bytes, most significant first.
/// Throws ParseError with the byte offset of the defect.
PgmFrame read_pgm(std::span<const std::uint8_t> bytes);

/// Emit binary P5. GrayFrame uses maxval 255; RawFrame uses 16383 (65535 when
/// a sample exceeds 14 bits). read_pgm(write_pgm(f)) reproduces f exactly.
std::vector<std::uint8_t> write_pgm(const GrayFrame& frame);
std::vector<std::uint8_t> write_pgm(const RawFrame& frame);
std::vector<std::uint8_t> write_pgm(const PgmFrame& frame);

PgmFrame load_pgm(const std::string& path);
void save_pgm(const std::string& path, const PgmFrame& frame);
void save_pgm(const std::string& path, const GrayFrame& frame);
void save_pgm(const std::string& path, const BinaryMap& map);

}  // namespace tiredge
