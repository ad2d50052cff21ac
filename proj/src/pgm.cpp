#include "tiredge/pgm.hpp"

#include <cctype>
#include <fstream>

#include "tiredge/errors.hpp"

namespace tiredge {

namespace {

struct Cursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  bool eof() const { return pos >= bytes.size(); }
  std::uint8_t peek() const { return bytes[pos]; }

  std::uint8_t next() {
    if (eof()) throw ParseError("pgm: unexpected end of data", pos);
    return bytes[pos++];
  }

  // Whitespace and '#' comments (to end of line) between header tokens.
  void skip_separators() {
    while (!eof()) {
      std::uint8_t c = peek();
      if (std::isspace(c)) {
        ++pos;
      } else if (c == '#') {
        while (!eof() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  unsigned long read_number(const char* what) {
    skip_separators();
    if (eof()) throw ParseError(std::string("pgm: missing ") + what, pos);
    if (!std::isdigit(peek()))
      throw ParseError(std::string("pgm: malformed ") + what, pos);
    unsigned long value = 0;
    while (!eof() && std::isdigit(peek())) {
      value = value * 10 + (next() - '0');
      if (value > 1000000000ul)
        throw ParseError(std::string("pgm: ") + what + " out of range", pos);
    }
    return value;
  }
};

void append_number(std::vector<std::uint8_t>& out, unsigned long v) {
  for (char c : std::to_string(v)) out.push_back(static_cast<std::uint8_t>(c));
}

}  // namespace

PgmFrame read_pgm(std::span<const std::uint8_t> bytes) {
  Cursor cur{bytes};
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    throw ParseError("pgm: invalid magic", 0);
  bool binary = bytes[1] == '5';
  cur.pos = 2;

  unsigned long width = cur.read_number("width");
  unsigned long height = cur.read_number("height");
  unsigned long maxval = cur.read_number("maxval");
  if (width == 0 || height == 0)
    throw ParseError("pgm: zero image dimension", cur.pos);
  if (maxval < 1 || maxval > 65535)
    throw ParseError("pgm: maxval out of range", cur.pos);

  std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<std::uint16_t> samples(count);

  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (cur.eof() || !std::isspace(cur.peek()))
      throw ParseError("pgm: missing raster separator", cur.pos);
    ++cur.pos;
    bool wide = maxval > 255;
    std::size_t need = count * (wide ? 2 : 1);
    if (bytes.size() - cur.pos < need)
      throw ParseError("pgm: truncated payload", bytes.size());
    for (std::size_t i = 0; i < count; ++i) {
      if (wide) {
        std::uint16_t hi = bytes[cur.pos++];
        std::uint16_t lo = bytes[cur.pos++];
        samples[i] = static_cast<std::uint16_t>((hi << 8) | lo);
      } else {
        samples[i] = bytes[cur.pos++];
      }
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t at = cur.pos;
      unsigned long v = cur.read_number("sample");
      unsigned long limit = maxval > 255 ? 65535ul : 255ul;
      if (v > limit) throw ParseError("pgm: sample out of range", at);
      samples[i] = static_cast<std::uint16_t>(v);
    }
  }

  int w = static_cast<int>(width), h = static_cast<int>(height);
  if (maxval <= 255) {
    GrayFrame g{w, h, {}};
    g.data.assign(samples.begin(), samples.end());
    return g;
  }
  RawFrame r;
  r.width = w;
  r.height = h;
  r.data = std::move(samples);
  return r;
}

std::vector<std::uint8_t> write_pgm(const GrayFrame& frame) {
  if (frame.empty()) throw Error("pgm: cannot write zero-dimension frame");
  std::vector<std::uint8_t> out = {'P', '5', '\n'};
  append_number(out, frame.width);
  out.push_back(' ');
  append_number(out, frame.height);
  out.push_back('\n');
  append_number(out, 255);
  out.push_back('\n');
  out.insert(out.end(), frame.data.begin(), frame.data.end());
  return out;
}

std::vector<std::uint8_t> write_pgm(const RawFrame& frame) {
  if (frame.empty()) throw Error("pgm: cannot write zero-dimension frame");
  unsigned long maxval = 16383;
  for (auto v : frame.data)
    if (v > 16383) maxval = 65535;
  std::vector<std::uint8_t> out = {'P', '5', '\n'};
  append_number(out, frame.width);
  out.push_back(' ');
  append_number(out, frame.height);
  out.push_back('\n');
  append_number(out, maxval);
  out.push_back('\n');
  for (auto v : frame.data) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
  }
  return out;
}

std::vector<std::uint8_t> write_pgm(const PgmFrame& frame) {
  return std::visit([](const auto& f) { return write_pgm(f); }, frame);
}

PgmFrame load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                  std::istreambuf_iterator<char>()};
  return read_pgm(bytes);
}

void save_pgm(const std::string& path, const PgmFrame& frame) {
  auto bytes = write_pgm(frame);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for " + path);
}

void save_pgm(const std::string& path, const GrayFrame& frame) {
  save_pgm(path, PgmFrame{frame});
}

void save_pgm(const std::string& path, const BinaryMap& map) {
  GrayFrame g{map.width, map.height, {}};
  g.data.resize(map.data.size());
  for (std::size_t i = 0; i < map.data.size(); ++i) g.data[i] = map.data[i] ? 255 : 0;
  save_pgm(path, PgmFrame{g});
}

}  // namespace tiredge
