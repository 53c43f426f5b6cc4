/* Copyright 2026 The graysynth Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "graysynth/font.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>

#include "graysynth/error.hpp"

#define STBTT_STATIC
#define STB_TRUETYPE_IMPLEMENTATION
#if defined(__GNUC__)
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wunused-function"
#pragma GCC diagnostic ignored "-Wsign-compare"
#pragma GCC diagnostic ignored "-Wconversion"
#endif
#include "stb_truetype.h"
#if defined(__GNUC__)
#pragma GCC diagnostic pop
#endif

namespace graysynth {

struct FontFace::Impl {
  std::vector<std::uint8_t> bytes;
  stbtt_fontinfo info{};
};

namespace {

std::uint32_t read_u32(const std::vector<std::uint8_t>& b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

std::uint16_t read_u16(const std::vector<std::uint8_t>& b, std::size_t at) {
  return static_cast<std::uint16_t>((b[at] << 8) | b[at + 1]);
}

// stb_truetype trusts every offset in the file; reject table directories
// that point outside the buffer before handing the bytes over.
void check_table_directory(const std::vector<std::uint8_t>& bytes, std::size_t font_offset) {
  const std::size_t size = bytes.size();
  if (font_offset + 12 > size) throw Error(ErrorKind::InvalidFont, "truncated table directory");
  const std::size_t tables = read_u16(bytes, font_offset + 4);
  if (tables == 0 || font_offset + 12 + tables * 16 > size) {
    throw Error(ErrorKind::InvalidFont, "truncated table directory");
  }
  for (std::size_t i = 0; i < tables; ++i) {
    const std::size_t record = font_offset + 12 + i * 16;
    const std::uint64_t start = read_u32(bytes, record + 8);
    const std::uint64_t length = read_u32(bytes, record + 12);
    if (start + length > size) throw Error(ErrorKind::InvalidFont, "table extends past end of file");
  }
}

int glyph_for(const stbtt_fontinfo& info, char32_t cp) {
  return stbtt_FindGlyphIndex(&info, static_cast<int>(cp));
}

struct PlacedGlyph {
  int glyph = 0;
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // canvas box, before the union offset
  float shift_x = 0.0f;
};

}  // namespace

FontFace FontFace::from_bytes(std::vector<std::uint8_t> bytes) {
  auto impl = std::make_shared<Impl>();
  impl->bytes = std::move(bytes);
  const auto& b = impl->bytes;
  if (b.size() < 12) throw Error(ErrorKind::InvalidFont, "file too small");

  const int offset = stbtt_GetFontOffsetForIndex(b.data(), 0);
  if (offset < 0) throw Error(ErrorKind::InvalidFont, "unrecognized font signature");
  check_table_directory(b, static_cast<std::size_t>(offset));
  if (stbtt_InitFont(&impl->info, b.data(), offset) == 0) {
    throw Error(ErrorKind::InvalidFont, "missing required tables or usable cmap");
  }
  return FontFace(std::move(impl));
}

FontFace FontFace::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open font " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return from_bytes(std::move(bytes));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

bool FontFace::has_codepoint(char32_t codepoint) const {
  return glyph_for(impl_->info, codepoint) != 0;
}

std::string FontFace::family_name() const {
  int length = 0;
  // Windows Unicode BMP, US English; UTF-16BE.
  if (const char* name = stbtt_GetFontNameString(&impl_->info, &length, 3, 1, 0x409, 1)) {
    std::string out;
    for (int i = 0; i + 1 < length; i += 2) {
      const unsigned unit = (static_cast<unsigned char>(name[i]) << 8) | static_cast<unsigned char>(name[i + 1]);
      out.push_back(unit < 0x80 ? static_cast<char>(unit) : '?');
    }
    return out;
  }
  // Macintosh Roman, English.
  if (const char* name = stbtt_GetFontNameString(&impl_->info, &length, 1, 0, 0, 1)) {
    return std::string(name, static_cast<std::size_t>(length));
  }
  return {};
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    int extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      cp = lead & 0x1F;
      extra = 1;
    } else if ((lead & 0xF0) == 0xE0) {
      cp = lead & 0x0F;
      extra = 2;
    } else if ((lead & 0xF8) == 0xF0) {
      cp = lead & 0x07;
      extra = 3;
    } else {
      throw Error(ErrorKind::InvalidArgument, "invalid UTF-8 lead byte");
    }
    if (i + static_cast<std::size_t>(extra) >= text.size()) {
      throw Error(ErrorKind::InvalidArgument, "truncated UTF-8 sequence");
    }
    for (int k = 1; k <= extra; ++k) {
      const auto cont = static_cast<unsigned char>(text[i + static_cast<std::size_t>(k)]);
      if ((cont & 0xC0) != 0x80) throw Error(ErrorKind::InvalidArgument, "invalid UTF-8 continuation byte");
      cp = (cp << 6) | (cont & 0x3F);
    }
    static constexpr char32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLength[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw Error(ErrorKind::InvalidArgument, "invalid UTF-8 code point");
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(extra) + 1;
  }
  return out;
}

namespace {

// Upright rendering: max-merged coverage of every glyph on a shared canvas.
struct UprightCanvas {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> coverage;
};

UprightCanvas render_upright(const stbtt_fontinfo& info, const std::u32string& codepoints, int pixel_height) {
  const float scale = stbtt_ScaleForPixelHeight(&info, static_cast<float>(pixel_height));
  int ascent = 0, descent = 0, line_gap = 0;
  stbtt_GetFontVMetrics(&info, &ascent, &descent, &line_gap);
  const int baseline = static_cast<int>(std::lround(static_cast<float>(ascent) * scale));

  std::vector<PlacedGlyph> placed;
  placed.reserve(codepoints.size());
  float pen = 0.0f;
  int min_x = std::numeric_limits<int>::max(), min_y = std::numeric_limits<int>::max();
  int max_x = std::numeric_limits<int>::min(), max_y = std::numeric_limits<int>::min();

  for (std::size_t i = 0; i < codepoints.size(); ++i) {
    const int glyph = glyph_for(info, codepoints[i]);
    int advance = 0, lsb = 0;
    stbtt_GetGlyphHMetrics(&info, glyph, &advance, &lsb);

    PlacedGlyph g;
    g.glyph = glyph;
    const float pen_floor = std::floor(pen);
    g.shift_x = pen - pen_floor;
    int bx0 = 0, by0 = 0, bx1 = 0, by1 = 0;
    stbtt_GetGlyphBitmapBoxSubpixel(&info, glyph, scale, scale, g.shift_x, 0.0f, &bx0, &by0, &bx1, &by1);
    if (bx1 > bx0 && by1 > by0) {
      g.x0 = static_cast<int>(pen_floor) + bx0;
      g.y0 = baseline + by0;
      g.x1 = static_cast<int>(pen_floor) + bx1;
      g.y1 = baseline + by1;
      min_x = std::min(min_x, g.x0);
      min_y = std::min(min_y, g.y0);
      max_x = std::max(max_x, g.x1);
      max_y = std::max(max_y, g.y1);
      placed.push_back(g);
    }

    pen += static_cast<float>(advance) * scale;
    if (i + 1 < codepoints.size()) {
      pen += static_cast<float>(stbtt_GetGlyphKernAdvance(&info, glyph, glyph_for(info, codepoints[i + 1]))) * scale;
    }
  }

  UprightCanvas canvas;
  if (placed.empty()) return canvas;
  canvas.width = max_x - min_x;
  canvas.height = max_y - min_y;
  canvas.coverage.assign(static_cast<std::size_t>(canvas.width) * static_cast<std::size_t>(canvas.height), 0);

  std::vector<std::uint8_t> scratch;
  for (const auto& g : placed) {
    const int gw = g.x1 - g.x0;
    const int gh = g.y1 - g.y0;
    scratch.assign(static_cast<std::size_t>(gw) * static_cast<std::size_t>(gh), 0);
    stbtt_MakeGlyphBitmapSubpixel(&info, scratch.data(), gw, gh, gw, scale, scale, g.shift_x, 0.0f, g.glyph);
    for (int y = 0; y < gh; ++y) {
      const std::size_t row = static_cast<std::size_t>(g.y0 - min_y + y) * static_cast<std::size_t>(canvas.width);
      for (int x = 0; x < gw; ++x) {
        auto& dst = canvas.coverage[row + static_cast<std::size_t>(g.x0 - min_x + x)];
        dst = std::max(dst, scratch[static_cast<std::size_t>(y) * static_cast<std::size_t>(gw) + static_cast<std::size_t>(x)]);
      }
    }
  }
  return canvas;
}

// stb stores round(coverage * 255); 128 and above is at least half covered.
constexpr std::uint8_t kInkLevel = 128;

struct Box {
  int x0, y0, x1, y1;  // half-open
};

}  // namespace

RenderedWord rasterize(const FontFace& face, std::string_view word, const TextStyle& style) {
  if (style.pixel_height <= 0) throw Error(ErrorKind::InvalidArgument, "pixel height must be positive");
  const std::u32string codepoints = decode_utf8(word);
  if (codepoints.empty()) throw Error(ErrorKind::ZeroArea, "empty word");
  const auto& info = face.impl().info;
  for (char32_t cp : codepoints) {
    if (glyph_for(info, cp) == 0) {
      throw Error(ErrorKind::MissingGlyph, "font has no glyph for U+" + [cp] {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04X", static_cast<unsigned>(cp));
        return std::string(buf);
      }());
    }
  }

  const UprightCanvas upright = render_upright(info, codepoints, style.pixel_height);
  const int uw = upright.width;
  const int uh = upright.height;

  Box ink{uw, uh, 0, 0};
  for (int y = 0; y < uh; ++y) {
    for (int x = 0; x < uw; ++x) {
      if (upright.coverage[static_cast<std::size_t>(y) * static_cast<std::size_t>(uw) + static_cast<std::size_t>(x)] >= kInkLevel) {
        ink = {std::min(ink.x0, x), std::min(ink.y0, y), std::max(ink.x1, x + 1), std::max(ink.y1, y + 1)};
      }
    }
  }
  if (ink.x1 <= ink.x0) throw Error(ErrorKind::ZeroArea, "word renders no ink");

  const double turns = std::fmod(style.rotation_deg, 360.0);
  const double theta = turns * std::numbers::pi / 180.0;
  const double c = turns == 0.0 ? 1.0 : std::cos(theta);
  const double s = turns == 0.0 ? 0.0 : std::sin(theta);
  const double cx = uw / 2.0;
  const double cy = uh / 2.0;

  // Forward map (counterclockwise on screen, y pointing down).
  auto forward = [&](double x, double y) {
    const double dx = x - cx, dy = y - cy;
    return Point{c * dx + s * dy, -s * dx + c * dy};
  };

  // Rotated canvas: bounds of the rotated upright canvas.
  double min_x = 0.0, min_y = 0.0;
  int rw = uw, rh = uh;
  if (turns != 0.0) {
    const Point corners[] = {forward(0, 0), forward(uw, 0), forward(uw, uh), forward(0, uh)};
    double max_x = corners[0].x, max_y = corners[0].y;
    min_x = corners[0].x;
    min_y = corners[0].y;
    for (const auto& p : corners) {
      min_x = std::min(min_x, p.x);
      min_y = std::min(min_y, p.y);
      max_x = std::max(max_x, p.x);
      max_y = std::max(max_y, p.y);
    }
    rw = static_cast<int>(std::ceil(max_x - min_x - 1e-9));
    rh = static_cast<int>(std::ceil(max_y - min_y - 1e-9));
  } else {
    min_x = -cx;
    min_y = -cy;
  }

  std::vector<std::uint8_t> rotated(static_cast<std::size_t>(rw) * static_cast<std::size_t>(rh), 0);
  if (turns == 0.0) {
    rotated = upright.coverage;
  } else {
    for (int Y = 0; Y < rh; ++Y) {
      for (int X = 0; X < rw; ++X) {
        const double px = X + 0.5 + min_x;
        const double py = Y + 0.5 + min_y;
        const double sx = c * px - s * py + cx;
        const double sy = s * px + c * py + cy;
        const int ix = static_cast<int>(std::floor(sx));
        const int iy = static_cast<int>(std::floor(sy));
        if (ix >= 0 && iy >= 0 && ix < uw && iy < uh) {
          rotated[static_cast<std::size_t>(Y) * static_cast<std::size_t>(rw) + static_cast<std::size_t>(X)] =
              upright.coverage[static_cast<std::size_t>(iy) * static_cast<std::size_t>(uw) + static_cast<std::size_t>(ix)];
        }
      }
    }
  }

  Box crop{rw, rh, 0, 0};
  for (int y = 0; y < rh; ++y) {
    for (int x = 0; x < rw; ++x) {
      if (rotated[static_cast<std::size_t>(y) * static_cast<std::size_t>(rw) + static_cast<std::size_t>(x)] >= kInkLevel) {
        crop = {std::min(crop.x0, x), std::min(crop.y0, y), std::max(crop.x1, x + 1), std::max(crop.y1, y + 1)};
      }
    }
  }
  if (crop.x1 <= crop.x0) throw Error(ErrorKind::ZeroArea, "rotated word lost all ink");

  RenderedWord out;
  out.mask = GlyphMask(crop.x1 - crop.x0, crop.y1 - crop.y0);
  out.coverage.assign(out.mask.bits.size(), 0);
  for (int y = 0; y < out.mask.height; ++y) {
    for (int x = 0; x < out.mask.width; ++x) {
      const auto v = rotated[static_cast<std::size_t>(y + crop.y0) * static_cast<std::size_t>(rw) +
                             static_cast<std::size_t>(x + crop.x0)];
      out.coverage[out.mask.index(x, y)] = v;
      out.mask.set(x, y, v >= kInkLevel);
    }
  }

  const Point box[] = {{double(ink.x0), double(ink.y0)},
                       {double(ink.x1), double(ink.y0)},
                       {double(ink.x1), double(ink.y1)},
                       {double(ink.x0), double(ink.y1)}};
  for (std::size_t i = 0; i < 4; ++i) {
    const Point p = forward(box[i].x, box[i].y);
    out.quad[i] = {p.x - min_x - crop.x0, p.y - min_y - crop.y0};
  }
  return out;
}

}  // namespace graysynth
