#include "hcr/netpbm.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "hcr/error.hpp"

namespace hcr {
namespace {

void skip_space_and_comments(std::istream& in) {
  for (;;) {
    const int ch = in.peek();
    if (ch == '#') {
      std::string discard;
      std::getline(in, discard);
    } else if (ch != EOF && std::isspace(ch)) {
      in.get();
    } else {
      return;
    }
  }
}

int read_header_int(std::istream& in) {
  skip_space_and_comments(in);
  long value = 0;
  bool any = false;
  while (std::isdigit(in.peek())) {
    value = value * 10 + (in.get() - '0');
    if (value > (1L << 24)) throw Error("pnm: header value too large");
    any = true;
  }
  if (!any) throw Error("pnm: malformed header");
  return static_cast<int>(value);
}

BinaryRaster read_plain_pbm(std::istream& in, int w, int h) {
  BinaryRaster img(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      skip_space_and_comments(in);
      const int ch = in.get();
      if (ch != '0' && ch != '1') throw Error("pnm: truncated PBM data");
      img.set(r, c, ch == '1');
    }
  }
  return img;
}

BinaryRaster read_raw_pbm(std::istream& in, int w, int h) {
  BinaryRaster img(w, h);
  const int row_bytes = (w + 7) / 8;
  std::string row(static_cast<std::size_t>(row_bytes), '\0');
  for (int r = 0; r < h; ++r) {
    if (!in.read(row.data(), row_bytes)) throw Error("pnm: truncated PBM data");
    for (int c = 0; c < w; ++c) {
      const auto byte = static_cast<unsigned char>(row[c / 8]);
      img.set(r, c, (byte >> (7 - c % 8)) & 1);
    }
  }
  return img;
}

GrayRaster read_pgm_body(std::istream& in, int w, int h, int maxval,
                         bool plain) {
  if (maxval < 1 || maxval > 65535) throw Error("pnm: bad maxval");
  GrayRaster img{w, h, {}};
  img.pixels.resize(static_cast<std::size_t>(w) * h);
  for (auto& px : img.pixels) {
    int v = 0;
    if (plain) {
      v = read_header_int(in);
    } else if (maxval < 256) {
      const int ch = in.get();
      if (ch == EOF) throw Error("pnm: truncated PGM data");
      v = ch;
    } else {
      const int hi = in.get();
      const int lo = in.get();
      if (lo == EOF) throw Error("pnm: truncated PGM data");
      v = (hi << 8) | lo;
    }
    if (v > maxval) throw Error("pnm: sample exceeds maxval");
    px = static_cast<std::uint8_t>(maxval == 255 ? v : (v * 255 + maxval / 2) / maxval);
  }
  return img;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

PnmImage read_pnm(std::istream& in) {
  char magic[2] = {0, 0};
  if (!in.read(magic, 2) || magic[0] != 'P')
    throw Error("pnm: not a netpbm file");
  const char kind = magic[1];
  if (kind != '1' && kind != '2' && kind != '4' && kind != '5')
    throw Error(std::string("pnm: unsupported format P") + kind);
  const int w = read_header_int(in);
  const int h = read_header_int(in);
  if (w < 1 || h < 1) throw Error("empty image");
  int maxval = 1;
  if (kind == '2' || kind == '5') maxval = read_header_int(in);
  if (kind == '4' || kind == '5') {
    // Exactly one whitespace byte separates the header from raw data.
    if (!std::isspace(in.get())) throw Error("pnm: malformed header");
  }
  switch (kind) {
    case '1': return read_plain_pbm(in, w, h);
    case '4': return read_raw_pbm(in, w, h);
    case '2': return read_pgm_body(in, w, h, maxval, true);
    default: return read_pgm_body(in, w, h, maxval, false);
  }
}

PnmImage read_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  try {
    return read_pnm(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

BinaryRaster load_binary_image(const std::filesystem::path& path,
                               int threshold) {
  PnmImage img = read_pnm(path);
  if (auto* bin = std::get_if<BinaryRaster>(&img)) return std::move(*bin);
  return binarize(std::get<GrayRaster>(img), threshold);
}

void write_pbm(std::ostream& out, const BinaryRaster& img,
               PnmEncoding encoding) {
  const int w = img.width();
  const int h = img.height();
  if (encoding == PnmEncoding::Plain) {
    out << "P1\n" << w << ' ' << h << '\n';
    for (int r = 0; r < h; ++r) {
      // Plain PBM lines must stay under 70 characters.
      for (int c = 0; c < w; ++c) {
        out << (img.at(r, c) ? '1' : '0');
        if ((c + 1) % 64 == 0 && c + 1 < w) out << '\n';
      }
      out << '\n';
    }
  } else {
    out << "P4\n" << w << ' ' << h << '\n';
    std::string row(static_cast<std::size_t>((w + 7) / 8), '\0');
    for (int r = 0; r < h; ++r) {
      std::fill(row.begin(), row.end(), '\0');
      for (int c = 0; c < w; ++c)
        if (img.at(r, c)) row[c / 8] = static_cast<char>(row[c / 8] | (0x80 >> (c % 8)));
      out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
  }
  if (!out) throw Error("pnm: write failed");
}

void write_pbm(const std::filesystem::path& path, const BinaryRaster& img,
               PnmEncoding encoding) {
  auto out = open_for_write(path);
  write_pbm(out, img, encoding);
}

void write_pgm(std::ostream& out, const GrayRaster& img,
               PnmEncoding encoding) {
  if (img.width < 1 || img.height < 1) throw Error("empty image");
  out << (encoding == PnmEncoding::Plain ? "P2\n" : "P5\n") << img.width
      << ' ' << img.height << "\n255\n";
  if (encoding == PnmEncoding::Raw) {
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
  } else {
    for (int r = 0; r < img.height; ++r) {
      for (int c = 0; c < img.width; ++c)
        out << (c ? " " : "") << static_cast<int>(img.at(r, c));
      out << '\n';
    }
  }
  if (!out) throw Error("pnm: write failed");
}

void write_pgm(const std::filesystem::path& path, const GrayRaster& img,
               PnmEncoding encoding) {
  auto out = open_for_write(path);
  write_pgm(out, img, encoding);
}

}  // namespace hcr
