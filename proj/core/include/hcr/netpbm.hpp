#pragma once

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "hcr/raster.hpp"

namespace hcr {

/// A decoded netpbm file: PBM (P1/P4) decodes to a BinaryRaster, PGM (P2/P5)
/// to a GrayRaster scaled to 0..255.
using PnmImage = std::variant<BinaryRaster, GrayRaster>;

PnmImage read_pnm(std::istream& in);
PnmImage read_pnm(const std::filesystem::path& path);

/// Reads PBM directly or PGM through binarize().
BinaryRaster load_binary_image(const std::filesystem::path& path,
                               int threshold = kDefaultBinarizeThreshold);

enum class PnmEncoding { Plain, Raw };

void write_pbm(std::ostream& out, const BinaryRaster& img,
               PnmEncoding encoding = PnmEncoding::Plain);
void write_pbm(const std::filesystem::path& path, const BinaryRaster& img,
               PnmEncoding encoding = PnmEncoding::Plain);

/// Writes an 8-bit PGM, maxval 255.
void write_pgm(std::ostream& out, const GrayRaster& img,
               PnmEncoding encoding = PnmEncoding::Raw);
void write_pgm(const std::filesystem::path& path, const GrayRaster& img,
               PnmEncoding encoding = PnmEncoding::Raw);

}  // namespace hcr
