#ifndef MORSETRACK_IO_HPP
#define MORSETRACK_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "morsetrack/cell_complex.hpp"

namespace morsetrack {

/// 8-bit grayscale frame, row-major.
struct Image8 {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    void set(int x, int y, std::uint8_t v) {
        pixels[static_cast<std::size_t>(y) * width + x] = v;
    }
};

/// Binary PGM (P5), maxval up to 255.  Comments in the header are accepted.
Image8 read_pgm(const std::string& path);
void write_pgm(const std::string& path, const Image8& img);

/// ASCII OFF mesh of dimension <= 2.  Faces may be index pairs (edges of a
/// polygonal curve) or triangles; triangle edges are created on the fly.
/// Vertex coordinates become anchors (x, y).
CellComplex read_off(const std::string& path);

/// One floating point value per line.
std::vector<double> read_value_csv(const std::string& path);

} // namespace morsetrack

#endif
