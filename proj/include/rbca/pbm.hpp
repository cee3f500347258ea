#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rbca/engine.hpp"

namespace rbca {

// Space-time diagrams as portable bitmaps: one row per time step, bit 1 is
// a black pixel. P1 is the ASCII variant, P4 the packed binary one.
void write_pbm(std::ostream& out, const std::vector<RingConfiguration>& rows, bool binary,
               const std::string& comment = "");

struct PbmImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // row-major, one byte per pixel, values 0/1

    std::uint8_t at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(col)];
    }
};

// Reference reader for both variants; throws std::runtime_error on malformed input.
PbmImage read_pbm(std::istream& in);

} // namespace rbca
