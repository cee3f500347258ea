#include "rbca/pbm.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace rbca {

void write_pbm(std::ostream& out, const std::vector<RingConfiguration>& rows, bool binary,
               const std::string& comment) {
    if (rows.empty()) throw std::invalid_argument("empty image");
    const int width = rows.front().size();
    const int height = static_cast<int>(rows.size());
    for (const auto& row : rows)
        if (row.size() != width) throw std::invalid_argument("ragged image rows");

    out << (binary ? "P4" : "P1") << '\n';
    if (!comment.empty()) out << "# " << comment << '\n';
    out << width << ' ' << height << '\n';

    if (binary) {
        std::vector<char> packed(static_cast<std::size_t>((width + 7) / 8));
        for (const auto& row : rows) {
            std::fill(packed.begin(), packed.end(), 0);
            for (int i = 0; i < width; ++i)
                if (row.cell(i))
                    packed[static_cast<std::size_t>(i) / 8] |=
                        static_cast<char>(0x80 >> (i % 8)); // MSB first
            out.write(packed.data(), static_cast<std::streamsize>(packed.size()));
        }
    } else {
        for (const auto& row : rows) {
            for (int i = 0; i < width; ++i) {
                if (i > 0) out << ' ';
                out << (row.cell(i) ? '1' : '0');
            }
            out << '\n';
        }
    }
}

namespace {

// next token, skipping whitespace and '#' comments
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

} // namespace

PbmImage read_pbm(std::istream& in) {
    const std::string magic = next_token(in);
    if (magic != "P1" && magic != "P4") throw std::runtime_error("not a PBM stream");
    PbmImage img;
    img.width = std::stoi(next_token(in));
    img.height = std::stoi(next_token(in));
    if (img.width <= 0 || img.height <= 0) throw std::runtime_error("bad PBM dimensions");
    img.pixels.assign(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height), 0);

    if (magic == "P1") {
        std::size_t k = 0;
        int c;
        while (k < img.pixels.size() && (c = in.get()) != EOF) {
            if (c == '#') {
                while ((c = in.get()) != EOF && c != '\n') {}
                continue;
            }
            if (c == '0' || c == '1') img.pixels[k++] = static_cast<std::uint8_t>(c - '0');
        }
        if (k != img.pixels.size()) throw std::runtime_error("truncated P1 data");
    } else {
        // single whitespace byte after the header, then packed rows
        const std::size_t row_bytes = static_cast<std::size_t>((img.width + 7) / 8);
        std::vector<char> buf(row_bytes);
        for (int r = 0; r < img.height; ++r) {
            in.read(buf.data(), static_cast<std::streamsize>(row_bytes));
            if (in.gcount() != static_cast<std::streamsize>(row_bytes))
                throw std::runtime_error("truncated P4 data");
            for (int i = 0; i < img.width; ++i)
                img.pixels[static_cast<std::size_t>(r) * static_cast<std::size_t>(img.width) +
                           static_cast<std::size_t>(i)] =
                    (static_cast<unsigned char>(buf[static_cast<std::size_t>(i) / 8]) >>
                     (7 - i % 8)) & 1;
        }
    }
    return img;
}

} // namespace rbca
