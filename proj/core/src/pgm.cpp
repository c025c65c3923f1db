#include "veintrack/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace veintrack {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string token;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        token.push_back(static_cast<char>(c));
        c = in.get();
    }
    return token;
}

struct PgmData {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bytes;
};

PgmData read_p5(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open PGM file: " + path.string());
    }
    if (next_token(in) != "P5") {
        throw std::runtime_error("not a binary PGM (P5) file: " + path.string());
    }
    PgmData pgm;
    try {
        pgm.width = std::stoi(next_token(in));
        pgm.height = std::stoi(next_token(in));
        const int maxval = std::stoi(next_token(in));
        if (maxval != 255) {
            throw std::runtime_error("unsupported maxval");
        }
    } catch (const std::exception&) {
        throw std::runtime_error("malformed PGM header in " + path.string());
    }
    if (pgm.width < 1 || pgm.height < 1) {
        throw std::runtime_error("bad PGM dimensions in " + path.string());
    }
    pgm.bytes.resize(static_cast<std::size_t>(pgm.width) * pgm.height);
    in.read(reinterpret_cast<char*>(pgm.bytes.data()),
            static_cast<std::streamsize>(pgm.bytes.size()));
    if (in.gcount() != static_cast<std::streamsize>(pgm.bytes.size())) {
        throw std::runtime_error("truncated PGM data in " + path.string());
    }
    return pgm;
}

void write_p5(const std::filesystem::path& path, int width, int height,
              const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write PGM file: " + path.string());
    }
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("write failed for PGM file: " + path.string());
    }
}

}  // namespace

Frame read_pgm(const std::filesystem::path& path) {
    const PgmData pgm = read_p5(path);
    Frame frame(pgm.width, pgm.height);
    for (std::size_t i = 0; i < pgm.bytes.size(); ++i) {
        frame.data[i] = pgm.bytes[i] / 255.0;
    }
    return frame;
}

void write_pgm(const std::filesystem::path& path, const Frame& frame) {
    std::vector<std::uint8_t> bytes(frame.pixel_count());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        const double v = std::clamp(frame.data[i], 0.0, 1.0);
        bytes[i] = static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
    write_p5(path, frame.width, frame.height, bytes);
}

Mask read_mask_pgm(const std::filesystem::path& path) {
    const PgmData pgm = read_p5(path);
    Mask mask(pgm.width, pgm.height);
    for (std::size_t i = 0; i < pgm.bytes.size(); ++i) {
        mask.bits[i] = pgm.bytes[i] != 0 ? 1 : 0;
    }
    return mask;
}

void write_mask_pgm(const std::filesystem::path& path, const Mask& mask) {
    std::vector<std::uint8_t> bytes(mask.bits.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        bytes[i] = mask.bits[i] != 0 ? 255 : 0;
    }
    write_p5(path, mask.width, mask.height, bytes);
}

}  // namespace veintrack
