// SPDX-License-Identifier: Apache-2.0
//
// The on-disk fiducial format: '#'-prefixed header lines carrying d and
// optional metadata, then exactly d rows of "re im" at 17 significant
// digits (lossless double round-trip).

#pragma once

#include <fibsic/linalg.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fibsic {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

struct FiducialFile {
    int d = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> symmetry_label;
    std::optional<double> potential;
    CVector psi;
};

namespace detail {
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
}  // namespace detail

inline void save_fiducial(const std::string& path, const FiducialFile& f) {
    if (static_cast<std::size_t>(f.d) != f.psi.size())
        throw std::invalid_argument("save_fiducial: d does not match vector length");
    std::ofstream out(path, std::ios::binary);  // binary: byte-identical across runs
    if (!out) throw std::runtime_error("save_fiducial: cannot open " + path);
    out << "# fibsic fiducial\n";
    out << "# d " << f.d << "\n";
    if (f.seed) out << "# seed " << *f.seed << "\n";
    if (f.symmetry_label) out << "# symmetry " << *f.symmetry_label << "\n";
    if (f.potential) out << "# potential " << detail::format_g17(*f.potential) << "\n";
    for (const auto& z : f.psi)
        out << detail::format_g17(z.real()) << " " << detail::format_g17(z.imag()) << "\n";
    if (!out) throw std::runtime_error("save_fiducial: write failed on " + path);
}

inline FiducialFile load_fiducial(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_fiducial: cannot open " + path);
    FiducialFile f;
    std::string line;
    int line_no = 0;
    bool have_d = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            hs >> key;
            if (key == "d") {
                if (!(hs >> f.d) || f.d < 1) throw ParseError(line_no, "bad dimension header");
                have_d = true;
            } else if (key == "seed") {
                std::uint64_t s;
                if (hs >> s) f.seed = s;
            } else if (key == "symmetry") {
                std::string s;
                if (hs >> s) f.symmetry_label = s;
            } else if (key == "potential") {
                double p;
                if (hs >> p) f.potential = p;
            }
            continue;
        }
        if (!have_d) throw ParseError(line_no, "amplitude row before '# d' header");
        std::istringstream bs(line);
        double re, im;
        if (!(bs >> re >> im)) throw ParseError(line_no, "expected two reals");
        std::string extra;
        if (bs >> extra) throw ParseError(line_no, "trailing content after two reals");
        if (static_cast<int>(f.psi.size()) >= f.d) throw ParseError(line_no, "more rows than d");
        f.psi.emplace_back(re, im);
    }
    if (!have_d) throw ParseError(line_no, "missing '# d' header");
    if (static_cast<int>(f.psi.size()) != f.d)
        throw ParseError(line_no, "expected " + std::to_string(f.d) + " rows, got " +
                                      std::to_string(f.psi.size()));
    const double r = norm(f.psi);
    if (std::abs(r - 1.0) > 1e-6)
        throw ParseError(line_no, "vector norm " + std::to_string(r) + " too far from 1");
    for (auto& z : f.psi) z /= r;
    return f;
}

}  // namespace fibsic
