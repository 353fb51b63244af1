#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "drc/errors.hpp"
#include "drc/sim.hpp"

namespace drc {

// %.17g round-trips doubles exactly.
inline std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string trajectory_csv(const Trajectory& traj) {
    if (traj.samples() == 0) throw validation_error("csv: empty trajectory");
    const int n = static_cast<int>(traj.x[0].size());
    std::string out = "t";
    auto header_block = [&](const std::string& base) {
        for (int i = 1; i <= n; ++i) out += "," + base + "_" + std::to_string(i);
    };
    header_block("x");
    header_block("xhat");
    header_block("what");
    header_block("u");
    header_block("w");
    out += '\n';
    for (std::size_t k = 0; k < traj.samples(); ++k) {
        out += csv_number(traj.times[k]);
        for (const auto* block : {&traj.x[k], &traj.xhat[k], &traj.what[k], &traj.u[k],
                                  &traj.w_true[k]})
            for (int i = 0; i < n; ++i) out += "," + csv_number((*block)(i));
        out += '\n';
    }
    return out;
}

// Write via temp file + rename so readers never observe a partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    fs::path tmp;
    {
        std::random_device rd;
        tmp = dir / (path.filename().string() + ".tmp" + std::to_string(rd()));
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw validation_error("csv: cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) throw validation_error("csv: write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw validation_error("csv: rename to " + path.string() + " failed: " + ec.message());
    }
}

inline void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    write_file_atomic(path, trajectory_csv(traj));
}

inline Trajectory parse_trajectory_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw validation_error("csv: empty input");
    // header: t, then five blocks of n columns
    std::size_t cols = 1;
    for (char c : line)
        if (c == ',') ++cols;
    if (cols < 6 || (cols - 1) % 5 != 0)
        throw validation_error("csv: header has " + std::to_string(cols) + " columns");
    const int n = static_cast<int>((cols - 1) / 5);
    Trajectory traj;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        row.reserve(cols);
        const char* p = line.c_str();
        char* end = nullptr;
        for (std::size_t c = 0; c < cols; ++c) {
            const double v = std::strtod(p, &end);
            if (end == p)
                throw validation_error("csv: bad number at line " + std::to_string(lineno));
            row.push_back(v);
            p = end;
            if (c + 1 < cols) {
                if (*p != ',')
                    throw validation_error("csv: expected ',' at line " + std::to_string(lineno));
                ++p;
            }
        }
        traj.times.push_back(row[0]);
        auto block = [&](int b) {
            Vector v(n);
            for (int i = 0; i < n; ++i) v(i) = row[1 + static_cast<std::size_t>(b) * n + i];
            return v;
        };
        traj.x.push_back(block(0));
        traj.xhat.push_back(block(1));
        traj.what.push_back(block(2));
        traj.u.push_back(block(3));
        traj.w_true.push_back(block(4));
    }
    return traj;
}

inline Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw validation_error("csv: cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_trajectory_csv(ss.str());
}

} // namespace drc
