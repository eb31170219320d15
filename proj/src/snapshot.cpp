#include "frakzk/snapshot.hpp"

#include "frakzk/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace fzk {

namespace {

constexpr char kMagic[4] = {'F', 'Z', 'K', '1'};
// magic, nx, ny, 4 zero bytes so that lx and ly sit on 8-byte offsets, lx, ly
constexpr std::size_t kHeaderBytes = 32;

void put_u32(std::vector<unsigned char>& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_f64(std::vector<unsigned char>& b, double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) b.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

double get_f64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(v);
}

} // namespace

void write_snapshot(const std::string& path, const Field& f) {
    const auto& g = *f.grid();
    const auto s = physical_samples(f);
    std::vector<unsigned char> buf;
    buf.reserve(kHeaderBytes + 8 * s.size());
    buf.insert(buf.end(), kMagic, kMagic + 4);
    put_u32(buf, static_cast<std::uint32_t>(g.nx));
    put_u32(buf, static_cast<std::uint32_t>(g.ny));
    put_u32(buf, 0);
    put_f64(buf, g.lx);
    put_f64(buf, g.ly);
    for (double v : s) put_f64(buf, v);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw SnapshotError("short write to " + path);
}

Field read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot open " + path);
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < kHeaderBytes) throw SnapshotError(path + ": truncated header");
    if (std::memcmp(buf.data(), kMagic, 4) != 0) throw SnapshotError(path + ": bad magic");
    const std::uint32_t nx = get_u32(buf.data() + 4);
    const std::uint32_t ny = get_u32(buf.data() + 8);
    const double lx = get_f64(buf.data() + 16);
    const double ly = get_f64(buf.data() + 24);
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    if (buf.size() != kHeaderBytes + 8 * n) {
        throw SnapshotError(path + ": payload size does not match " + std::to_string(nx) + "x" +
                            std::to_string(ny));
    }
    GridPtr g;
    try {
        g = make_grid(static_cast<int>(nx), static_cast<int>(ny), lx, ly);
    } catch (const InvalidArgument& e) {
        throw SnapshotError(path + ": " + e.what());
    }
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = get_f64(buf.data() + kHeaderBytes + 8 * i);
    return Field::physical(std::move(g), std::move(s));
}

SnapshotInfo snapshot_info(const std::string& path) {
    const Field f = read_snapshot(path);
    const auto& g = *f.grid();
    const auto& s = f.samples();
    SnapshotInfo info;
    info.nx = g.nx;
    info.ny = g.ny;
    info.lx = g.lx;
    info.ly = g.ly;
    const auto [mn, mx] = std::minmax_element(s.begin(), s.end());
    info.min = *mn;
    info.max = *mx;
    double sum = 0.0, sq = 0.0;
    for (double v : s) {
        sum += v;
        sq += v * v;
    }
    info.mean = sum / static_cast<double>(s.size());
    info.l2 = std::sqrt(sq * g.cell());
    return info;
}

} // namespace fzk
