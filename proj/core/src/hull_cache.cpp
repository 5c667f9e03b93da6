#include "wlp/hull_cache.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>

#include "wlp/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "hull cache I/O assumes a little-endian host");

namespace wlp {

namespace {

constexpr char kMagic[4] = {'W', 'L', 'H', 'C'};

class CrcWriter {
  public:
    explicit CrcWriter(std::ofstream& os) : os_(os) {}
    void write(const void* data, std::size_t len) {
        os_.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
        crc_ = crc32(crc_, static_cast<const Bytef*>(data), static_cast<uInt>(len));
    }
    template <typename T>
    void write_pod(T v) {
        write(&v, sizeof(T));
    }
    std::uint32_t crc() const { return static_cast<std::uint32_t>(crc_); }

  private:
    std::ofstream& os_;
    uLong crc_ = crc32(0L, Z_NULL, 0);
};

class CrcReader {
  public:
    explicit CrcReader(std::ifstream& is) : is_(is) {}
    void read(void* data, std::size_t len) {
        is_.read(static_cast<char*>(data), static_cast<std::streamsize>(len));
        if (static_cast<std::size_t>(is_.gcount()) != len)
            throw CacheError(CacheError::Kind::truncated, "hull cache: unexpected end of file");
        crc_ = crc32(crc_, static_cast<const Bytef*>(data), static_cast<uInt>(len));
    }
    template <typename T>
    T read_pod() {
        T v;
        read(&v, sizeof(T));
        return v;
    }
    std::uint32_t crc() const { return static_cast<std::uint32_t>(crc_); }

  private:
    std::ifstream& is_;
    uLong crc_ = crc32(0L, Z_NULL, 0);
};

}  // namespace

void save_hulls(std::span<const ConvexHull> hulls, const std::string& path,
                std::uint64_t master_seed) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw CacheError(CacheError::Kind::io, "hull cache: cannot open for writing: " + path);
    CrcWriter w(os);
    w.write(kMagic, 4);
    w.write_pod<std::uint32_t>(kHullCacheVersion);
    w.write_pod<std::uint64_t>(hulls.size());
    w.write_pod<std::uint64_t>(master_seed);
    for (const ConvexHull& h : hulls) {
        w.write_pod<std::uint64_t>(h.source_n);
        w.write_pod<std::uint32_t>(static_cast<std::uint32_t>(h.vertices.size()));
        for (const Vec3& v : h.vertices) {
            w.write_pod<double>(v.x);
            w.write_pod<double>(v.y);
            w.write_pod<double>(v.z);
        }
    }
    std::uint32_t crc = w.crc();
    os.write(reinterpret_cast<const char*>(&crc), sizeof(crc));
    os.flush();
    if (!os) throw CacheError(CacheError::Kind::io, "hull cache: write failed: " + path);
}

HullCacheData load_hulls(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw CacheError(CacheError::Kind::io, "hull cache: cannot open for reading: " + path);
    CrcReader r(is);
    char magic[4];
    r.read(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw CacheError(CacheError::Kind::bad_magic, "hull cache: bad header magic");
    std::uint32_t version = r.read_pod<std::uint32_t>();
    if (version != kHullCacheVersion)
        throw CacheError(CacheError::Kind::bad_version,
                         "hull cache: unsupported format version " + std::to_string(version));
    HullCacheData data;
    std::uint64_t count = r.read_pod<std::uint64_t>();
    data.master_seed = r.read_pod<std::uint64_t>();
    data.hulls.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        ConvexHull h;
        h.source_n = r.read_pod<std::uint64_t>();
        h.stream_index = i;  // records are written in stream order
        std::uint32_t nv = r.read_pod<std::uint32_t>();
        h.vertices.resize(nv);
        if (nv > 0) {
            r.read(h.vertices.data(), sizeof(Vec3) * nv);
            h.z_min = std::numeric_limits<double>::infinity();
            h.z_max = -std::numeric_limits<double>::infinity();
            for (const Vec3& v : h.vertices) {
                h.z_min = std::min(h.z_min, v.z);
                h.z_max = std::max(h.z_max, v.z);
            }
        } else {
            h.degenerate = true;
        }
        data.hulls.push_back(std::move(h));
    }
    std::uint32_t stored_crc;
    is.read(reinterpret_cast<char*>(&stored_crc), sizeof(stored_crc));
    if (static_cast<std::size_t>(is.gcount()) != sizeof(stored_crc))
        throw CacheError(CacheError::Kind::truncated, "hull cache: missing checksum trailer");
    if (stored_crc != r.crc())
        throw CacheError(CacheError::Kind::bad_checksum, "hull cache: checksum mismatch");
    char extra;
    if (is.read(&extra, 1))
        throw CacheError(CacheError::Kind::truncated, "hull cache: trailing bytes after checksum");
    return data;
}

}  // namespace wlp
