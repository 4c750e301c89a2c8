#include "core/bank_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>

#include "core/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "feature bank I/O assumes a little-endian host");
static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559,
              "feature bank I/O assumes IEEE-754 binary32 floats");

namespace facepool::bankio {

namespace {

constexpr char kMagic[4] = {'F', 'T', 'B', 'K'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_le(std::ofstream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
bool read_le(std::ifstream& in, T& value) {
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    return in.gcount() == static_cast<std::streamsize>(sizeof(T));
}

}  // namespace

void write_feature_bank(const FeatureBank& bank, const std::string& path) {
    if (bank.dim != 0 && bank.data.size() % bank.dim != 0)
        raise(ErrorCode::InvalidArgument, "bank data size is not a multiple of dim");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::IoFailure, "cannot open for writing: " + path);
    out.write(kMagic, sizeof(kMagic));
    write_le(out, kVersion);
    write_le(out, bank.dim);
    write_le(out, bank.count());
    if (!bank.data.empty())
        out.write(reinterpret_cast<const char*>(bank.data.data()),
                  static_cast<std::streamsize>(bank.data.size() * sizeof(float)));
    out.flush();
    if (!out) raise(ErrorCode::IoFailure, "write failed: " + path);
}

FeatureBank read_feature_bank(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::IoFailure, "cannot open for reading: " + path);

    char magic[4] = {};
    in.read(magic, sizeof(magic));
    if (in.gcount() != static_cast<std::streamsize>(sizeof(magic)))
        raise(ErrorCode::TruncatedPayload, "file shorter than header: " + path);
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        raise(ErrorCode::BadMagic, "bad magic bytes: " + path);

    std::uint32_t version = 0;
    if (!read_le(in, version))
        raise(ErrorCode::TruncatedPayload, "header missing version: " + path);
    if (version != kVersion)
        raise(ErrorCode::VersionUnsupported,
              "unsupported format version " + std::to_string(version) + ": " + path);

    std::uint32_t dim = 0;
    std::uint64_t count = 0;
    if (!read_le(in, dim) || !read_le(in, count))
        raise(ErrorCode::TruncatedPayload, "header missing dimensions: " + path);

    if (dim != 0 && count > std::numeric_limits<std::uint64_t>::max() / (4ull * dim))
        raise(ErrorCode::TruncatedPayload, "header claims impossible payload size: " + path);
    const std::uint64_t values = count * static_cast<std::uint64_t>(dim);

    FeatureBank bank;
    bank.dim = dim;
    bank.data.resize(values);
    if (values != 0) {
        in.read(reinterpret_cast<char*>(bank.data.data()),
                static_cast<std::streamsize>(values * sizeof(float)));
        if (in.gcount() != static_cast<std::streamsize>(values * sizeof(float)))
            raise(ErrorCode::TruncatedPayload, "payload shorter than declared: " + path);
    }
    // Trailing bytes also violate the declared length.
    char extra = 0;
    in.read(&extra, 1);
    if (in.gcount() != 0)
        raise(ErrorCode::TruncatedPayload, "payload longer than declared: " + path);
    return bank;
}

}  // namespace facepool::bankio
