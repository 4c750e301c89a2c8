#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace facepool::bankio {

// Dense row-major float32 feature storage; row i is media feature i.
struct FeatureBank {
    std::uint32_t dim = 0;
    std::vector<float> data;

    std::uint64_t count() const { return dim == 0 ? 0 : data.size() / dim; }
    const float* row(std::uint64_t index) const { return data.data() + index * dim; }
    float* row(std::uint64_t index) { return data.data() + index * dim; }
};

// On-disk layout: "FTBK" magic, u32 version (=1), u32 dim, u64 count,
// then count*dim IEEE-754 binary32 values, all little-endian, row-major.
void write_feature_bank(const FeatureBank& bank, const std::string& path);
FeatureBank read_feature_bank(const std::string& path);

}  // namespace facepool::bankio
