#include "mot/simd/dispatch.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace mot::simd {

const Ops& scalar_ops();
const Ops* avx2_ops_or_null();
const Ops* avx512_ops_or_null();

bool tier_available(Tier t) {
    switch (t) {
        case Tier::kScalar: return true;
        case Tier::kAvx2: return avx2_ops_or_null() != nullptr;
        case Tier::kAvx512: return avx512_ops_or_null() != nullptr;
    }
    return false;
}

const Ops& ops_for(Tier t) {
    switch (t) {
        case Tier::kScalar: return scalar_ops();
        case Tier::kAvx2:
            if (const Ops* o = avx2_ops_or_null()) return *o;
            throw std::runtime_error("simd tier avx2 not available on this cpu");
        case Tier::kAvx512:
            if (const Ops* o = avx512_ops_or_null()) return *o;
            throw std::runtime_error("simd tier avx512 not available on this cpu");
    }
    throw std::runtime_error("unknown simd tier");
}

namespace {

Tier best_tier() {
    if (tier_available(Tier::kAvx512)) return Tier::kAvx512;
    if (tier_available(Tier::kAvx2)) return Tier::kAvx2;
    return Tier::kScalar;
}

Tier select_tier() {
    const char* req = std::getenv("MOT_SIMD");
    if (req == nullptr || *req == '\0') return best_tier();

    Tier want;
    if (std::strcmp(req, "scalar") == 0) {
        want = Tier::kScalar;
    } else if (std::strcmp(req, "avx2") == 0) {
        want = Tier::kAvx2;
    } else if (std::strcmp(req, "avx512") == 0) {
        want = Tier::kAvx512;
    } else {
        std::fprintf(stderr,
                     "warning: MOT_SIMD=%s not recognized (scalar|avx2|avx512); "
                     "using best available\n",
                     req);
        return best_tier();
    }
    if (!tier_available(want)) {
        std::fprintf(stderr,
                     "warning: MOT_SIMD=%s not available on this cpu; "
                     "using best available\n",
                     req);
        return best_tier();
    }
    return want;
}

}  // namespace

Tier active_tier() {
    static const Tier t = select_tier();
    return t;
}

const Ops& ops() {
    static const Ops& o = ops_for(active_tier());
    return o;
}

}  // namespace mot::simd
