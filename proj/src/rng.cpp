#include "levyid/rng.hpp"

#include <cmath>
#include <numbers>

namespace levyid {

namespace {

void push_u64(std::vector<std::uint32_t>& words, std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    push_u64(path_, seed);
    push_u64(path_, stream_id);
    reseed();
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::vector<std::uint32_t> path)
    : seed_(seed), stream_id_(stream_id), path_(std::move(path)) {
    reseed();
}

void RngStream::reseed() {
    std::seed_seq seq(path_.begin(), path_.end());
    engine_.seed(seq);
    normal_.reset();
}

RngStream RngStream::derive(std::uint64_t child) const {
    auto path = path_;
    // separator keeps derive(a).derive(b) distinct from derive of a packed value
    path.push_back(0x9e3779b9u);
    push_u64(path, child);
    return RngStream(seed_, stream_id_, std::move(path));
}

double RngStream::uniform() {
    // libstdc++'s generate_canonical can round up to exactly 1
    double u;
    do {
        u = std::generate_canonical<double, 53>(engine_);
    } while (u >= 1.0);
    return u;
}

double RngStream::uniform_open_angle() {
    constexpr double half_pi = std::numbers::pi / 2.0;
    double u;
    do {
        u = uniform();
    } while (u == 0.0);
    return half_pi * (2.0 * u - 1.0);
}

double RngStream::exponential() {
    double u;
    do {
        u = uniform();
    } while (u == 0.0);
    return -std::log(u);
}

double RngStream::normal() {
    return normal_(engine_);
}

}  // namespace levyid
