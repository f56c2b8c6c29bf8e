#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardrods/random.hpp"
#include "hardrods/system_state.hpp"

namespace hardrods {

static_assert(std::endian::native == std::endian::little,
              "checkpoint layout is little-endian; big-endian hosts are not supported");

/**
 * Binary state checkpoint, fixed-width little-endian:
 *
 *   offset  field
 *   0       magic "HRODCKP1" (8 bytes)
 *   8       u32 version (= 1), u32 model id (0 barrier, 1 influx, 2 jump)
 *   16      f64 a, sigma2, epsilon, c, b; u64 n        (params)
 *   64      f64 t; u64 injected, killed, jumps, waiting (counters)
 *   104     u64 stream base_seed, stream_id, counter   (RNG position)
 *   128     u64 z_count, u64 x_count
 *   144     z_count f64 free coordinates, then x_count f64 centers
 *
 * Restoring the triple (state, stream) continues a run bit-exactly.
 */
struct Checkpoint {
    SystemState state;
    std::uint64_t base_seed = 0;
    std::uint64_t stream_id = 0;
    std::uint64_t counter = 0;

    RandomStream stream() const {
        RandomStream s(base_seed, stream_id);
        s.seek(counter);
        return s;
    }
};

namespace detail {

template <class T>
void put(std::string& buf, T value) {
    char raw[sizeof(T)];
    std::memcpy(raw, &value, sizeof(T));
    buf.append(raw, sizeof(T));
}

template <class T>
T take(const std::string& buf, std::size_t& off) {
    if (off + sizeof(T) > buf.size()) throw std::runtime_error("checkpoint: truncated file");
    T value;
    std::memcpy(&value, buf.data() + off, sizeof(T));
    off += sizeof(T);
    return value;
}

}  // namespace detail

inline std::string encode_checkpoint(const SystemState& state, const RandomStream& stream) {
    std::string buf;
    buf.append("HRODCKP1", 8);
    detail::put<std::uint32_t>(buf, 1);
    detail::put<std::uint32_t>(buf, static_cast<std::uint32_t>(state.model));
    detail::put<double>(buf, state.params.a);
    detail::put<double>(buf, state.params.sigma2);
    detail::put<double>(buf, state.params.epsilon);
    detail::put<double>(buf, state.params.c);
    detail::put<double>(buf, state.params.b);
    detail::put<std::uint64_t>(buf, static_cast<std::uint64_t>(state.params.n));
    detail::put<double>(buf, state.t);
    detail::put<std::uint64_t>(buf, static_cast<std::uint64_t>(state.injected));
    detail::put<std::uint64_t>(buf, static_cast<std::uint64_t>(state.killed));
    detail::put<std::uint64_t>(buf, static_cast<std::uint64_t>(state.jumps));
    detail::put<std::uint64_t>(buf, static_cast<std::uint64_t>(state.waiting));
    detail::put<std::uint64_t>(buf, stream.base_seed());
    detail::put<std::uint64_t>(buf, stream.stream_id());
    detail::put<std::uint64_t>(buf, stream.counter());
    detail::put<std::uint64_t>(buf, state.z.size());
    detail::put<std::uint64_t>(buf, state.x.size());
    for (double z : state.z) detail::put<double>(buf, z);
    for (double x : state.x) detail::put<double>(buf, x);
    return buf;
}

inline Checkpoint decode_checkpoint(const std::string& buf) {
    if (buf.size() < 8 || buf.compare(0, 8, "HRODCKP1") != 0) {
        throw std::runtime_error("checkpoint: bad magic");
    }
    std::size_t off = 8;
    const auto version = detail::take<std::uint32_t>(buf, off);
    if (version != 1) throw std::runtime_error("checkpoint: unsupported version");
    Checkpoint cp;
    cp.state.model = static_cast<Model>(detail::take<std::uint32_t>(buf, off));
    cp.state.params.a = detail::take<double>(buf, off);
    cp.state.params.sigma2 = detail::take<double>(buf, off);
    cp.state.params.epsilon = detail::take<double>(buf, off);
    cp.state.params.c = detail::take<double>(buf, off);
    cp.state.params.b = detail::take<double>(buf, off);
    cp.state.params.n = static_cast<std::int64_t>(detail::take<std::uint64_t>(buf, off));
    cp.state.t = detail::take<double>(buf, off);
    cp.state.injected = static_cast<std::int64_t>(detail::take<std::uint64_t>(buf, off));
    cp.state.killed = static_cast<std::int64_t>(detail::take<std::uint64_t>(buf, off));
    cp.state.jumps = static_cast<std::int64_t>(detail::take<std::uint64_t>(buf, off));
    cp.state.waiting = static_cast<std::int64_t>(detail::take<std::uint64_t>(buf, off));
    cp.base_seed = detail::take<std::uint64_t>(buf, off);
    cp.stream_id = detail::take<std::uint64_t>(buf, off);
    cp.counter = detail::take<std::uint64_t>(buf, off);
    const auto zn = detail::take<std::uint64_t>(buf, off);
    const auto xn = detail::take<std::uint64_t>(buf, off);
    cp.state.z.resize(zn);
    for (auto& z : cp.state.z) z = detail::take<double>(buf, off);
    cp.state.x.resize(xn);
    for (auto& x : cp.state.x) x = detail::take<double>(buf, off);
    return cp;
}

inline void write_checkpoint(const std::string& path, const SystemState& state,
                             const RandomStream& stream) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
    const std::string buf = encode_checkpoint(state, stream);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

inline Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_checkpoint(buf);
}

}  // namespace hardrods
