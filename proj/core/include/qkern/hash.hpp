#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

namespace qkern {

/// 64-bit FNV-1a. Used for dataset/kernel provenance tags, not for security.
class Fnv1a {
  public:
    void update(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            state_ ^= p[i];
            state_ *= 0x100000001b3ull;
        }
    }
    void update(std::string_view s) { update(s.data(), s.size()); }
    template <typename T>
    void update_pod(const T& v) {
        static_assert(std::is_trivially_copyable_v<T>);
        update(&v, sizeof(T));
    }
    [[nodiscard]] std::uint64_t digest() const { return state_; }

  private:
    std::uint64_t state_ = 0xcbf29ce484222325ull;
};

inline std::uint64_t fnv1a(const void* data, std::size_t len) {
    Fnv1a h;
    h.update(data, len);
    return h.digest();
}

std::string hash_hex(std::uint64_t h);

} // namespace qkern
