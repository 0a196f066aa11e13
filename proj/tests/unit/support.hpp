#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "honeyauth/bytes.hpp"
#include "honeyauth/checker_net.hpp"
#include "honeyauth/honeychecker.hpp"
#include "honeyauth/rng.hpp"

namespace testing {

inline std::filesystem::path data_dir() { return HONEYAUTH_DATA_DIR; }

class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        honeyauth::Rng rng(static_cast<std::uint64_t>(reinterpret_cast<std::uintptr_t>(this)) ^
                           static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count()));
        path_ = base / ("honeyauth-test-" + std::to_string(rng.next()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

// In-process checker backed by a real CheckerIndex; counts calls.
class LocalChecker : public honeyauth::CheckerClient {
public:
    honeyauth::CheckVerdict check(std::string_view uid, std::size_t index) override {
        ++calls;
        if (down) throw honeyauth::CheckerUnavailable("checker down");
        return index_.check(uid, index);
    }
    honeyauth::CheckerIndex& index() { return index_; }

    std::atomic<int> calls{0};
    bool down = false;

private:
    honeyauth::CheckerIndex index_;
};

inline honeyauth::Bytes fixed_salt(std::uint8_t start = 0) {
    honeyauth::Bytes s(16);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<std::uint8_t>(start + i);
    return s;
}

}  // namespace testing
