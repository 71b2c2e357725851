#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "io.hpp"
#include "js.hpp"

namespace bipcomb {

// Bump whenever a change could alter a computed matrix; old entries are then ignored.
inline constexpr const char* kSolverVersion = "bipcomb-solver/1";
inline constexpr const char* kCacheEnv = "BIPCOMB_CACHE_DIR";

inline std::uint64_t fnv1a64(const std::string& s)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string cache_key_text(const Params& p, const BlockKey& key, const std::string& version)
{
    std::string s = version + ";e=" + std::to_string(p.e) + ";kappa=" + std::to_string(p.kappa[0]) + "," +
                    std::to_string(p.kappa[1]) + ";charp=" + std::to_string(p.charp) + ";n=" + std::to_string(key.n) +
                    ";content=";
    for (std::size_t t = 0; t < key.content.size(); ++t)
        s += (t ? "," : "") + std::to_string(key.content[t]);
    return s;
}

class MatrixCache {
public:
    explicit MatrixCache(std::filesystem::path dir, std::string version = kSolverVersion)
        : dir_(std::move(dir)), version_(std::move(version))
    {
    }

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path path_for(const Params& p, const BlockKey& key) const
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(cache_key_text(p, key, version_))));
        return dir_ / (std::string(buf) + ".json");
    }

    // Missing, unreadable, stale or colliding entries all count as misses.
    std::optional<DecompMatrix> load(const Params& p, const BlockKey& key) const
    {
        std::ifstream in(path_for(p, key), std::ios::binary);
        if (!in)
            return std::nullopt;
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            json j = json::parse(ss.str());
            if (j.at("version") != version_ || j.at("key") != cache_key_text(p, key, version_))
                return std::nullopt;
            DecompMatrix m = matrix_from_json(j.at("matrix"));
            if (m.block != key)
                return std::nullopt;
            return m;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    // Writes through a temporary file so concurrent writers never leave a torn entry.
    void store(const Params& p, const BlockKey& key, const DecompMatrix& m) const
    {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        json j = json::object();
        j["version"] = version_;
        j["key"] = cache_key_text(p, key, version_);
        j["matrix"] = to_json(m);
        static std::atomic<unsigned> seq{0};
        auto target = path_for(p, key);
        auto tmp = target;
        tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "-" +
               std::to_string(seq++);
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                return;  // a cache that cannot be written is just a slower run
            out << j.dump() << "\n";
            if (!out)
                return;
        }
        std::filesystem::rename(tmp, target, ec);
        if (ec)
            std::filesystem::remove(tmp, ec);
    }

private:
    std::filesystem::path dir_;
    std::string version_;
};

inline std::optional<std::filesystem::path> cache_dir_from_env()
{
    const char* v = std::getenv(kCacheEnv);
    if (!v || !*v)
        return std::nullopt;
    return std::filesystem::path(v);
}

inline DecompMatrix cached_decomposition_matrix(const BlockKey& key, const Params& p, const MatrixCache* cache,
                                                unsigned threads = 0)
{
    if (cache)
        if (auto hit = cache->load(p, key))
            return *hit;
    DecompMatrix m = decomposition_matrix(key, p, threads);
    if (cache)
        cache->store(p, key, m);
    return m;
}

}  // namespace bipcomb
