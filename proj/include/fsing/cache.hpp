#ifndef FSING_CACHE_HPP
#define FSING_CACHE_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>

#include "ideal.hpp"
#include "poly.hpp"

namespace fsing {

inline std::uint64_t fnv64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string fnv64_hex(const std::string& data) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv64(data)));
    return buf;
}

/// Canonical text form of a computation key: characteristic, variables,
/// order, generators, operation tag. Any change produces a different hash.
inline std::string cache_key(const RingContext& ctx, const std::vector<Poly>& gens,
                             const std::string& op) {
    std::ostringstream os;
    os << "p=" << ctx.p() << ";vars=";
    for (const auto& v : ctx.vars) os << v << ",";
    os << ";order=" << (ctx.order.kind == OrderKind::Lex ? "lex" : "grevlex")
       << ";blk=" << ctx.order.elim_block << ";op=" << op << ";gens=";
    for (const auto& g : gens) os << poly_to_string(ctx, g) << ";";
    return fnv64_hex(os.str());
}

/// File-backed store of computation results keyed by content hash. Entries
/// carry a checksum; corrupt entries are skipped with a warning and the
/// caller recomputes. Writes go through a temp file and an atomic rename.
class Cache {
public:
    Cache() = default;
    Cache(std::string dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {}

    bool enabled() const { return enabled_ && !dir_.empty(); }

    std::optional<std::string> lookup(const std::string& key) const {
        if (!enabled()) return std::nullopt;
        std::filesystem::path p = std::filesystem::path(dir_) / (key + ".entry");
        std::ifstream in(p, std::ios::binary);
        if (!in) return std::nullopt;
        std::string header, checksum;
        if (!std::getline(in, header) || header != "fsing-cache-v1" ||
            !std::getline(in, checksum)) {
            std::cerr << "warning: corrupt cache entry " << p.string() << ", recomputing\n";
            return std::nullopt;
        }
        std::ostringstream body;
        body << in.rdbuf();
        std::string payload = body.str();
        if (fnv64_hex(payload) != checksum) {
            std::cerr << "warning: corrupt cache entry " << p.string() << ", recomputing\n";
            return std::nullopt;
        }
        return payload;
    }

    void store(const std::string& key, const std::string& payload) const {
        if (!enabled()) return;
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        std::filesystem::path final_path = std::filesystem::path(dir_) / (key + ".entry");
        std::filesystem::path tmp = final_path;
        tmp += ".tmp" + std::to_string(::getpid());
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) return;
            out << "fsing-cache-v1\n" << fnv64_hex(payload) << "\n" << payload;
        }
        std::filesystem::rename(tmp, final_path, ec);
        if (ec) std::filesystem::remove(tmp, ec);
    }

private:
    std::string dir_;
    bool enabled_ = false;
};

// ---- serialization of Groebner bases for caching ----

inline std::string serialize_polys(const RingContext& ctx, const std::vector<Poly>& ps) {
    std::ostringstream os;
    for (const auto& f : ps) os << poly_to_string(ctx, f) << "\n";
    return os.str();
}

/// Reduced GB with cache assistance; parse failures count as corruption.
template <typename ParsePoly>
inline std::vector<Poly> cached_groebner(const RingContext& ctx, const Ideal& I,
                                         const Cache& cache, ParsePoly parse) {
    if (!cache.enabled()) return groebner(ctx, I);
    std::string key = cache_key(ctx, I.gens, "gb");
    if (auto hit = cache.lookup(key)) {
        std::vector<Poly> out;
        std::istringstream in(*hit);
        std::string line;
        bool ok = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            try {
                out.push_back(parse(ctx, line));
            } catch (const std::exception&) {
                ok = false;
                break;
            }
        }
        if (ok) {
            I.gb = out;
            return out;
        }
        std::cerr << "warning: unparsable cache entry for key " << key << ", recomputing\n";
    }
    auto gb = groebner(ctx, I);
    cache.store(key, serialize_polys(ctx, gb));
    return gb;
}

} // namespace fsing

#endif
