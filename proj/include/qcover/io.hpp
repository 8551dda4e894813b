#pragma once

// The .qcd design file: a text header followed by one hex-packed block key
// per line.  The packing is the frozen subspace key layout (row-major base-q
// digits, little-endian), so rewriting a file read back is byte-identical.
// Files ending in .gz go through zlib.
//
//   qcd 1
//   q 2 p 2 e 1 modulus 01
//   n 6 k 3 r 2
//   family 632
//   meta X 56
//   ...
//   blocks 105
//   <hex key> x105

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <zlib.h>

#include "qcover/design.hpp"
#include "qcover/enumerate.hpp"
#include "qcover/field.hpp"
#include "qcover/spreads.hpp"

namespace qcover {

inline std::string qcd_to_string(const Field& F, const Design& D) {
    std::ostringstream os;
    os << "qcd 1\n";
    os << "q " << F.q() << " p " << F.p() << " e " << F.e() << " modulus ";
    for (size_t i = 0; i < F.modulus().size(); ++i) os << static_cast<int>(F.modulus()[i]);
    os << "\n";
    os << "n " << D.n << " k " << D.k << " r " << D.r << "\n";
    os << "family " << D.family << "\n";
    for (const auto& [key, val] : D.meta) os << "meta " << key << " " << val << "\n";
    os << "blocks " << D.blocks.size() << "\n";
    for (const auto& b : D.blocks) {
        if (b.k() != D.k || b.n != D.n) throw std::runtime_error("qcd write: block shape mismatch");
        os << key_hex(b, F.q()) << "\n";
    }
    return os.str();
}

struct QcdFile {
    int q = 0, p = 0, e = 0;
    Design design;
};

inline QcdFile qcd_from_string(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    QcdFile out;
    Design& D = out.design;
    std::uint64_t n_blocks = 0;
    bool in_body = false;
    std::uint64_t body_seen = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!in_body) {
            std::istringstream ls(line);
            std::string tag;
            ls >> tag;
            if (tag == "qcd") {
                int version = 0;
                ls >> version;
                if (version != 1) throw std::runtime_error("qcd read: unsupported version");
            } else if (tag == "q") {
                std::string pt, et, mt;
                ls >> out.q >> pt >> out.p >> et >> out.e >> mt;
                if (pt != "p" || et != "e" || mt != "modulus") throw std::runtime_error("qcd read: bad field line");
            } else if (tag == "n") {
                std::string kt, rt;
                ls >> D.n >> kt >> D.k >> rt >> D.r;
                if (kt != "k" || rt != "r") throw std::runtime_error("qcd read: bad shape line");
            } else if (tag == "family") {
                ls >> D.family;
            } else if (tag == "meta") {
                std::string key, val;
                ls >> key >> val;
                D.meta[key] = val;
            } else if (tag == "blocks") {
                ls >> n_blocks;
                in_body = true;
                D.blocks.reserve(n_blocks);
            } else {
                throw std::runtime_error("qcd read: unknown header tag '" + tag + "'");
            }
        } else {
            if (body_seen == n_blocks) throw std::runtime_error("qcd read: extra block lines");
            D.blocks.push_back(subspace_from_hex(line, out.q, D.n, D.k));
            ++body_seen;
        }
    }
    if (out.q == 0 || D.n == 0) throw std::runtime_error("qcd read: missing header");
    if (body_seen != n_blocks) throw std::runtime_error("qcd read: block count mismatch");
    D.q = out.q;
    return out;
}

// A parsed design is only trusted after this: every record must already be
// canonical RREF of the declared shape.
inline void qcd_validate(const Field& F, const Design& D) {
    for (const auto& b : D.blocks) {
        if (b.n != D.n || b.k() != D.k) throw std::runtime_error("qcd validate: block shape mismatch");
        Subspace re = span(F, b.gens);
        if (!(re == b)) throw std::runtime_error("qcd validate: block not in canonical form");
    }
}

inline bool has_suffix(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

inline void write_file(const std::string& path, const std::string& text) {
    if (has_suffix(path, ".gz")) {
        gzFile f = gzopen(path.c_str(), "wb");
        if (!f) throw std::runtime_error("cannot open " + path);
        if (gzwrite(f, text.data(), static_cast<unsigned>(text.size())) !=
            static_cast<int>(text.size())) {
            gzclose(f);
            throw std::runtime_error("short write to " + path);
        }
        gzclose(f);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << text;
}

inline std::string read_file(const std::string& path) {
    if (has_suffix(path, ".gz")) {
        gzFile f = gzopen(path.c_str(), "rb");
        if (!f) throw std::runtime_error("cannot open " + path);
        std::string out;
        char buf[1 << 16];
        int got;
        while ((got = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<size_t>(got));
        gzclose(f);
        return out;
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline void write_qcd(const std::string& path, const Field& F, const Design& D) {
    write_file(path, qcd_to_string(F, D));
}

inline QcdFile read_qcd(const std::string& path) { return qcd_from_string(read_file(path)); }

} // namespace qcover
