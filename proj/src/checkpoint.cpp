#include <cstdint>
#include <cstring>
#include <filesystem>
#include <type_traits>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "lagfib/errors.hpp"
#include "lagfib/exact_engine.hpp"

namespace lagfib {

// Checkpoint layout (version 1, little-endian):
//   magic "LFWIN001", u32 version, u32 k, u64 target, u64 window, u64 pos,
//   u8 mode (0 exact / 1 residue), then mode-specific payload, "LFEND\n".
// Only the filled part of the window (indices 0..min(pos, window)) is
// stored; later entries are written before ever being read, so resuming
// reproduces the uninterrupted run exactly.
// Exact payload: current, prefix, u64 count, then the stored values, each
//   as u64 byte count + magnitude bytes (least significant byte first).
// Residue payload: u32 modulus count, moduli, current row, prefix row,
//   u64 per-row count, then the stored prefix of each value row.

namespace {

constexpr char kMagic[8] = {'L', 'F', 'W', 'I', 'N', '0', '0', '1'};
constexpr char kEnd[6] = {'L', 'F', 'E', 'N', 'D', '\n'};

template <typename T>
void put(std::ostream& os, T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw CheckpointError("checkpoint: truncated stream");
    return v;
}

void put_mpz(std::ostream& os, const mpz_class& z) {
    if (z < 0) throw CheckpointError("checkpoint: negative count");
    const std::size_t nbytes = (mpz_sizeinbase(z.get_mpz_t(), 2) + 7) / 8;
    std::vector<unsigned char> buf(std::max<std::size_t>(nbytes, 1));
    std::size_t written = 0;
    mpz_export(buf.data(), &written, -1, 1, -1, 0, z.get_mpz_t());
    put<std::uint64_t>(os, written);
    os.write(reinterpret_cast<const char*>(buf.data()),
             static_cast<std::streamsize>(written));
}

mpz_class get_mpz(std::istream& is) {
    const auto n = get<std::uint64_t>(is);
    if (n > (1ull << 32)) throw CheckpointError("checkpoint: implausible value size");
    std::vector<unsigned char> buf(n);
    if (n) {
        is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
        if (!is) throw CheckpointError("checkpoint: truncated stream");
    }
    mpz_class z;
    mpz_import(z.get_mpz_t(), n, -1, 1, -1, 0, buf.data());
    return z;
}

}  // namespace

struct CheckpointCodec {
    static void save(const SequenceWindow& w, std::ostream& os) {
        os.write(kMagic, sizeof kMagic);
        put<std::uint32_t>(os, 1);
        put<std::uint32_t>(os, w.k_);
        put<std::uint64_t>(os, w.target_);
        put<std::uint64_t>(os, w.window_);
        put<std::uint64_t>(os, w.pos_);
        const bool residue = !w.moduli_.empty();
        put<std::uint8_t>(os, residue ? 1 : 0);
        const std::uint64_t stored = std::min(w.pos_, w.window_) + 1;
        if (residue) {
            put<std::uint32_t>(os, static_cast<std::uint32_t>(w.moduli_.size()));
            auto put_words = [&os](const std::uint64_t* p, std::size_t n) {
                os.write(reinterpret_cast<const char*>(p),
                         static_cast<std::streamsize>(n * sizeof(std::uint64_t)));
            };
            put_words(w.moduli_.data(), w.moduli_.size());
            put_words(w.cur_.data(), w.cur_.size());
            put_words(w.pref_.data(), w.pref_.size());
            put<std::uint64_t>(os, stored);
            for (const auto& row : w.rows_) put_words(row.data(), stored);
        } else {
            put_mpz(os, w.cur_exact_);
            put_mpz(os, w.pref_exact_);
            put<std::uint64_t>(os, stored);
            for (std::uint64_t i = 0; i < stored; ++i) put_mpz(os, w.values_[i]);
        }
        os.write(kEnd, sizeof kEnd);
        if (!os) throw CheckpointError("checkpoint: write failed");
    }

    static SequenceWindow load(std::istream& is) {
        char magic[8];
        is.read(magic, sizeof magic);
        if (!is || std::memcmp(magic, kMagic, sizeof magic) != 0)
            throw CheckpointError("checkpoint: bad magic");
        const auto version = get<std::uint32_t>(is);
        if (version != 1) throw CheckpointError("checkpoint: unsupported version");

        SequenceWindow w;
        w.k_ = get<std::uint32_t>(is);
        w.target_ = get<std::uint64_t>(is);
        w.window_ = get<std::uint64_t>(is);
        w.pos_ = get<std::uint64_t>(is);
        const auto mode = get<std::uint8_t>(is);
        if (mode == 1) {
            const auto nmod = get<std::uint32_t>(is);
            auto get_row = [&is](std::size_t n) {
                std::vector<std::uint64_t> r(n);
                is.read(reinterpret_cast<char*>(r.data()),
                        static_cast<std::streamsize>(n * sizeof(std::uint64_t)));
                if (!is) throw CheckpointError("checkpoint: truncated stream");
                return r;
            };
            w.moduli_ = get_row(nmod);
            w.cur_ = get_row(nmod);
            w.pref_ = get_row(nmod);
            const auto stored = get<std::uint64_t>(is);
            if (stored > w.window_ + 1)
                throw CheckpointError("checkpoint: stored count beyond window");
            w.rows_.reserve(nmod);
            for (std::uint32_t c = 0; c < nmod; ++c) {
                U64Buf row(w.window_ + 1);
                is.read(reinterpret_cast<char*>(row.data()),
                        static_cast<std::streamsize>(stored * sizeof(std::uint64_t)));
                if (!is) throw CheckpointError("checkpoint: truncated stream");
                w.rows_.push_back(std::move(row));
            }
        } else {
            w.cur_exact_ = get_mpz(is);
            w.pref_exact_ = get_mpz(is);
            const auto stored = get<std::uint64_t>(is);
            if (stored > w.window_ + 1)
                throw CheckpointError("checkpoint: stored count beyond window");
            w.values_.assign(w.window_ + 1, BigCount(0));
            for (std::uint64_t i = 0; i < stored; ++i) w.values_[i] = get_mpz(is);
        }
        char end[6];
        is.read(end, sizeof end);
        if (!is || std::memcmp(end, kEnd, sizeof end) != 0)
            throw CheckpointError("checkpoint: bad trailer");
        return w;
    }
};

void SequenceWindow::save(std::ostream& os) const { CheckpointCodec::save(*this, os); }

void SequenceWindow::save(const std::string& path) const {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw CheckpointError("checkpoint: cannot open " + tmp);
        save(os);
    }
    std::filesystem::rename(tmp, path);
}

SequenceWindow SequenceWindow::load(std::istream& is) { return CheckpointCodec::load(is); }

SequenceWindow SequenceWindow::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw CheckpointError("checkpoint: cannot open " + path);
    return CheckpointCodec::load(is);
}

}  // namespace lagfib
