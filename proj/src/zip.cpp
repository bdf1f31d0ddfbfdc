#include "zip.hpp"

#include <zlib.h>

#include <cstdint>
#include <cstring>

#include "qlc/parse.hpp"

namespace qlc::detail {

namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralDirSig = 0x06054b50;
constexpr std::size_t kEndOfCentralDirSize = 22;
constexpr std::size_t kCentralHeaderSize = 46;
constexpr std::size_t kLocalHeaderSize = 30;

[[noreturn]] void fail(const std::string& message) { throw MalformedArchive(message, {}); }

class Reader {
public:
    explicit Reader(std::span<const std::byte> data) : data_(data) {}

    std::uint16_t u16(std::size_t at) const {
        need(at, 2);
        return static_cast<std::uint16_t>(byte(at) | (byte(at + 1) << 8));
    }
    std::uint32_t u32(std::size_t at) const {
        need(at, 4);
        return static_cast<std::uint32_t>(byte(at)) | (static_cast<std::uint32_t>(byte(at + 1)) << 8) |
               (static_cast<std::uint32_t>(byte(at + 2)) << 16) |
               (static_cast<std::uint32_t>(byte(at + 3)) << 24);
    }
    std::string_view text(std::size_t at, std::size_t len) const {
        need(at, len);
        return {reinterpret_cast<const char*>(data_.data()) + at, len};
    }
    std::span<const std::byte> bytes(std::size_t at, std::size_t len) const {
        need(at, len);
        return data_.subspan(at, len);
    }
    std::size_t size() const { return data_.size(); }

private:
    unsigned byte(std::size_t at) const { return std::to_integer<unsigned>(data_[at]); }
    void need(std::size_t at, std::size_t len) const {
        if (at > data_.size() || len > data_.size() - at) {
            fail("truncated zip archive");
        }
    }

    std::span<const std::byte> data_;
};

std::string inflate_raw(std::span<const std::byte> compressed, std::size_t expected) {
    std::string out(expected, '\0');
    z_stream stream{};
    if (inflateInit2(&stream, -MAX_WBITS) != Z_OK) {
        fail("cannot initialise inflater");
    }
    stream.next_in = reinterpret_cast<Bytef*>(const_cast<std::byte*>(compressed.data()));
    stream.avail_in = static_cast<uInt>(compressed.size());
    stream.next_out = reinterpret_cast<Bytef*>(out.data());
    stream.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&stream, Z_FINISH);
    const auto produced = stream.total_out;
    inflateEnd(&stream);
    if (rc != Z_STREAM_END || produced != expected) {
        fail("corrupt deflate stream");
    }
    return out;
}

}  // namespace

std::optional<std::string> read_zip_member(std::span<const std::byte> archive, std::string_view name) {
    const Reader in(archive);
    if (in.size() < kEndOfCentralDirSize) {
        fail("archive too small to be a zip file");
    }
    // The end record sits at the tail, possibly followed by a comment of up to 64 KiB.
    std::size_t eocd = in.size() - kEndOfCentralDirSize;
    const std::size_t floor = eocd > 0xffff ? eocd - 0xffff : 0;
    while (in.u32(eocd) != kEndOfCentralDirSig) {
        if (eocd == floor) {
            fail("zip end-of-central-directory record not found");
        }
        --eocd;
    }
    const std::uint16_t entries = in.u16(eocd + 10);
    std::size_t at = in.u32(eocd + 16);
    if (at == 0xffffffffU) {
        fail("zip64 archives are not supported");
    }

    for (std::uint16_t i = 0; i < entries; ++i) {
        if (in.u32(at) != kCentralHeaderSig) {
            fail("bad central directory entry");
        }
        const std::uint16_t method = in.u16(at + 10);
        const std::uint32_t crc = in.u32(at + 16);
        const std::uint32_t csize = in.u32(at + 20);
        const std::uint32_t usize = in.u32(at + 24);
        const std::uint16_t name_len = in.u16(at + 28);
        const std::uint16_t extra_len = in.u16(at + 30);
        const std::uint16_t comment_len = in.u16(at + 32);
        const std::uint32_t local = in.u32(at + 42);
        const std::string_view entry_name = in.text(at + kCentralHeaderSize, name_len);
        at += kCentralHeaderSize + name_len + extra_len + comment_len;
        if (entry_name != name) {
            continue;
        }

        if (in.u32(local) != kLocalHeaderSig) {
            fail("bad local file header");
        }
        const std::size_t data_at = local + kLocalHeaderSize + in.u16(local + 26) + in.u16(local + 28);
        const auto payload = in.bytes(data_at, csize);
        std::string content;
        if (method == 0) {
            if (csize != usize) {
                fail("stored entry has mismatched sizes");
            }
            content.assign(reinterpret_cast<const char*>(payload.data()), payload.size());
        } else if (method == 8) {
            content = inflate_raw(payload, usize);
        } else {
            fail("unsupported zip compression method " + std::to_string(method));
        }
        const auto actual = ::crc32(0L, reinterpret_cast<const Bytef*>(content.data()),
                                    static_cast<uInt>(content.size()));
        if (actual != crc) {
            fail("crc mismatch in " + std::string(name));
        }
        return content;
    }
    return std::nullopt;
}

}  // namespace qlc::detail
