#include "pec/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <jpeglib.h>
#include <png.h>

namespace pec {

namespace {

void validate_raw(const RawImage& img) {
    if (img.height <= 0 || img.width <= 0)
        throw InvariantError("image dimensions must be positive");
    if (img.channels != 1 && img.channels != 3)
        throw InvariantError("image must have 1 or 3 channels");
    const std::size_t expect =
        static_cast<std::size_t>(img.height) * img.width * img.channels;
    if (img.samples.size() != expect)
        throw InvariantError("image buffer length does not match dimensions");
}

// ---------------------------------------------------------------- PNM (P5/P6)

// Skips whitespace and '#' comments between header tokens.
bool next_pnm_token(const std::vector<std::uint8_t>& b, std::size_t& pos,
                    std::string& tok) {
    while (pos < b.size()) {
        if (std::isspace(b[pos])) {
            ++pos;
        } else if (b[pos] == '#') {
            while (pos < b.size() && b[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    tok.clear();
    while (pos < b.size() && !std::isspace(b[pos])) tok.push_back(char(b[pos++]));
    return !tok.empty();
}

RawImage decode_pnm(const std::vector<std::uint8_t>& bytes) {
    std::size_t pos = 0;
    std::string tok;
    if (!next_pnm_token(bytes, pos, tok) || (tok != "P5" && tok != "P6"))
        throw IoError("not a binary PGM/PPM file (expected P5 or P6 magic)");
    const int channels = tok == "P6" ? 3 : 1;
    long w = 0, h = 0, maxval = 0;
    auto read_int = [&](long& out) {
        if (!next_pnm_token(bytes, pos, tok)) throw IoError("truncated PNM header");
        char* end = nullptr;
        out = std::strtol(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0' || out <= 0)
            throw IoError("malformed PNM header token '" + tok + "'");
    };
    read_int(w);
    read_int(h);
    read_int(maxval);
    if (maxval > 255)
        throw IoError("unsupported PNM bit depth: maxval " + std::to_string(maxval) +
                      " exceeds 255 (only 8-bit samples are supported)");
    if (pos >= bytes.size() || !std::isspace(bytes[pos]))
        throw IoError("malformed PNM header: missing separator before raster");
    ++pos;  // exactly one whitespace byte before the raster

    RawImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.channels = channels;
    const std::size_t need = static_cast<std::size_t>(w) * h * channels;
    if (bytes.size() - pos < need)
        throw IoError("truncated PNM raster: need " + std::to_string(need) +
                      " bytes, have " + std::to_string(bytes.size() - pos));
    img.samples.assign(bytes.begin() + pos, bytes.begin() + pos + need);
    if (maxval != 255)  // rescale so 0..maxval maps onto 0..255
        for (auto& s : img.samples)
            s = static_cast<std::uint8_t>((s * 255 + maxval / 2) / maxval);
    return img;
}

// --------------------------------------------------------------------- PNG

constexpr unsigned char kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

RawImage decode_png(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 29 || std::memcmp(bytes.data(), kPngSig, 8) != 0)
        throw IoError("not a PNG file (bad signature)");
    // IHDR layout: sig(8) len(4) "IHDR"(4) w(4) h(4) depth(1) ...
    const std::uint8_t bit_depth = bytes[24];
    if (bit_depth > 8)
        throw IoError("unsupported PNG bit depth: " + std::to_string(bit_depth) +
                      " bits per sample (only up to 8 is supported)");

    png_image im;
    std::memset(&im, 0, sizeof im);
    im.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&im, bytes.data(), bytes.size()))
        throw IoError(std::string("PNG decode failed: ") + im.message);

    RawImage img;
    img.width = static_cast<int>(im.width);
    img.height = static_cast<int>(im.height);
    img.channels = (im.format & PNG_FORMAT_FLAG_COLOR) ? 3 : 1;
    im.format = img.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    img.samples.resize(PNG_IMAGE_SIZE(im));
    png_color black{0, 0, 0};  // alpha, if any, is composited onto black
    if (!png_image_finish_read(&im, &black, img.samples.data(), 0, nullptr)) {
        std::string msg = im.message;
        png_image_free(&im);
        throw IoError("PNG decode failed: " + msg);
    }
    return img;
}

std::vector<std::uint8_t> do_encode_png(const RawImage& img) {
    png_image im;
    std::memset(&im, 0, sizeof im);
    im.version = PNG_IMAGE_VERSION;
    im.width = static_cast<png_uint_32>(img.width);
    im.height = static_cast<png_uint_32>(img.height);
    im.format = img.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&im, nullptr, &size, 0, img.samples.data(), 0,
                                   nullptr))
        throw IoError(std::string("PNG encode failed: ") + im.message);
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&im, out.data(), &size, 0, img.samples.data(), 0,
                                   nullptr))
        throw IoError(std::string("PNG encode failed: ") + im.message);
    out.resize(size);
    return out;
}

// -------------------------------------------------------------------- JPEG

struct JpegErr {
    jpeg_error_mgr mgr;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX] = {};
};

void jpeg_error_trampoline(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

RawImage decode_jpeg(const std::vector<std::uint8_t>& bytes) {
    jpeg_decompress_struct cinfo;
    JpegErr err;
    cinfo.err = jpeg_std_error(&err.mgr);
    err.mgr.error_exit = jpeg_error_trampoline;

    RawImage img;
    std::vector<std::uint8_t> rowbuf;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError(std::string("JPEG decode failed: ") + err.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    if (cinfo.data_precision > 8) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError("unsupported JPEG bit depth: " +
                      std::to_string(cinfo.data_precision) + " bits per sample");
    }
    cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);
    img.width = static_cast<int>(cinfo.output_width);
    img.height = static_cast<int>(cinfo.output_height);
    img.channels = cinfo.output_components == 1 ? 1 : 3;
    const std::size_t stride =
        static_cast<std::size_t>(img.width) * cinfo.output_components;
    img.samples.resize(stride * img.height);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = img.samples.data() + stride * cinfo.output_scanline;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return img;
}

}  // namespace

RawImage decode(const std::vector<std::uint8_t>& bytes, ImageFormat format) {
    switch (format) {
        case ImageFormat::Png: return decode_png(bytes);
        case ImageFormat::Jpeg: return decode_jpeg(bytes);
        case ImageFormat::Pnm: return decode_pnm(bytes);
    }
    throw IoError("unknown image format");
}

RawImage decode_auto(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSig, 8) == 0)
        return decode_png(bytes);
    if (bytes.size() >= 2 && bytes[0] == 0xff && bytes[1] == 0xd8)
        return decode_jpeg(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6'))
        return decode_pnm(bytes);
    throw IoError("unrecognized image format (supported: PNG, JPEG, binary PPM/PGM)");
}

RawImage decode_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.empty()) throw IoError("'" + path + "' is empty");
    return decode_auto(bytes);
}

std::vector<std::uint8_t> encode_png(const RawImage& img) {
    validate_raw(img);
    return do_encode_png(img);
}

std::vector<std::uint8_t> encode_pnm(const RawImage& img) {
    validate_raw(img);
    char header[64];
    std::snprintf(header, sizeof header, "P%c\n%d %d\n255\n",
                  img.channels == 3 ? '6' : '5', img.width, img.height);
    std::vector<std::uint8_t> out(header, header + std::strlen(header));
    out.insert(out.end(), img.samples.begin(), img.samples.end());
    return out;
}

void write_image_file(const std::string& path, const RawImage& img) {
    const bool png = path.size() >= 4 &&
                     path.compare(path.size() - 4, 4, ".png") == 0;
    const auto bytes = png ? encode_png(img) : encode_pnm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to '" + path + "'");
}

PixelPlane to_plane(const RawImage& img) {
    validate_raw(img);
    PixelPlane p = make_plane(img.height, img.width, img.channels);
    for (std::size_t i = 0; i < img.samples.size(); ++i)
        p.data[i] = img.samples[i] / 255.0;
    return p;
}

RawImage from_plane(const PixelPlane& p) {
    validate_shape(p);
    RawImage img;
    img.height = p.height;
    img.width = p.width;
    img.channels = p.channels;
    img.samples.resize(p.data.size());
    for (std::size_t i = 0; i < p.data.size(); ++i) {
        const double v = std::lround(p.data[i] * 255.0);
        img.samples[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
    return img;
}

PixelPlane luminance_max(const PixelPlane& p) {
    validate_shape(p);
    if (p.channels == 1) return p;
    PixelPlane out = make_plane(p.height, p.width, 1);
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        const double* px = &p.data[i * 3];
        out.data[i] = std::max({px[0], px[1], px[2]});
    }
    return out;
}

PixelPlane luminance_gray(const PixelPlane& p) {
    validate_shape(p);
    if (p.channels == 1) return p;
    PixelPlane out = make_plane(p.height, p.width, 1);
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        const double* px = &p.data[i * 3];
        out.data[i] = 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
    }
    return out;
}

Histogram256 histogram256(const PixelPlane& p, int channel) {
    validate_shape(p);
    if (channel < 0 || channel >= p.channels)
        throw InvariantError("channel index " + std::to_string(channel) +
                             " out of range for " + std::to_string(p.channels) +
                             "-channel plane");
    Histogram256 h;
    const std::size_t n = p.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double v = p.data[i * p.channels + channel];
        const int bin = std::clamp(static_cast<int>(std::floor(v * 256.0)), 0, 255);
        ++h.bins[static_cast<std::size_t>(bin)];
    }
    h.total = n;
    return h;
}

}  // namespace pec
