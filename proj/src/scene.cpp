#include "snrlab/scene.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "snrlab/common.hpp"

namespace snrlab {

namespace {

void split_photons(std::int64_t count, std::span<double> pixels, RandomStream& stream) {
  if (pixels.size() == 1) {
    pixels[0] = static_cast<double>(count);
    return;
  }
  const std::size_t half = pixels.size() / 2;
  std::int64_t left = 0;
  if (count > 0) {
    const double p = static_cast<double>(half) / static_cast<double>(pixels.size());
    std::binomial_distribution<std::int64_t> dist(count, p);
    left = dist(stream.engine());
  }
  split_photons(left, pixels.first(half), stream);
  split_photons(count - left, pixels.subspan(half), stream);
}

void check_budget(double x0) {
  if (!(x0 >= 0.0) || !std::isfinite(x0)) throw DomainError("photon budget must be finite and >= 0");
}

// Skips whitespace and '#' comments in a PNM header, then reads one integer.
std::size_t read_header_value(std::istream& in, const std::string& path) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string discard;
      std::getline(in, discard);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  std::size_t value = 0;
  if (!(in >> value)) throw IoError("malformed PGM header in " + path);
  return value;
}

}  // namespace

SceneVector::SceneVector(std::vector<double> pixels) : pixels_(std::move(pixels)) {
  for (double v : pixels_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("scene pixels must be finite and >= 0");
  }
  brightness_ = std::accumulate(pixels_.begin(), pixels_.end(), 0.0);
}

SceneVector SceneVector::scaled(double gain) const {
  std::vector<double> out(pixels_);
  for (double& v : out) v *= gain;
  return SceneVector(std::move(out));
}

SceneVector random_uniform_scene(TransformSize n, std::int64_t x0, RandomStream& stream) {
  if (x0 < 0) throw DomainError("photon budget must be >= 0, got " + std::to_string(x0));
  std::vector<double> pixels(n.value(), 0.0);
  split_photons(x0, pixels, stream);
  return SceneVector(std::move(pixels));
}

SceneVector flat_scene(TransformSize n, double x0) {
  check_budget(x0);
  return SceneVector(std::vector<double>(n.value(), x0 / static_cast<double>(n.value())));
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image " + path.string());
  std::string magic(2, '\0');
  in.read(magic.data(), 2);
  if (!in || magic != "P5") throw IoError(path.string() + " is not a binary PGM (P5) file");

  GrayImage image;
  image.width = read_header_value(in, path.string());
  image.height = read_header_value(in, path.string());
  const std::size_t maxval = read_header_value(in, path.string());
  if (image.width == 0 || image.height == 0 || maxval == 0 || maxval > 65535) {
    throw IoError("invalid PGM dimensions or maxval in " + path.string());
  }
  in.get();  // single whitespace byte before the raster

  const std::size_t count = image.width * image.height;
  const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raster(count * bytes_per_sample);
  in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
  if (static_cast<std::size_t>(in.gcount()) != raster.size()) throw IoError("truncated PGM raster in " + path.string());

  image.pixels.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    image.pixels[i] = bytes_per_sample == 1 ? raster[i] : (raster[2 * i] << 8 | raster[2 * i + 1]);
  }
  return image;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image, unsigned maxval) {
  if (maxval == 0 || maxval > 65535) throw DomainError("PGM maxval must be in 1..65535");
  if (image.pixels.size() != image.width * image.height) throw SizeError("image raster does not match its shape");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write image " + path.string());
  out << "P5\n" << image.width << ' ' << image.height << '\n' << maxval << '\n';
  for (double v : image.pixels) {
    const auto s = static_cast<unsigned>(std::clamp(std::lround(v), 0L, static_cast<long>(maxval)));
    if (maxval > 255) out.put(static_cast<char>(s >> 8));
    out.put(static_cast<char>(s & 0xff));
  }
  if (!out) throw IoError("failed writing image " + path.string());
}

GridShape grid_shape(TransformSize n) {
  const unsigned k = n.log2();
  return {std::size_t{1} << ((k + 1) / 2), std::size_t{1} << (k / 2)};
}

std::vector<double> downsample_area(const GrayImage& image, GridShape shape) {
  if (image.width < shape.width || image.height < shape.height) {
    throw SizeError("image " + std::to_string(image.width) + "x" + std::to_string(image.height) +
                    " is smaller than the " + std::to_string(shape.width) + "x" + std::to_string(shape.height) +
                    " pixel grid");
  }
  // Each output cell covers a (possibly fractional) rectangle of source
  // pixels; partially covered source pixels contribute by overlap area.
  const double sx = static_cast<double>(image.width) / static_cast<double>(shape.width);
  const double sy = static_cast<double>(image.height) / static_cast<double>(shape.height);
  std::vector<double> out(shape.width * shape.height, 0.0);
  for (std::size_t oy = 0; oy < shape.height; ++oy) {
    const double y0 = static_cast<double>(oy) * sy;
    const double y1 = y0 + sy;
    for (std::size_t ox = 0; ox < shape.width; ++ox) {
      const double x0 = static_cast<double>(ox) * sx;
      const double x1 = x0 + sx;
      double acc = 0.0;
      for (auto iy = static_cast<std::size_t>(y0); iy < image.height && static_cast<double>(iy) < y1; ++iy) {
        const double wy = std::min(y1, iy + 1.0) - std::max(y0, static_cast<double>(iy));
        for (auto ix = static_cast<std::size_t>(x0); ix < image.width && static_cast<double>(ix) < x1; ++ix) {
          const double wx = std::min(x1, ix + 1.0) - std::max(x0, static_cast<double>(ix));
          acc += wx * wy * image.pixels[iy * image.width + ix];
        }
      }
      out[oy * shape.width + ox] = acc / (sx * sy);
    }
  }
  return out;
}

SceneVector scene_from_image(const GrayImage& image, TransformSize n, double x0) {
  check_budget(x0);
  std::vector<double> pixels = downsample_area(image, grid_shape(n));
  const double total = std::accumulate(pixels.begin(), pixels.end(), 0.0);
  if (total <= 0.0) {
    if (x0 > 0.0) throw DegenerateSceneError("image is entirely black; cannot distribute a positive photon budget");
    return SceneVector(std::vector<double>(n.value(), 0.0));
  }
  const double scale = x0 / total;
  for (double& v : pixels) v *= scale;
  return SceneVector(std::move(pixels));
}

SceneVector scene_from_image(const std::filesystem::path& path, TransformSize n, double x0) {
  return scene_from_image(read_pgm(path), n, x0);
}

}  // namespace snrlab
