#include "pfm_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace salvis {

void write_pfm(const std::filesystem::path& path, const ScenePlane& plane) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot open " + path.string());
  out << "Pf\n" << plane.width << " " << plane.height << "\n-1.0\n";
  for (int y = plane.height - 1; y >= 0; --y) {
    out.write(reinterpret_cast<const char*>(&plane.data[static_cast<size_t>(y) * plane.width]),
              static_cast<std::streamsize>(plane.width) * sizeof(float));
  }
  if (!out) throw Error(Errc::io, "short write to " + path.string());
}

ScenePlane read_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::missing_file, "cannot open " + path.string());

  std::string magic;
  int width = 0, height = 0;
  double scale = 0.0;
  in >> magic >> width >> height >> scale;
  if (magic != "Pf" || width <= 0 || height <= 0)
    throw Error(Errc::io, path.string() + " is not a single-channel PFM");
  if (scale >= 0.0)
    throw Error(Errc::io, path.string() + ": big-endian PFM not supported");
  in.get();  // consume the single whitespace after the scale line

  ScenePlane plane(width, height);
  for (int y = height - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(&plane.data[static_cast<size_t>(y) * width]),
            static_cast<std::streamsize>(width) * sizeof(float));
  }
  if (!in) throw Error(Errc::io, "truncated PFM " + path.string());
  return plane;
}

}  // namespace salvis
