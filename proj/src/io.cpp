#include "avector/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "avector/errors.hpp"

namespace avec
{

namespace
{

void put_u64(std::ostream &os, std::uint64_t v)
{
  char bytes[8];
  for (int i = 0; i < 8; ++i)
  {
    bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  }
  os.write(bytes, 8);
}

std::uint64_t get_u64(std::istream &is, const std::string &path)
{
  unsigned char bytes[8];
  if (!is.read(reinterpret_cast<char *>(bytes), 8))
  {
    throw FormatError(path + ": truncated snapshot");
  }
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
  {
    v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  }
  return v;
}

void put_f64(std::ostream &os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

double get_f64(std::istream &is, const std::string &path)
{
  return std::bit_cast<double>(get_u64(is, path));
}

std::ofstream open_out(const std::string &path)
{
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os)
  {
    throw Error("cannot open '" + path + "' for writing");
  }
  return os;
}

std::ifstream open_in(const std::string &path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
  {
    throw Error("cannot open '" + path + "'");
  }
  return is;
}

void write_header(std::ostream &os, const char *magic, const Grid &g)
{
  os.write(magic, 5);
  for (int a = 0; a < 3; ++a)
  {
    put_u64(os, g.dim(a));
  }
}

void write_component(std::ostream &os, const ScalarField &f)
{
  for (const auto &c : f.coeffs())
  {
    put_f64(os, c.real());
    put_f64(os, c.imag());
  }
}

ScalarField read_component(std::istream &is, const Grid &g, const std::string &path)
{
  ScalarField f(g);
  for (auto &c : f.coeffs())
  {
    const double re = get_f64(is, path);
    const double im = get_f64(is, path);
    c = Complex(re, im);
  }
  return f;
}

Grid read_header(std::istream &is, const std::string &expected, const std::string &path)
{
  char magic[5];
  if (!is.read(magic, 5) || std::string(magic, 5) != expected)
  {
    throw FormatError(path + ": not an " + expected + " snapshot");
  }
  std::uint64_t d[3];
  for (auto &v : d)
  {
    v = get_u64(is, path);
    if (v > (1u << 16))
    {
      throw FormatError(path + ": implausible grid dimension " + std::to_string(v));
    }
  }
  try
  {
    if (expected == "AVEC2")
    {
      if (d[2] != 1)
      {
        throw FormatError(path + ": AVEC2 snapshot must have a planar grid");
      }
      return Grid::planar(d[0], d[1]);
    }
    return Grid(d[0], d[1], d[2]);
  }
  catch (const StructuralError &e)
  {
    throw FormatError(path + ": " + e.what());
  }
}

void expect_end(std::istream &is, const std::string &path)
{
  if (is.peek() != std::char_traits<char>::eof())
  {
    throw FormatError(path + ": trailing bytes after snapshot data");
  }
}

}  // namespace

void write_snapshot(const std::string &path, const VectorField &b)
{
  auto os = open_out(path);
  write_header(os, "AVEC1", b.grid());
  for (int d = 0; d < 3; ++d)
  {
    write_component(os, b[d]);
  }
  if (!os)
  {
    throw Error("write failed for '" + path + "'");
  }
}

VectorField read_snapshot(const std::string &path)
{
  auto is = open_in(path);
  const Grid g = read_header(is, "AVEC1", path);
  ScalarField x = read_component(is, g, path);
  ScalarField y = read_component(is, g, path);
  ScalarField z = read_component(is, g, path);
  expect_end(is, path);
  return VectorField(std::move(x), std::move(y), std::move(z));
}

void write_reduced_snapshot(const std::string &path, const ReducedState &s)
{
  auto os = open_out(path);
  write_header(os, "AVEC2", s.bz.grid());
  write_component(os, s.bz);
  write_component(os, s.j);
  if (!os)
  {
    throw Error("write failed for '" + path + "'");
  }
}

ReducedState read_reduced_snapshot(const std::string &path)
{
  auto is = open_in(path);
  const Grid g = read_header(is, "AVEC2", path);
  ScalarField bz = read_component(is, g, path);
  ScalarField j = read_component(is, g, path);
  expect_end(is, path);
  return ReducedState{0.0, std::move(bz), std::move(j)};
}

std::string snapshot_magic(const std::string &path)
{
  auto is = open_in(path);
  char magic[5];
  if (!is.read(magic, 5))
  {
    throw FormatError(path + ": too short to be a snapshot");
  }
  const std::string m(magic, 5);
  if (m != "AVEC1" && m != "AVEC2")
  {
    throw FormatError(path + ": unknown snapshot magic");
  }
  return m;
}

std::vector<Vec3> read_points_csv(const std::string &path)
{
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line))
  {
    throw FormatError(path + ": empty point file");
  }
  if (!line.empty() && line.back() == '\r')
  {
    line.pop_back();
  }
  if (line != "s,x,y,z")
  {
    throw FormatError(path + ": expected header 's,x,y,z'");
  }
  std::vector<Vec3> pts;
  double last_s = -std::numeric_limits<double>::infinity();
  std::size_t lineno = 1;
  while (std::getline(in, line))
  {
    ++lineno;
    if (line.empty() || line == "\r")
    {
      continue;
    }
    double s, x, y, z;
    char c1, c2, c3;
    std::istringstream row(line);
    if (!(row >> s >> c1 >> x >> c2 >> y >> c3 >> z) || c1 != ',' || c2 != ',' || c3 != ',')
    {
      throw FormatError(path + ":" + std::to_string(lineno) + ": malformed row");
    }
    if (s < last_s)
    {
      throw FormatError(path + ":" + std::to_string(lineno) + ": s must be nondecreasing");
    }
    last_s = s;
    pts.push_back({x, y, z});
  }
  return pts;
}

void write_points_csv(const std::string &path, const std::vector<Vec3> &points)
{
  std::string out = "s,x,y,z\n";
  char buf[160];
  for (std::size_t i = 0; i < points.size(); ++i)
  {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", i, points[i][0], points[i][1],
                  points[i][2]);
    out += buf;
  }
  write_text(path, out);
}

std::string flow_csv(const FlowMap &flow)
{
  std::string out = "seed,ax,ay,az,x,y,z,F11,F12,F13,F21,F22,F23,F31,F32,F33,det\n";
  char buf[64];
  for (std::size_t p = 0; p < flow.seeds.size(); ++p)
  {
    out += std::to_string(p);
    auto add = [&](double v) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out += buf;
    };
    for (double v : flow.seeds[p])
    {
      add(v);
    }
    for (double v : flow.positions[p])
    {
      add(v);
    }
    for (double v : flow.grads[p])
    {
      add(v);
    }
    add(det3(flow.grads[p]));
    out += "\n";
  }
  return out;
}

void write_text(const std::string &path, const std::string &text)
{
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os || !(os << text))
  {
    throw Error("cannot write '" + path + "'");
  }
}

std::string read_text(const std::string &path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
  {
    throw Error("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace avec
