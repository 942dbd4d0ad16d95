#include "sch/geometry.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

#include "sch/io.hpp"

namespace sch {

CellGeometry CellGeometry::empty() { return CellGeometry{}; }

CellGeometry CellGeometry::disc(double r) {
  if (!(r > 0.0 && r < 0.5))
    throw ConfigError("disc radius must satisfy 0 < r < 0.5, got " + format_double(r));
  CellGeometry g;
  g.kind = Kind::Disc;
  g.radius = r;
  return g;
}

CellGeometry CellGeometry::slab(double a, double b) {
  if (!(a >= 0.0 && a < b && b <= 1.0))
    throw ConfigError("slab bounds must satisfy 0 <= a < b <= 1, got " +
                      format_double(a) + ":" + format_double(b));
  CellGeometry g;
  g.kind = Kind::Slab;
  g.lo = a;
  g.hi = b;
  return g;
}

CellGeometry CellGeometry::parse(std::string_view text) {
  auto split = [](std::string_view s) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t next = s.find(':', pos);
      if (next == std::string_view::npos) next = s.size();
      parts.emplace_back(s.substr(pos, next - pos));
      pos = next + 1;
    }
    return parts;
  };
  auto parts = split(text);
  const std::string& head = parts[0];
  try {
    if (head == "empty" && parts.size() == 1) return empty();
    if (head == "disc" && parts.size() == 2) return disc(std::stod(parts[1]));
    if (head == "slab" && parts.size() == 3)
      return slab(std::stod(parts[1]), std::stod(parts[2]));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("malformed geometry value: " + std::string(text));
  }
  throw ConfigError("unknown geometry: " + std::string(text) +
                    " (expected empty | disc:<r> | slab:<a>:<b>)");
}

bool CellGeometry::indicator(double y1, double y2) const {
  switch (kind) {
    case Kind::Empty:
      return true;
    case Kind::Disc: {
      const double dx = y1 - 0.5, dy = y2 - 0.5;
      return dx * dx + dy * dy > radius * radius;
    }
    case Kind::Slab:
      return y2 > lo && y2 < hi;
  }
  return true;
}

std::string CellGeometry::label() const {
  switch (kind) {
    case Kind::Empty:
      return "empty";
    case Kind::Disc:
      return "disc:" + format_double(radius);
    case Kind::Slab:
      return "slab:" + format_double(lo) + ":" + format_double(hi);
  }
  return "empty";
}

double CellGeometry::pore_area() const {
  switch (kind) {
    case Kind::Empty:
      return 1.0;
    case Kind::Disc:
      return 1.0 - std::numbers::pi * radius * radius;
    case Kind::Slab:
      return hi - lo;
  }
  return 1.0;
}

double CellGeometry::solid_perimeter() const {
  switch (kind) {
    case Kind::Empty:
      return 0.0;
    case Kind::Disc:
      return 2.0 * std::numbers::pi * radius;
    case Kind::Slab:
      return 2.0;  // two plane walls of unit length
  }
  return 0.0;
}

bool connected_on_torus(const std::vector<std::uint8_t>& cell, int n) {
  int total = 0;
  int seed = -1;
  for (int c = 0; c < n * n; ++c) {
    if (cell[c]) {
      ++total;
      if (seed < 0) seed = c;
    }
  }
  if (total == 0) return false;
  std::vector<std::uint8_t> seen(cell.size(), 0);
  std::queue<int> queue;
  queue.push(seed);
  seen[seed] = 1;
  int reached = 1;
  auto wrap = [n](int v) { return v < 0 ? v + n : (v >= n ? v - n : v); };
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop();
    const int i = c % n, j = c / n;
    const int nbrs[4] = {j * n + wrap(i - 1), j * n + wrap(i + 1),
                         wrap(j - 1) * n + i, wrap(j + 1) * n + i};
    for (int nb : nbrs) {
      if (cell[nb] && !seen[nb]) {
        seen[nb] = 1;
        ++reached;
        queue.push(nb);
      }
    }
  }
  return reached == total;
}

namespace {

void derive_faces(Mask& m) {
  const int n = m.n;
  m.face_x.assign(static_cast<std::size_t>(n) * n, 0);
  m.face_y.assign(static_cast<std::size_t>(n) * n, 0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int f = j * n + i;
      m.face_x[f] = static_cast<std::uint8_t>(m.cell_at(i - 1, j) && m.cell_at(i, j));
      m.face_y[f] = static_cast<std::uint8_t>(m.cell_at(i, j - 1) && m.cell_at(i, j));
    }
  }
}

} // namespace

CellMask build_cell_mask(const CellGeometry& geom, int n) {
  if (n < 4) throw ConfigError("cell mask resolution must be >= 4, got " + std::to_string(n));
  CellMask m;
  m.n = n;
  m.h = 1.0 / n;
  m.cell.assign(static_cast<std::size_t>(n) * n, 0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double y1 = (i + 0.5) * m.h;
      const double y2 = (j + 0.5) * m.h;
      m.cell[j * n + i] = static_cast<std::uint8_t>(geom.indicator(y1, y2));
    }
  }
  if (!connected_on_torus(m.cell, n))
    throw ConfigError("pore part of geometry " + geom.label() +
                      " is empty or disconnected at resolution " + std::to_string(n));
  derive_faces(m);
  m.active_cells = 0;
  for (auto c : m.cell) m.active_cells += c;
  return m;
}

DomainMask build_domain_mask(const CellGeometry& geom, int k, int n_cell) {
  if (k < 1) throw ConfigError("eps must be the reciprocal of an integer k >= 1");
  const CellMask unit = build_cell_mask(geom, n_cell);
  DomainMask m;
  m.k = k;
  m.n_cell = n_cell;
  m.n = k * n_cell;
  m.h = 1.0 / m.n;
  m.cell.assign(static_cast<std::size_t>(m.n) * m.n, 0);
  for (int j = 0; j < m.n; ++j)
    for (int i = 0; i < m.n; ++i)
      m.cell[j * m.n + i] = unit.cell[(j % n_cell) * n_cell + (i % n_cell)];
  derive_faces(m);
  m.active_cells = 0;
  for (auto c : m.cell) m.active_cells += c;
  return m;
}

double porosity(const Mask& mask) {
  return static_cast<double>(mask.active_cells) /
         (static_cast<double>(mask.n) * mask.n);
}

std::uint64_t mask_hash(const Mask& mask) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](std::uint64_t byte) {
    hash ^= byte;
    hash *= 0x100000001b3ULL;
  };
  for (int shift = 0; shift < 32; shift += 8) mix((static_cast<std::uint64_t>(mask.n) >> shift) & 0xff);
  for (auto c : mask.cell) mix(c);
  return hash;
}

} // namespace sch
