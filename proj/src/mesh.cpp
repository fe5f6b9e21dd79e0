#include "vem/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

namespace vem {

namespace {

// 53-bit uniform in [0,1) from two engine draws; avoids the
// implementation-defined std::uniform_real_distribution so that equal seeds
// give byte-identical meshes on any platform.
double canonical_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

double cross2(const Vector2& a, const Vector2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Proper or touching intersection of open segments (a,b) and (c,d).
bool segments_intersect(const Vector2& a, const Vector2& b, const Vector2& c,
                        const Vector2& d) {
  const double d1 = cross2(b - a, c - a);
  const double d2 = cross2(b - a, d - a);
  const double d3 = cross2(d - c, a - c);
  const double d4 = cross2(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  return false;
}

}  // namespace

void PolyMesh::finalize() {
  const int nv = n_vertices();
  edges.clear();
  cell_edges.assign(cells.size(), {});
  std::map<std::pair<int, int>, int> edge_of;
  for (int c = 0; c < n_cells(); ++c) {
    const auto& cell = cells[c];
    if (cell.size() < 3) throw ParseError("cell " + std::to_string(c) + " has fewer than 3 vertices");
    cell_edges[c].resize(cell.size());
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const int va = cell[i];
      const int vb = cell[(i + 1) % cell.size()];
      if (va < 0 || va >= nv || vb < 0 || vb >= nv)
        throw ParseError("cell " + std::to_string(c) + " references vertex out of range");
      if (va == vb) throw ParseError("cell " + std::to_string(c) + " repeats a vertex on an edge");
      const auto key = std::minmax(va, vb);
      auto it = edge_of.find(key);
      int e;
      if (it == edge_of.end()) {
        e = static_cast<int>(edges.size());
        edge_of.emplace(key, e);
        MeshEdge me;
        me.a = key.first;
        me.b = key.second;
        me.cell[0] = c;
        edges.push_back(me);
      } else {
        e = it->second;
        if (edges[e].cell[1] != -1)
          throw ParseError("edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                           ") shared by more than two cells");
        edges[e].cell[1] = c;
      }
      cell_edges[c][i] = e;
    }
  }
  boundary_edge.assign(edges.size(), false);
  boundary_vertex.assign(nv, false);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].cell[1] == -1) {
      boundary_edge[e] = true;
      boundary_vertex[edges[e].a] = true;
      boundary_vertex[edges[e].b] = true;
    }
  }
}

bool PolyMesh::cell_edge_forward(int c, int local_edge) const {
  const auto& cell = cells[c];
  const int va = cell[local_edge];
  return edges[cell_edges[c][local_edge]].a == va;
}

double polygon_signed_area(const std::vector<Vector2>& poly) {
  double s = 0.0;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vector2& a = poly[i];
    const Vector2& b = poly[(i + 1) % m];
    s += cross2(a, b);
  }
  return 0.5 * s;
}

bool polygon_is_simple(const std::vector<Vector2>& poly) {
  const std::size_t m = poly.size();
  if (m < 3) return false;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      // skip adjacent sides (they share a vertex)
      if (j == i || (j + 1) % m == i || (i + 1) % m == j) continue;
      if (segments_intersect(poly[i], poly[(i + 1) % m], poly[j], poly[(j + 1) % m]))
        return false;
    }
  }
  return true;
}

bool point_in_polygon(const std::vector<Vector2>& poly, const Vector2& p) {
  bool inside = false;
  const std::size_t m = poly.size();
  for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
    const Vector2& a = poly[i];
    const Vector2& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double t = (p.y() - a.y()) / (b.y() - a.y());
      if (p.x() < a.x() + t * (b.x() - a.x())) inside = !inside;
    }
  }
  return inside;
}

ElementGeometry element_geometry(const std::vector<Vector2>& polygon) {
  ElementGeometry g;
  g.vertex = polygon;
  const std::size_t m = polygon.size();
  double a2 = 0.0;
  Vector2 cnum = Vector2::Zero();
  for (std::size_t i = 0; i < m; ++i) {
    const Vector2& p = polygon[i];
    const Vector2& q = polygon[(i + 1) % m];
    const double w = cross2(p, q);
    a2 += w;
    cnum += w * (p + q);
  }
  g.area = 0.5 * a2;
  g.centroid = cnum / (3.0 * a2);
  g.diameter = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      g.diameter = std::max(g.diameter, (polygon[i] - polygon[j]).norm());
  g.edge_length.resize(m);
  g.edge_normal.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vector2 d = polygon[(i + 1) % m] - polygon[i];
    g.edge_length[i] = d.norm();
    g.edge_normal[i] = Vector2(d.y(), -d.x()) / g.edge_length[i];
    g.perimeter += g.edge_length[i];
  }
  return g;
}

ElementGeometry element_geometry(const PolyMesh& mesh, int cell) {
  std::vector<Vector2> poly;
  poly.reserve(mesh.cells[cell].size());
  for (int v : mesh.cells[cell]) poly.push_back(mesh.vertices[v]);
  return element_geometry(poly);
}

namespace {

CellRegularity cell_regularity(const std::vector<Vector2>& poly) {
  CellRegularity r;
  const double area = polygon_signed_area(poly);
  r.ccw = area > 0.0;
  r.simple = polygon_is_simple(poly);
  if (!r.simple || !r.ccw) return r;
  const ElementGeometry g = element_geometry(poly);
  r.min_edge_ratio = *std::min_element(g.edge_length.begin(), g.edge_length.end()) / g.diameter;

  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vector2 din = poly[i] - poly[(i + m - 1) % m];
    const Vector2 dout = poly[(i + 1) % m] - poly[i];
    if (cross2(din, dout) < 0.0) r.has_reflex_vertex = true;
  }

  // Star-shapedness proxy: try the centroid and a 5x5 grid of interior
  // candidates; a kernel point must lie left of every CCW side line.
  std::vector<Vector2> candidates{g.centroid};
  double xmin = poly[0].x(), xmax = xmin, ymin = poly[0].y(), ymax = ymin;
  for (const auto& p : poly) {
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
  }
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j)
      candidates.emplace_back(xmin + (xmax - xmin) * i / 6.0, ymin + (ymax - ymin) * j / 6.0);

  double best = 0.0;
  for (const auto& c : candidates) {
    double rad = std::numeric_limits<double>::max();
    bool kernel = true;
    for (std::size_t i = 0; i < m; ++i) {
      const Vector2 a = poly[i];
      const Vector2 d = poly[(i + 1) % m] - a;
      const double dist = cross2(d, c - a) / d.norm();  // >0 strictly inside
      if (dist <= 0.0) {
        kernel = false;
        break;
      }
      rad = std::min(rad, dist);
    }
    if (kernel) best = std::max(best, rad);
  }
  r.inradius_ratio = best / g.diameter;
  return r;
}

}  // namespace

RegularityReport validate(const PolyMesh& mesh, double theta) {
  RegularityReport rep;
  rep.theta = theta;
  rep.cell.resize(mesh.n_cells());
  rep.all_simple_ccw = true;
  rep.worst_edge_ratio = std::numeric_limits<double>::max();
  rep.worst_inradius_ratio = std::numeric_limits<double>::max();
  for (int c = 0; c < mesh.n_cells(); ++c) {
    std::vector<Vector2> poly;
    for (int v : mesh.cells[c]) poly.push_back(mesh.vertices[v]);
    rep.cell[c] = cell_regularity(poly);
    if (!rep.cell[c].simple || !rep.cell[c].ccw) {
      rep.all_simple_ccw = false;
      continue;
    }
    rep.area_sum += polygon_signed_area(poly);
    const ElementGeometry g = element_geometry(poly);
    rep.h = std::max(rep.h, g.diameter);
    rep.worst_edge_ratio = std::min(rep.worst_edge_ratio, rep.cell[c].min_edge_ratio);
    rep.worst_inradius_ratio = std::min(rep.worst_inradius_ratio, rep.cell[c].inradius_ratio);
    rep.any_concave = rep.any_concave || rep.cell[c].has_reflex_vertex;
  }
  rep.tiles_unit_square = std::abs(rep.area_sum - 1.0) <= 1e-12;
  rep.edges_conforming = true;
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const int nc = (mesh.edges[e].cell[0] != -1) + (mesh.edges[e].cell[1] != -1);
    if (nc == 0 || nc > 2) rep.edges_conforming = false;
  }
  rep.pass = rep.structurally_valid() && rep.worst_edge_ratio >= theta &&
             rep.worst_inradius_ratio >= theta;
  return rep;
}

PolyMesh generate_structured_quads(int n) {
  if (n < 1) throw GenerationFailure("structured mesh needs n >= 1");
  PolyMesh m;
  const double h = 1.0 / n;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) m.vertices.emplace_back(i * h, j * h);
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      m.cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
  m.finalize();
  return m;
}

PolyMesh generate_distorted_quads(int n, double amplitude, std::uint64_t seed) {
  if (amplitude < 0.0 || amplitude >= 0.5)
    throw GenerationFailure("distortion amplitude must be in [0, 0.5)");
  PolyMesh m = generate_structured_quads(n);
  if (amplitude == 0.0) return m;
  std::mt19937_64 rng(seed);
  const double h = 1.0 / n;
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 1; j < n; ++j) {
    for (int i = 1; i < n; ++i) {
      const int v = vid(i, j);
      const Vector2 base = m.vertices[v];
      bool placed = false;
      for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
        const double dx = (2.0 * canonical_uniform(rng) - 1.0) * amplitude * h;
        const double dy = (2.0 * canonical_uniform(rng) - 1.0) * amplitude * h;
        m.vertices[v] = base + Vector2(dx, dy);
        placed = true;
        // incident cells must stay simple and CCW
        for (int cj = j - 1; cj <= j && placed; ++cj) {
          for (int ci = i - 1; ci <= i && placed; ++ci) {
            std::vector<Vector2> poly;
            for (int vv : m.cells[cj * n + ci]) poly.push_back(m.vertices[vv]);
            if (!(polygon_signed_area(poly) > 0.0) || !polygon_is_simple(poly)) placed = false;
          }
        }
      }
      if (!placed) {
        throw DegenerateCell("could not place interior vertex (" + std::to_string(i) + "," +
                             std::to_string(j) + ") after 100 retries");
      }
    }
  }
  return m;
}

namespace {

// Clip a convex polygon against the half-plane n.x <= c (keep side).
std::vector<Vector2> clip_halfplane(const std::vector<Vector2>& poly, const Vector2& n, double c) {
  std::vector<Vector2> out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vector2& a = poly[i];
    const Vector2& b = poly[(i + 1) % m];
    const double da = n.dot(a) - c;
    const double db = n.dot(b) - c;
    if (da <= 0.0) {
      out.push_back(a);
      if (db > 0.0) out.push_back(a + (b - a) * (da / (da - db)));
    } else if (db <= 0.0) {
      out.push_back(a + (b - a) * (da / (da - db)));
    }
  }
  return out;
}

std::vector<std::vector<Vector2>> voronoi_cells(const std::vector<Vector2>& seeds) {
  const std::size_t ns = seeds.size();
  // uniform bucket grid for neighbour pruning
  const int gn = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(ns))));
  std::vector<std::vector<int>> grid(gn * gn);
  auto bucket = [gn](const Vector2& p) {
    int i = std::min(gn - 1, std::max(0, static_cast<int>(p.x() * gn)));
    int j = std::min(gn - 1, std::max(0, static_cast<int>(p.y() * gn)));
    return j * gn + i;
  };
  for (std::size_t s = 0; s < ns; ++s) grid[bucket(seeds[s])].push_back(static_cast<int>(s));

  std::vector<std::vector<Vector2>> cells(ns);
  const std::vector<Vector2> box{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (std::size_t s = 0; s < ns; ++s) {
    std::vector<Vector2> cell = box;
    const Vector2 si = seeds[s];
    const int bi = std::min(gn - 1, std::max(0, static_cast<int>(si.x() * gn)));
    const int bj = std::min(gn - 1, std::max(0, static_cast<int>(si.y() * gn)));
    auto max_vertex_dist = [&]() {
      double d = 0.0;
      for (const auto& v : cell) d = std::max(d, (v - si).norm());
      return d;
    };
    // rings of buckets outward; a seed farther than twice the current cell
    // radius cannot cut the cell any more
    for (int ring = 0; ring < 2 * gn; ++ring) {
      const double ring_dist = ring == 0 ? 0.0 : (ring - 1) / static_cast<double>(gn);
      if (ring > 1 && ring_dist > 2.0 * max_vertex_dist()) break;
      for (int j = bj - ring; j <= bj + ring; ++j) {
        for (int i = bi - ring; i <= bi + ring; ++i) {
          if (std::max(std::abs(i - bi), std::abs(j - bj)) != ring) continue;
          if (i < 0 || j < 0 || i >= gn || j >= gn) continue;
          for (int t : grid[j * gn + i]) {
            if (static_cast<std::size_t>(t) == s) continue;
            const Vector2 st = seeds[t];
            const Vector2 n = st - si;
            const double c = 0.5 * (st.squaredNorm() - si.squaredNorm());
            cell = clip_halfplane(cell, n, c);
            if (cell.size() < 3) return {};
          }
        }
      }
    }
    if (cell.size() < 3 || polygon_signed_area(cell) <= 0.0) return {};
    cells[s] = std::move(cell);
  }
  return cells;
}

Vector2 polygon_centroid(const std::vector<Vector2>& poly) {
  double a2 = 0.0;
  Vector2 cnum = Vector2::Zero();
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double w = cross2(poly[i], poly[(i + 1) % m]);
    a2 += w;
    cnum += w * (poly[i] + poly[(i + 1) % m]);
  }
  return cnum / (3.0 * a2);
}

PolyMesh weld_cells(const std::vector<std::vector<Vector2>>& cells) {
  PolyMesh m;
  constexpr double tol = 1e-9;
  // quantised hash with 3x3 neighbourhood probing
  std::unordered_map<std::uint64_t, std::vector<int>> table;
  auto key = [](long long qx, long long qy) {
    return static_cast<std::uint64_t>(qx) * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(qy);
  };
  auto intern = [&](const Vector2& p) {
    const long long qx = static_cast<long long>(std::floor(p.x() / tol));
    const long long qy = static_cast<long long>(std::floor(p.y() / tol));
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = table.find(key(qx + dx, qy + dy));
        if (it == table.end()) continue;
        for (int v : it->second)
          if ((m.vertices[v] - p).norm() <= tol) return v;
      }
    }
    const int v = m.n_vertices();
    m.vertices.push_back(p);
    table[key(qx, qy)].push_back(v);
    return v;
  };
  for (const auto& poly : cells) {
    std::vector<int> cell;
    for (const auto& p : poly) {
      const int v = intern(p);
      if (cell.empty() || (cell.back() != v && cell.front() != v)) cell.push_back(v);
    }
    if (cell.size() >= 3) m.cells.push_back(std::move(cell));
  }
  m.finalize();
  return m;
}

}  // namespace

PolyMesh generate_voronoi(int n_seeds, int lloyd_iterations, std::uint64_t seed) {
  if (n_seeds < 4) throw GenerationFailure("voronoi mesh needs at least 4 seeds");
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::mt19937_64 rng(seed + 1000003ull * attempt);
    std::vector<Vector2> seeds(n_seeds);
    for (auto& s : seeds) {
      s.x() = canonical_uniform(rng);
      s.y() = canonical_uniform(rng);
    }
    bool ok = true;
    std::vector<std::vector<Vector2>> cells;
    for (int it = 0; it <= lloyd_iterations; ++it) {
      cells = voronoi_cells(seeds);
      if (cells.empty()) {
        ok = false;
        break;
      }
      if (it < lloyd_iterations)
        for (int s = 0; s < n_seeds; ++s) seeds[s] = polygon_centroid(cells[s]);
    }
    if (!ok) continue;
    PolyMesh m = weld_cells(cells);
    if (m.n_cells() != n_seeds) continue;
    const RegularityReport rep = validate(m, 0.0);
    if (!rep.structurally_valid()) continue;
    return m;
  }
  throw GenerationFailure("voronoi generation produced a degenerate tessellation");
}

PolyMesh generate_nonconvex(int n) {
  if (n < 2 || n % 2 != 0) throw GenerationFailure("nonconvex mesh needs even n >= 2");
  // Each structured quad is split by the zigzag (0,0)-P-Q-(1,1) into two
  // interlocking pentagons, each with one reflex vertex and both star-shaped.
  const Vector2 P(0.6, 0.25), Q(0.4, 0.75);
  PolyMesh m;
  const double h = 1.0 / n;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) m.vertices.emplace_back(i * h, j * h);
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Vector2 o(i * h, j * h);
      const int vp = m.n_vertices();
      m.vertices.push_back(o + h * P);
      const int vq = m.n_vertices();
      m.vertices.push_back(o + h * Q);
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v11 = vid(i + 1, j + 1), v01 = vid(i, j + 1);
      m.cells.push_back({v00, v10, v11, vq, vp});
      m.cells.push_back({v00, vp, vq, v11, v01});
    }
  }
  m.finalize();
  return m;
}

namespace {

struct LineReader {
  std::istream& in;
  std::string name;
  int lineno = 0;

  bool next_tokens(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      std::string t;
      while (ss >> t) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(name + ":" + std::to_string(lineno) + ": " + msg);
  }
};

double parse_double(const std::string& s, const LineReader& r) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) r.fail("bad number '" + s + "'");
  return v;
}

long parse_int(const std::string& s, const LineReader& r) {
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) r.fail("bad integer '" + s + "'");
  return v;
}

}  // namespace

PolyMesh read_mesh(std::istream& in, const std::string& name) {
  LineReader r{in, name};
  std::vector<std::string> tok;
  if (!r.next_tokens(tok) || tok.size() != 2 || tok[0] != "polymesh" || tok[1] != "1")
    r.fail("expected header 'polymesh 1'");
  if (!r.next_tokens(tok) || tok.size() != 2 || tok[0] != "vertices") r.fail("expected 'vertices <Nv>'");
  const long nv = parse_int(tok[1], r);
  if (nv < 3) r.fail("vertex count must be >= 3");
  PolyMesh m;
  m.vertices.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    if (!r.next_tokens(tok) || tok.size() != 2) r.fail("expected '<x> <y>'");
    m.vertices.emplace_back(parse_double(tok[0], r), parse_double(tok[1], r));
  }
  if (!r.next_tokens(tok) || tok.size() != 2 || tok[0] != "cells") r.fail("expected 'cells <Nc>'");
  const long nc = parse_int(tok[1], r);
  if (nc < 1) r.fail("cell count must be >= 1");
  for (long c = 0; c < nc; ++c) {
    if (!r.next_tokens(tok)) r.fail("expected cell line");
    const long mcount = parse_int(tok[0], r);
    if (mcount < 3 || tok.size() != static_cast<std::size_t>(mcount) + 1)
      r.fail("cell vertex count mismatch");
    std::vector<int> cell(mcount);
    for (long i = 0; i < mcount; ++i) {
      const long v = parse_int(tok[i + 1], r);
      if (v < 0 || v >= nv) r.fail("cell references vertex index out of range");
      cell[i] = static_cast<int>(v);
    }
    m.cells.push_back(std::move(cell));
  }
  m.finalize();
  return m;
}

PolyMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file: " + path);
  return read_mesh(in, path);
}

void write_mesh(const PolyMesh& mesh, std::ostream& out) {
  auto put = [&out](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
  };
  out << "polymesh 1\n";
  out << "vertices " << mesh.n_vertices() << "\n";
  for (const auto& v : mesh.vertices) {
    put(v.x());
    out << ' ';
    put(v.y());
    out << '\n';
  }
  out << "cells " << mesh.n_cells() << "\n";
  for (const auto& c : mesh.cells) {
    out << c.size();
    for (int v : c) out << ' ' << v;
    out << '\n';
  }
}

void write_mesh(const PolyMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open mesh file for writing: " + path);
  write_mesh(mesh, out);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace vem
