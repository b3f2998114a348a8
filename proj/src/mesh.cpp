#include "tumordg/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tumordg {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double circumdiameter(const Vec2& a, const Vec2& b, const Vec2& c, double area) {
  const double la = norm(b - c);
  const double lb = norm(c - a);
  const double lc = norm(a - b);
  return la * lb * lc / (2.0 * area);
}

}  // namespace

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const int nv = num_vertices();
  const int nt = num_triangles();
  if (nv < 3 || nt < 1) throw std::invalid_argument("mesh: need at least one triangle");

  triangle_area_.resize(nt);
  barycenter_.resize(nt);
  vertex_support_area_.assign(nv, 0.0);
  vertex_triangles_.assign(nv, {});

  for (int k = 0; k < nt; ++k) {
    for (int i : triangles_[k]) {
      if (i < 0 || i >= nv) throw std::invalid_argument("mesh: vertex index out of range");
    }
    const auto& t = triangles_[k];
    const Vec2 a = vertices_[t[0]], b = vertices_[t[1]], c = vertices_[t[2]];
    const double area = signed_area(a, b, c);
    if (!(area > 0.0))
      throw std::invalid_argument("mesh: triangle " + std::to_string(k) +
                                  " is degenerate or not counterclockwise");
    triangle_area_[k] = area;
    barycenter_[k] = {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
    total_area_ += area;
    h_ = std::max(h_, circumdiameter(a, b, c, area));
    for (int i : t) {
      vertex_support_area_[i] += area;
      vertex_triangles_[i].push_back(k);
    }
  }

  // Edge table keyed by the sorted endpoint pair; first incident triangle
  // (smallest index) becomes the owner.
  std::map<std::pair<int, int>, int> edge_of;
  for (int k = 0; k < nt; ++k) {
    const auto& t = triangles_[k];
    for (int s = 0; s < 3; ++s) {
      const int a = t[s];
      const int b = t[(s + 1) % 3];
      const auto key = std::minmax(a, b);
      auto it = edge_of.find(key);
      if (it == edge_of.end()) {
        Edge e;
        e.v0 = a;
        e.v1 = b;
        e.owner = k;
        e.length = norm(vertices_[b] - vertices_[a]);
        // a->b traverses K's boundary counterclockwise, so the outward
        // normal is the clockwise rotation of the edge vector.
        const Vec2 d = vertices_[b] - vertices_[a];
        e.normal = {d.y / e.length, -d.x / e.length};
        edge_of.emplace(key, static_cast<int>(edges_.size()));
        edges_.push_back(e);
      } else {
        Edge& e = edges_[it->second];
        if (e.neighbor >= 0)
          throw std::invalid_argument("mesh: edge shared by more than two triangles");
        e.neighbor = k;
      }
    }
  }

  for (Edge& e : edges_) {
    if (!e.interior()) continue;
    e.barycenter_distance = norm(barycenter_[e.neighbor] - barycenter_[e.owner]);
    if (!(e.barycenter_distance > 0.0))
      throw std::invalid_argument("mesh: coincident barycenters across an edge");
    ++num_interior_edges_;
  }

  // Conformity: a hanging vertex leaves its long edge unpaired, so both the
  // long edge and the vertex end up on the unpaired-edge set. Reject any
  // vertex of that set lying strictly inside an unpaired edge.
  std::vector<int> unpaired;
  std::vector<char> on_unpaired(nv, 0);
  for (int e = 0; e < num_edges(); ++e) {
    if (edges_[e].interior()) continue;
    unpaired.push_back(e);
    on_unpaired[edges_[e].v0] = 1;
    on_unpaired[edges_[e].v1] = 1;
  }
  for (int e : unpaired) {
    const Vec2 a = vertices_[edges_[e].v0];
    const Vec2 b = vertices_[edges_[e].v1];
    const double len = edges_[e].length;
    for (int j = 0; j < nv; ++j) {
      if (!on_unpaired[j] || j == edges_[e].v0 || j == edges_[e].v1) continue;
      const Vec2 d = vertices_[j] - a;
      const double t = dot(d, b - a) / (len * len);
      if (t <= 1e-12 || t >= 1.0 - 1e-12) continue;
      const Vec2 off = d - t * (b - a);
      if (norm(off) <= 1e-12 * len)
        throw std::invalid_argument("mesh: not conforming (vertex " + std::to_string(j) +
                                    " hangs on an edge)");
    }
  }
}

Mesh generate_crisscross(const Rect& domain, int nx, int ny) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("generate_crisscross: nx, ny must be >= 1");
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0))
    throw std::invalid_argument("generate_crisscross: degenerate rectangle");

  const double dx = domain.width() / nx;
  const double dy = domain.height() / ny;

  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<size_t>((nx + 1) * (ny + 1) + nx * ny));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      vertices.push_back({domain.x0 + i * dx, domain.y0 + j * dy});
  const int grid_count = (nx + 1) * (ny + 1);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      vertices.push_back({domain.x0 + (i + 0.5) * dx, domain.y0 + (j + 0.5) * dy});

  auto gid = [nx](int i, int j) { return j * (nx + 1) + i; };
  auto cid = [nx, grid_count](int i, int j) { return grid_count + j * nx + i; };

  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(static_cast<size_t>(4 * nx * ny));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int c00 = gid(i, j), c10 = gid(i + 1, j);
      const int c11 = gid(i + 1, j + 1), c01 = gid(i, j + 1);
      const int m = cid(i, j);
      triangles.push_back({c00, c10, m});
      triangles.push_back({c10, c11, m});
      triangles.push_back({c11, c01, m});
      triangles.push_back({c01, c00, m});
    }
  }
  return Mesh(std::move(vertices), std::move(triangles));
}

AdmissibilityReport check_admissibility(const Mesh& mesh, double tol) {
  AdmissibilityReport report;
  std::vector<AdmissibilityReport::Offender> all;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (!edge.interior()) continue;
    ++report.interior_edges;
    const Vec2 seg = mesh.barycenter(edge.neighbor) - mesh.barycenter(edge.owner);
    const Vec2 t = mesh.vertex(edge.v1) - mesh.vertex(edge.v0);
    const double dev = std::abs(dot(seg, t)) / (norm(seg) * norm(t));
    report.max_deviation = std::max(report.max_deviation, dev);
    if (dev > tol) all.push_back({e, dev});
  }
  report.pass = all.empty();
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.deviation > b.deviation; });
  if (all.size() > 5) all.resize(5);
  report.worst = std::move(all);
  return report;
}

Mesh read_mesh(std::istream& in) {
  int nv = 0, nt = 0;
  if (!(in >> nv >> nt)) throw std::runtime_error("mesh file: bad header, expected 'nv nt'");
  if (nv < 3 || nt < 1) throw std::runtime_error("mesh file: implausible vertex/triangle counts");
  std::vector<Vec2> vertices(nv);
  for (int j = 0; j < nv; ++j)
    if (!(in >> vertices[j].x >> vertices[j].y))
      throw std::runtime_error("mesh file: bad vertex line " + std::to_string(j));
  std::vector<std::array<int, 3>> triangles(nt);
  for (int k = 0; k < nt; ++k)
    if (!(in >> triangles[k][0] >> triangles[k][1] >> triangles[k][2]))
      throw std::runtime_error("mesh file: bad triangle line " + std::to_string(k));
  return Mesh(std::move(vertices), std::move(triangles));
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file: " + path);
  return read_mesh(in);
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
  out << mesh.num_vertices() << ' ' << mesh.num_triangles() << '\n';
  out.precision(17);
  for (const Vec2& v : mesh.vertices()) out << v.x << ' ' << v.y << '\n';
  for (const auto& t : mesh.triangles()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace tumordg
