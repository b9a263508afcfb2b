// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <fstream>
#include <sstream>

#include "acms2d/errors.hpp"
#include "acms2d/geometry.hpp"

namespace acms {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct LineReader {
  std::istream& in;
  int lineno = 0;
  std::string line;

  bool next() {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty()) return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw IoError("mesh parse error at line " + std::to_string(lineno) + ": " + what);
  }
  std::istringstream expect(const std::string& keyword) {
    if (!next()) fail("unexpected end of file, expected '" + keyword + "'");
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    if (word != keyword) fail("expected '" + keyword + "', got '" + word + "'");
    return ss;
  }
};

}  // namespace

void save_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "acmsmesh 1\n";
  out << "nodes " << mesh.nodes.size() << "\n";
  for (const auto& p : mesh.nodes) out << fmt17(p.x) << " " << fmt17(p.y) << "\n";
  out << "triangles " << mesh.triangles.size() << "\n";
  for (const auto& t : mesh.triangles)
    out << t.v[0] << " " << t.v[1] << " " << t.v[2] << " " << t.material << " " << t.subdomain
        << "\n";
  out << "bsegments " << mesh.boundary_segments.size() << "\n";
  for (const auto& b : mesh.boundary_segments)
    out << b.a << " " << b.b << " " << b.marker << "\n";
  out << "decomp " << mesh.decomposition.jx << " " << mesh.decomposition.jy << " "
      << mesh.decomposition.cells_per_subdomain << "\n";
  if (!out) throw IoError("write failure on '" + path + "'");
}

std::pair<Mesh, InterfaceGraph> load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  LineReader rd{in};

  {
    auto ss = rd.expect("acmsmesh");
    int version = 0;
    if (!(ss >> version) || version != 1) rd.fail("unsupported format version");
  }
  Mesh mesh;
  {
    auto ss = rd.expect("nodes");
    std::size_t n = 0;
    if (!(ss >> n)) rd.fail("bad node count");
    mesh.nodes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!rd.next()) rd.fail("missing node line");
      std::istringstream ls(rd.line);
      Point p;
      if (!(ls >> p.x >> p.y)) rd.fail("bad node coordinates");
      mesh.nodes.push_back(p);
    }
  }
  {
    auto ss = rd.expect("triangles");
    std::size_t n = 0;
    if (!(ss >> n)) rd.fail("bad triangle count");
    mesh.triangles.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!rd.next()) rd.fail("missing triangle line");
      std::istringstream ls(rd.line);
      Triangle t;
      if (!(ls >> t.v[0] >> t.v[1] >> t.v[2] >> t.material >> t.subdomain))
        rd.fail("bad triangle entry");
      for (int k = 0; k < 3; ++k)
        if (t.v[k] < 0 || t.v[k] >= int(mesh.nodes.size())) rd.fail("triangle node out of range");
      mesh.triangles.push_back(t);
    }
  }
  {
    auto ss = rd.expect("bsegments");
    std::size_t n = 0;
    if (!(ss >> n)) rd.fail("bad boundary segment count");
    for (std::size_t i = 0; i < n; ++i) {
      if (!rd.next()) rd.fail("missing boundary segment line");
      std::istringstream ls(rd.line);
      BoundarySegment b;
      if (!(ls >> b.a >> b.b >> b.marker)) rd.fail("bad boundary segment entry");
      if (b.a < 0 || b.a >= int(mesh.nodes.size()) || b.b < 0 || b.b >= int(mesh.nodes.size()))
        rd.fail("boundary segment node out of range");
      mesh.boundary_segments.push_back(b);
    }
  }
  {
    auto ss = rd.expect("decomp");
    int jx, jy, cells;
    if (!(ss >> jx >> jy >> cells)) rd.fail("bad decomposition line");
    mesh.decomposition = build_decomposition(jx, jy, cells);
  }
  mesh.recompute_h();
  validate_mesh(mesh);
  InterfaceGraph graph = extract_interface(mesh);
  return {std::move(mesh), std::move(graph)};
}

}  // namespace acms
