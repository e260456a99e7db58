#include "diskcurv/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace diskcurv {

std::string format_snapshot(const ScalarField& u) {
  std::string out;
  out.reserve(static_cast<size_t>(u.grid.size()) * 26 + 32);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%d %d\n", u.grid.n_r, u.grid.n_theta);
  out += buf;
  for (int j = 0; j < u.grid.n_r; ++j) {
    for (int i = 0; i < u.grid.n_theta; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", u.at(j, i));
      out += buf;
      out += (i + 1 < u.grid.n_theta) ? ' ' : '\n';
    }
  }
  return out;
}

ScalarField parse_snapshot(const std::string& text) {
  std::istringstream in(text);
  int nr = 0, nt = 0;
  if (!(in >> nr >> nt)) throw Error(ErrorCode::Io, "snapshot: bad header");
  Grid g(nr, nt);
  ScalarField u(g);
  for (int j = 0; j < nr; ++j) {
    for (int i = 0; i < nt; ++i) {
      if (!(in >> u.at(j, i))) throw Error(ErrorCode::Io, "snapshot: truncated data");
    }
  }
  return u;
}

void write_snapshot(const std::filesystem::path& path, const ScalarField& u) {
  std::ofstream out(path);
  if (!out.is_open()) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << format_snapshot(u);
  if (!out.good()) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

ScalarField read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_snapshot(buf.str());
}

}  // namespace diskcurv
