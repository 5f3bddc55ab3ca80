#include "bruss/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bruss {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);  // binary: no newline translation
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

void finish(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that still round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(shorter, "%lf", &back);
    if (back == v) return shorter;
  }
  return buf;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  auto os = open_out(path);
  os << "t,x,y\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    os << format_double(traj.times[i]) << ',' << format_double(traj.states[i].x)
       << ',' << format_double(traj.states[i].y) << '\n';
  finish(os, path);
}

void write_two_point_csv(const std::string& path, const TwoPointResult& res) {
  auto os = open_out(path);
  os << "t,x0,y0,x1,y1,d\n";
  for (std::size_t i = 0; i < res.distance.times.size(); ++i)
    os << format_double(res.distance.times[i]) << ','
       << format_double(res.first.states[i].x) << ','
       << format_double(res.first.states[i].y) << ','
       << format_double(res.second.states[i].x) << ','
       << format_double(res.second.states[i].y) << ','
       << format_double(res.distance.d[i]) << '\n';
  finish(os, path);
}

void write_ftle_field_csv(const std::string& path, const FtleField& field) {
  auto os = open_out(path);
  os << "x,y,ftle\n";
  for (std::size_t iy = 0; iy < field.grid.ny; ++iy)
    for (std::size_t ix = 0; ix < field.grid.nx; ++ix)
      os << format_double(field.grid.x_at(ix)) << ','
         << format_double(field.grid.y_at(iy)) << ','
         << format_double(field.at(ix, iy)) << '\n';
  finish(os, path);
}

void write_series_csv(const std::string& path, const std::string& header,
                      const std::vector<std::pair<double, double>>& rows) {
  auto os = open_out(path);
  os << header << '\n';
  for (const auto& [a, b] : rows)
    os << format_double(a) << ',' << format_double(b) << '\n';
  finish(os, path);
}

void write_slowfast_csv(const std::string& path, const SfTrajectory& traj,
                        const SlowFastParams& sp, const RegimeThresholds& th) {
  auto os = open_out(path);
  os << "t,u,v,regime\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto regime = classify_regime(sp, traj.states[i], th);
    os << format_double(traj.times[i]) << ',' << format_double(traj.states[i].u)
       << ',' << format_double(traj.states[i].v) << ','
       << static_cast<int>(regime) << '\n';
  }
  finish(os, path);
}

void write_polyline_csv(const std::string& path, const std::string& header,
                        const std::vector<std::pair<double, double>>& points) {
  write_series_csv(path, header, points);
}

void write_jump_csv(const std::string& path, const JumpPath& jump) {
  auto os = open_out(path);
  os << "t,reaction,X,Y,D,E\n";
  for (std::size_t i = 0; i < jump.times.size(); ++i) {
    const auto& z = jump.states[i];
    os << format_double(jump.times[i]) << ',' << jump.reactions[i] << ',' << z.X
       << ',' << z.Y << ',' << z.D << ',' << z.E << '\n';
  }
  finish(os, path);
}

void write_metadata(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& kv) {
  auto os = open_out(path);
  for (const auto& [k, v] : kv) os << k << '=' << v << '\n';
  finish(os, path);
}

std::vector<std::pair<std::string, std::string>> read_metadata(
    const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open metadata: " + path);
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("malformed metadata line: " + line);
    kv.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return kv;
}

}  // namespace bruss
