#include "regulus/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace regulus::io {

namespace {

std::string fmt17(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

json set_to_json(const BallUnionSet& s) {
  json out = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json ball;
    ball["center"] = s.centers[i].v;
    ball["radius"] = s.radii[i];
    out.push_back(std::move(ball));
  }
  return out;
}

BallUnionSet set_from_json(const json& j) {
  BallUnionSet s;
  for (const auto& ball : j) {
    s.centers.emplace_back(ball.at("center").get<std::vector<double>>());
    s.radii.push_back(ball.at("radius").get<double>());
  }
  return s;
}

}  // namespace

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_text(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

GroupFile parse_group(const json& j) {
  GroupFile g;
  g.dim = j.at("dim").get<int>();
  if (g.dim < 2 || g.dim > 4) throw std::runtime_error("dim must be 2, 3 or 4");
  for (const auto& [name, rows] : j.at("generators").items()) {
    if (static_cast<int>(rows.size()) != g.dim)
      throw std::runtime_error("generator " + name + ": wrong row count");
    std::vector<Rational> entries;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != g.dim)
        throw std::runtime_error("generator " + name + ": wrong column count");
      for (const auto& cell : row) entries.push_back(parse_rational(cell.get<std::string>()));
    }
    g.generators.emplace(name, RationalMatrix(g.dim, std::move(entries)));
  }
  if (g.generators.empty()) throw std::runtime_error("no generators");
  return g;
}

GroupFile load_group(const std::string& path) { return parse_group(load_json(path)); }

json group_to_json(const GroupFile& g) {
  json j;
  j["dim"] = g.dim;
  json gens = json::object();
  for (const auto& [name, m] : g.generators) {
    json rows = json::array();
    for (int i = 0; i < g.dim; ++i) {
      json row = json::array();
      for (int k = 0; k < g.dim; ++k) row.push_back(to_string(m.at(i, k)));
      rows.push_back(std::move(row));
    }
    gens[name] = std::move(rows);
  }
  j["generators"] = std::move(gens);
  return j;
}

void save_group(const GroupFile& g, const std::string& path) {
  save_text(group_to_json(g).dump(2) + "\n", path);
}

Z2UnipotentRep parse_rep(const json& j) {
  auto field = [&](const char* k) { return parse_rational(j.at(k).get<std::string>()); };
  return Z2UnipotentRep::create(field("a_x"), field("b_x"), field("c_x"), field("a_y"),
                                field("b_y"), field("c_y"));
}

Z2UnipotentRep load_rep(const std::string& path) { return parse_rep(load_json(path)); }

json verdict_to_json(const Verdict& v) {
  json j;
  j["kind"] = to_string(v.kind);
  j["normalization"] = v.normalization;
  if (v.witness) {
    json w;
    w["kind"] = to_string(v.witness->kind);
    w["description"] = v.witness->description;
    w["bound"] = v.witness->bound;
    json members = json::array();
    for (long t = 1; t <= 8; ++t) {
      auto [n, m] = v.witness->member(t);
      members.push_back({{"t", t}, {"n", n.get_str()}, {"m", m.get_str()}});
    }
    w["members"] = std::move(members);
    j["witness"] = std::move(w);
  }
  return j;
}

json scan_report_to_json(const BallScanReport& r) {
  json j;
  json recs = json::array();
  for (const auto& rec : r.records) {
    recs.push_back({{"radius", rec.radius},
                    {"sphere_size", rec.sphere_size},
                    {"min_gap", rec.min_gap},
                    {"median_gap", rec.median_gap},
                    {"argmin_word", rec.argmin_word.str()}});
  }
  j["records"] = std::move(recs);
  j["verdict"] = to_string(r.verdict);
  if (r.verdict == ScanVerdict::BOUNDED_WITNESS) {
    json w = json::array();
    for (const auto& word : r.witness) w.push_back(word.str());
    j["witness"] = std::move(w);
    j["witness_bound"] = r.witness_bound;
  }
  return j;
}

std::string scan_report_to_csv(const BallScanReport& r) {
  std::ostringstream os;
  os << "radius,sphere_size,min_gap,median_gap,argmin_word\n";
  for (const auto& rec : r.records)
    os << rec.radius << ',' << rec.sphere_size << ',' << fmt17(rec.min_gap) << ','
       << fmt17(rec.median_gap) << ',' << rec.argmin_word.str() << '\n';
  return os.str();
}

std::string flags_to_csv(const LimitSetSample& s) {
  std::ostringstream os;
  os << "dim,point,conormal\n";
  for (const ProjFlag& f : s.flags) {
    os << f.point.dim();
    for (double x : f.point.v) os << ',' << fmt17(x);
    for (double x : f.hyperplane.conormal) os << ',' << fmt17(x);
    os << '\n';
  }
  return os.str();
}

json limit_sample_to_json(const LimitSetSample& s) {
  json j;
  j["radius"] = s.radius;
  j["empty_warning"] = s.empty_warning;
  json flags = json::array();
  for (std::size_t i = 0; i < s.flags.size(); ++i) {
    flags.push_back({{"point", s.flags[i].point.v},
                     {"conormal", s.flags[i].hyperplane.conormal},
                     {"source", s.sources[i].str()}});
  }
  j["flags"] = std::move(flags);
  return j;
}

json certificate_to_json(const PingPongCertificate& c, const std::string& group_file) {
  json j;
  j["group_file"] = group_file;
  json dg = json::array();
  for (const auto& w : c.delta_generators) dg.push_back(w.str());
  j["delta_generators"] = std::move(dg);
  j["gamma"] = c.gamma.str();
  j["power"] = c.power;
  j["delta_radius"] = c.delta_radius;
  j["c1"] = set_to_json(c.c1);
  j["c2"] = set_to_json(c.c2);
  j["margin"] = c.margin;
  json ex = json::array();
  for (const auto& w : c.exceptional) ex.push_back(w.str());
  j["exceptional"] = std::move(ex);
  j["resolution"] = c.grid_resolution;
  return j;
}

PingPongCertificate certificate_from_json(const json& j, const std::string& cert_dir) {
  PingPongCertificate c;
  std::filesystem::path ref(j.at("group_file").get<std::string>());
  if (ref.is_relative()) ref = std::filesystem::path(cert_dir) / ref;
  c.group = load_group(ref.string()).generators;
  for (const auto& w : j.at("delta_generators"))
    c.delta_generators.push_back(GroupWord::parse(w.get<std::string>()));
  c.gamma = GroupWord::parse(j.at("gamma").get<std::string>());
  c.power = j.at("power").get<int>();
  c.delta_radius = j.at("delta_radius").get<int>();
  c.c1 = set_from_json(j.at("c1"));
  c.c2 = set_from_json(j.at("c2"));
  c.margin = j.at("margin").get<double>();
  for (const auto& w : j.at("exceptional"))
    c.exceptional.push_back(GroupWord::parse(w.get<std::string>()));
  c.grid_resolution = j.at("resolution").get<double>();
  return c;
}

void save_certificate(const PingPongCertificate& c, const std::string& group_file,
                      const std::string& path) {
  save_text(certificate_to_json(c, group_file).dump(2) + "\n", path);
}

PingPongCertificate load_certificate(const std::string& path) {
  return certificate_from_json(load_json(path),
                               std::filesystem::path(path).parent_path().string());
}

}  // namespace regulus::io
