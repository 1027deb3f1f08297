#pragma once

#include <string>

#include <json.hpp>

#include "regulus/matrix.hpp"
#include "regulus/pingpong.hpp"
#include "regulus/scan.hpp"
#include "regulus/word.hpp"
#include "regulus/z2.hpp"

namespace regulus::io {

using json = nlohmann::json;

struct GroupFile {
  int dim = 3;
  GeneratorMap generators;
};

// {"dim": 3, "generators": {"x": [["1","0","1"], ...], ...}}, entries as
// exact rational strings.
GroupFile parse_group(const json& j);
GroupFile load_group(const std::string& path);
json group_to_json(const GroupFile& g);
void save_group(const GroupFile& g, const std::string& path);

// {"a_x":"1","b_x":"0","c_x":"1","a_y":"1","b_y":"1","c_y":"1"}
Z2UnipotentRep parse_rep(const json& j);
Z2UnipotentRep load_rep(const std::string& path);

json verdict_to_json(const Verdict& v);

json scan_report_to_json(const BallScanReport& r);
// columns: radius, sphere_size, min_gap, median_gap, argmin_word
std::string scan_report_to_csv(const BallScanReport& r);

// columns: dim, point coords, conormal coords (17 significant digits)
std::string flags_to_csv(const LimitSetSample& s);
json limit_sample_to_json(const LimitSetSample& s);

// Certificate files carry a reference to the group file plus all geometric
// data; loading resolves the reference relative to the certificate path.
json certificate_to_json(const PingPongCertificate& c, const std::string& group_file);
PingPongCertificate certificate_from_json(const json& j, const std::string& cert_dir);
void save_certificate(const PingPongCertificate& c, const std::string& group_file,
                      const std::string& path);
PingPongCertificate load_certificate(const std::string& path);

json load_json(const std::string& path);
void save_text(const std::string& text, const std::string& path);

}  // namespace regulus::io
