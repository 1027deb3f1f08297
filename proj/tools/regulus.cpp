// Command-line surface: cartan, scan, classify-z2, limitset, pingpong.
//
// Exit codes: 0 success; 2 parse/input error; scan: 3 bounded witness,
// 4 inconclusive; limitset: 5 empty sample; pingpong verify: 1 on failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "regulus/io.hpp"
#include "regulus/pingpong.hpp"
#include "regulus/scan.hpp"
#include "regulus/svd.hpp"
#include "regulus/z2.hpp"

namespace {

using regulus::io::json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    regulus::io::save_text(text, out_path);
  }
}

regulus::io::GroupFile load_group_checked(const std::string& path) {
  try {
    return regulus::io::load_group(path);
  } catch (const std::exception& e) {
    throw InputError(std::string("group file: ") + e.what());
  }
}

int cmd_cartan(const std::string& group_file, const std::string& word_text) {
  auto group = load_group_checked(group_file);
  regulus::GroupWord word;
  try {
    word = regulus::GroupWord::parse(word_text);
  } catch (const std::exception& e) {
    throw InputError(std::string("word: ") + e.what());
  }
  regulus::RationalMatrix m = [&] {
    try {
      return word_eval(group.generators, word);
    } catch (const std::exception& e) {
      throw InputError(std::string("word: ") + e.what());
    }
  }();
  regulus::SingularTriple sv = regulus::singular_values(m);
  regulus::CartanVector mu = regulus::cartan_projection(m);
  json j;
  j["word"] = word.str();
  j["sigma"] = sv.sigma;
  j["mu"] = mu.mu;
  j["certified_error"] = sv.certified_error;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_scan(const std::string& group_file, int radius, bool no_dedupe, int jobs,
             int cap_override, const std::string& format, const std::string& out) {
  auto group = load_group_checked(group_file);
  regulus::BallSpec spec;
  spec.generators = group.generators;
  spec.radius = radius;
  spec.dedupe = !no_dedupe;
  spec.jobs = jobs;
  if (cap_override > 0) spec.radius_cap = cap_override;
  regulus::BallScanReport report = regulus::sphere_stats(spec);
  emit(format == "csv" ? regulus::io::scan_report_to_csv(report)
                       : regulus::io::scan_report_to_json(report).dump(2) + "\n",
       out);
  switch (report.verdict) {
    case regulus::ScanVerdict::DIVERGENT_TREND: return 0;
    case regulus::ScanVerdict::BOUNDED_WITNESS: return 3;
    case regulus::ScanVerdict::INCONCLUSIVE: return 4;
  }
  return 4;
}

int cmd_classify_z2(const std::string& rep_file, const std::string& out) {
  regulus::Z2UnipotentRep rep = [&] {
    try {
      return regulus::io::load_rep(rep_file);
    } catch (const std::invalid_argument& e) {
      // commutation failure: report as a diagnosis, not a crash
      throw InputError(std::string("not a Z^2 representation: ") + e.what());
    } catch (const std::exception& e) {
      throw InputError(std::string("rep file: ") + e.what());
    }
  }();
  regulus::Verdict v = regulus::classify_z2(rep);
  emit(regulus::io::verdict_to_json(v).dump(2) + "\n", out);
  return 0;
}

int cmd_limitset(const std::string& group_file, int radius, double threshold,
                 int cap_override, const std::string& format, const std::string& out) {
  auto group = load_group_checked(group_file);
  regulus::BallSpec spec;
  spec.generators = group.generators;
  spec.radius = radius;
  if (cap_override > 0) spec.radius_cap = cap_override;
  regulus::LimitSetSample sample = regulus::limit_set_sample(spec, threshold);
  emit(format == "csv" ? regulus::io::flags_to_csv(sample)
                       : regulus::io::limit_sample_to_json(sample).dump(2) + "\n",
       out);
  if (sample.empty_warning) {
    std::cerr << "warning: no ball element passed the gap threshold\n";
    return 5;
  }
  return 0;
}

int cmd_pingpong_search(const std::string& group_file, std::vector<std::string> delta,
                        double resolution, int max_power, int sample_radius,
                        const std::string& out) {
  auto group = load_group_checked(group_file);
  std::vector<regulus::GroupWord> dwords;
  if (delta.empty())
    for (const auto& [name, m] : group.generators) delta.push_back(name);
  for (const auto& text : delta) {
    try {
      dwords.push_back(regulus::GroupWord::parse(text));
    } catch (const std::exception& e) {
      throw InputError(std::string("delta word: ") + e.what());
    }
  }
  regulus::SearchParams params;
  params.resolution = resolution;
  params.max_power = max_power;
  if (sample_radius > 0) params.sample_radius = sample_radius;
  regulus::SearchResult result =
      regulus::pingpong_search(group.generators, dwords, params);
  if (auto* fail = std::get_if<regulus::SearchFailure>(&result)) {
    json j;
    j["failure"] = fail->reason;
    j["detail"] = fail->detail;
    std::cout << j.dump(2) << '\n';
    return 1;
  }
  const auto& cert = std::get<regulus::PingPongCertificate>(result);
  std::string ref = std::filesystem::absolute(group_file).string();
  if (out.empty()) {
    std::cout << regulus::io::certificate_to_json(cert, ref).dump(2) << '\n';
  } else {
    regulus::io::save_certificate(cert, ref, out);
  }
  return 0;
}

int cmd_pingpong_verify(const std::string& cert_file) {
  regulus::PingPongCertificate cert = [&] {
    try {
      return regulus::io::load_certificate(cert_file);
    } catch (const std::exception& e) {
      throw InputError(std::string("certificate: ") + e.what());
    }
  }();
  bool ok = false;
  try {
    ok = regulus::verify_certificate(cert);
  } catch (const std::exception& e) {
    std::cerr << "verification error: " << e.what() << '\n';
    return 1;
  }
  std::cout << (ok ? "certificate verified" : "certificate rejected") << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regularity experiments for finitely generated linear groups"};
  app.require_subcommand(1);

  std::string group_file, rep_file, cert_file, word_text, out, format = "json";
  int radius = 10, jobs = 1, cap_override = 0, max_power = 40;
  double threshold = 5.0, resolution = 1e-3;
  int sample_radius = 0;
  bool no_dedupe = false;
  std::vector<std::string> delta;

  auto* cartan = app.add_subcommand("cartan", "singular values and their logs");
  cartan->add_option("group", group_file)->required();
  cartan->add_option("word", word_text)->required();

  auto* scan = app.add_subcommand("scan", "word-ball gap statistics");
  scan->add_option("group", group_file)->required();
  scan->add_option("--radius", radius);
  scan->add_flag("--no-dedupe", no_dedupe);
  scan->add_option("--jobs", jobs);
  scan->add_option("--cap-override", cap_override);
  scan->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  scan->add_option("--out", out);

  auto* cls = app.add_subcommand("classify-z2", "classify a Z^2 shear representation");
  cls->add_option("rep", rep_file)->required();
  cls->add_option("--out", out);

  auto* ls = app.add_subcommand("limitset", "sample attracting flags");
  ls->add_option("group", group_file)->required();
  ls->add_option("--radius", radius);
  ls->add_option("--threshold", threshold)->check(CLI::PositiveNumber);
  ls->add_option("--cap-override", cap_override);
  ls->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  ls->add_option("--out", out);

  auto* pp = app.add_subcommand("pingpong", "free-product certificates");
  pp->require_subcommand(1);
  auto* search = pp->add_subcommand("search", "search for a certificate");
  search->add_option("group", group_file)->required();
  search->add_option("--delta", delta)->delimiter(',');
  search->add_option("--resolution", resolution)->check(CLI::PositiveNumber);
  search->add_option("--max-power", max_power);
  search->add_option("--sample-radius", sample_radius);
  search->add_option("--out", out);
  auto* verify = pp->add_subcommand("verify", "re-verify a stored certificate");
  verify->add_option("certificate", cert_file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cartan) return cmd_cartan(group_file, word_text);
    if (*scan) return cmd_scan(group_file, radius, no_dedupe, jobs, cap_override,
                               format, out);
    if (*cls) return cmd_classify_z2(rep_file, out);
    if (*ls) return cmd_limitset(group_file, radius, threshold, cap_override, format,
                                 out);
    if (*search) return cmd_pingpong_search(group_file, delta, resolution, max_power,
                                            sample_radius, out);
    if (*verify) return cmd_pingpong_verify(cert_file);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
