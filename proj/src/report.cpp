#include "scpdp/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace scpdp {

std::string format_fc_percent(double fc) {
  char buf[32];
  snprintf(buf, sizeof buf, "%.3f", fc * 100.0);
  return buf;
}

namespace {

void append_row(std::ostringstream& os, const Stratum& s) {
  os << s.polarity << ',' << s.mode << ',';
  if (s.fault_size == 0) {
    os << "ALL";
  } else {
    os << s.fault_size;
  }
  os << ',' << s.trials << ',' << s.counts.masked << ',' << s.counts.detected
     << ',' << s.counts.sdc << ',' << format_fc_percent(s.fc()) << '\n';
}

nlohmann::json stratum_json(const Stratum& s) {
  nlohmann::json j;
  j["polarity"] = s.polarity;
  j["mode"] = s.mode;
  j["fault_size"] = s.fault_size == 0 ? "ALL" : std::to_string(s.fault_size);
  j["trials"] = s.trials;
  j["masked"] = s.counts.masked;
  j["detected"] = s.counts.detected;
  j["sdc"] = s.counts.sdc;
  j["fc_percent"] = format_fc_percent(s.fc());
  return j;
}

Stratum stratum_from_json(const nlohmann::json& j) {
  Stratum s;
  s.polarity = j.at("polarity").get<std::string>();
  s.mode = j.at("mode").get<std::string>();
  std::string fs = j.at("fault_size").get<std::string>();
  s.fault_size = fs == "ALL" ? 0 : std::stoi(fs);
  s.trials = j.at("trials").get<int64_t>();
  s.counts.masked = j.at("masked").get<int64_t>();
  s.counts.detected = j.at("detected").get<int64_t>();
  s.counts.sdc = j.at("sdc").get<int64_t>();
  return s;
}

}  // namespace

std::string to_summary_csv(const CoverageReport& rep) {
  std::ostringstream os;
  os << "polarity,mode,fault_size,trials,masked,detected,sdc,fc_percent\n";
  for (const Stratum& s : rep.strata) append_row(os, s);
  append_row(os, rep.aggregate());
  return os.str();
}

std::string to_summary_json(const CoverageReport& rep) {
  nlohmann::json j;
  j["meta"]["seed"] = rep.seed;
  j["meta"]["netlist_hash"] = rep.netlist_hash;
  j["meta"]["site_count"] = rep.site_count;
  j["meta"]["tool_version"] = rep.tool_version;
  j["meta"]["polarity"] = rep.aggregate_polarity;
  j["meta"]["mode"] = rep.mode;
  j["strata"] = nlohmann::json::array();
  for (const Stratum& s : rep.strata) j["strata"].push_back(stratum_json(s));
  j["aggregate"] = stratum_json(rep.aggregate());
  return j.dump(2) + "\n";
}

CoverageReport from_summary_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  CoverageReport rep;
  rep.seed = j.at("meta").at("seed").get<uint64_t>();
  rep.netlist_hash = j.at("meta").at("netlist_hash").get<std::string>();
  rep.site_count = j.at("meta").at("site_count").get<uint64_t>();
  rep.tool_version = j.at("meta").at("tool_version").get<std::string>();
  rep.aggregate_polarity = j.at("meta").at("polarity").get<std::string>();
  rep.mode = j.at("meta").at("mode").get<std::string>();
  for (const auto& row : j.at("strata")) {
    rep.strata.push_back(stratum_from_json(row));
  }
  return rep;
}

CoverageReport from_summary_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) ||
      line != "polarity,mode,fault_size,trials,masked,detected,sdc,fc_percent") {
    throw std::invalid_argument("summary csv: bad header");
  }
  CoverageReport rep;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        f.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    f.push_back(cur);
    if (f.size() != 8) throw std::invalid_argument("summary csv: bad row");
    Stratum s;
    s.polarity = f[0];
    s.mode = f[1];
    s.fault_size = f[2] == "ALL" ? 0 : std::stoi(f[2]);
    s.trials = std::stoll(f[3]);
    s.counts.masked = std::stoll(f[4]);
    s.counts.detected = std::stoll(f[5]);
    s.counts.sdc = std::stoll(f[6]);
    if (s.fault_size == 0) {
      rep.aggregate_polarity = s.polarity;
      rep.mode = s.mode;
      continue;  // aggregate row is derived, not stored
    }
    rep.strata.push_back(std::move(s));
  }
  return rep;
}

std::string to_trial_csv(const DualRailNetlist& d,
                         const std::vector<TrialRecord>& rows) {
  auto sites = enumerate_fault_sites(d);
  std::ostringstream os;
  os << "trial,fault_size,input_hex,sites,outcome\n";
  char hex[32];
  for (const TrialRecord& r : rows) {
    snprintf(hex, sizeof hex, "%llx", static_cast<unsigned long long>(r.input));
    os << r.trial << ',' << r.fault_size << ',' << hex << ',';
    for (size_t i = 0; i < r.sites.size(); ++i) {
      if (i) os << ';';
      os << site_name(d, sites[r.sites[i]]);
    }
    os << ',' << to_string(r.outcome) << '\n';
  }
  return os.str();
}

}  // namespace scpdp
