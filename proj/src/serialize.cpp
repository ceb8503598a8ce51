#include "optlab/serialize.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace optlab {

json params_to_json(const HardFamilyParams& p) {
  json j;
  j["family_kind"] = to_string(p.kind);
  j["L"] = p.L;
  j["mu"] = p.mu;
  j["sigma"] = p.sigma;
  j["tau"] = p.tau;
  j["Delta"] = p.Delta;
  j["D"] = p.D;
  j["d0"] = p.d0;
  j["d"] = p.d;
  j["m"] = p.m;
  j["a"] = p.a;
  j["centers"] = p.centers;
  return j;
}

HardFamilyParams params_from_json(const json& j) {
  HardFamilyParams p;
  p.kind = family_kind_from_string(j.at("family_kind").get<std::string>());
  p.L = j.at("L").get<double>();
  p.mu = j.at("mu").get<double>();
  p.sigma = j.at("sigma").get<double>();
  p.tau = j.at("tau").get<double>();
  p.Delta = j.at("Delta").get<double>();
  p.D = j.at("D").get<double>();
  p.d0 = j.at("d0").get<int>();
  p.d = j.at("d").get<int>();
  p.m = j.at("m").get<int>();
  p.a = j.at("a").get<double>();
  p.centers = j.at("centers").get<std::vector<Vec>>();
  return p;
}

json report_to_json(const CheckReport& r) {
  json j;
  j["property"] = r.property;
  j["passed"] = r.passed;
  j["worst_violation"] = r.worst_violation;
  j["witness"] = r.witness;
  j["samples_used"] = r.samples_used;
  return j;
}

json game_to_json(const GameResult& g) {
  json j;
  j["trials"] = g.trials;
  j["avg_gap"] = g.avg_gap;
  j["misid_rate"] = g.misid_rate;
  json per = json::array();
  for (const auto& t : g.per_trial) {
    per.push_back({{"instance", t.instance},
                   {"output", t.output},
                   {"gap", t.gap},
                   {"identified", t.identified},
                   {"failed", t.failed},
                   {"message", t.message}});
  }
  j["per_trial"] = per;
  return j;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

json parse_scalar(const std::string& tok) {
  if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"')
    return tok.substr(1, tok.size() - 2);
  if (tok == "true") return true;
  if (tok == "false") return false;
  bool looks_integral = tok.find_first_of(".eE") == std::string::npos;
  if (looks_integral) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(tok, &pos);
      if (pos == tok.size()) return v;
    } catch (...) {
    }
  }
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos == tok.size()) return v;
  } catch (...) {
  }
  throw std::runtime_error("config: cannot parse value '" + tok + "'");
}

json parse_value(const std::string& raw) {
  std::string v = trim(raw);
  if (v.empty()) throw std::runtime_error("config: empty value");
  if (v.front() == '[') {
    if (v.back() != ']') throw std::runtime_error("config: unterminated array");
    json arr = json::array();
    std::string inner = v.substr(1, v.size() - 2);
    std::string tok;
    bool instr = false;
    for (char c : inner) {
      if (c == '"') instr = !instr;
      if (c == ',' && !instr) {
        if (!trim(tok).empty()) arr.push_back(parse_scalar(trim(tok)));
        tok.clear();
      } else {
        tok += c;
      }
    }
    if (!trim(tok).empty()) arr.push_back(parse_scalar(trim(tok)));
    return arr;
  }
  return parse_scalar(v);
}

}  // namespace

json toml_lite_parse(const std::string& text) {
  json root = json::object();
  json* section = &root;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comments outside strings
    std::string clean;
    bool instr = false;
    for (char c : line) {
      if (c == '"') instr = !instr;
      if (c == '#' && !instr) break;
      clean += c;
    }
    clean = trim(clean);
    if (clean.empty()) continue;
    if (clean.front() == '[') {
      if (clean.back() != ']')
        throw std::runtime_error("config line " + std::to_string(lineno) + ": bad section");
      std::string name = trim(clean.substr(1, clean.size() - 2));
      section = &root[name];
      if (section->is_null()) *section = json::object();
      continue;
    }
    std::size_t eq = clean.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(clean.substr(0, eq));
    (*section)[key] = parse_value(clean.substr(eq + 1));
  }
  return root;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml")
    return toml_lite_parse(ss.str());
  return json::parse(ss.str());
}

}  // namespace optlab
