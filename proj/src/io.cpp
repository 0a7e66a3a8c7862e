#include "wb/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wb {

std::string format17(double x) {
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

void dump17_impl(const nlohmann::json& j, std::string& out, int indent,
                 int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + nlohmann::json(it.key()).dump() + ": ";
        dump17_impl(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump17_impl(el, out, indent, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      double v = j.get<double>();
      if (std::isfinite(v))
        out += format17(v);
      else
        out += nlohmann::json(format17(v)).dump();
      return;
    }
    default:
      out += j.dump();
  }
}

struct ConfigData {
  std::map<std::string, std::string> top;
  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has(const std::string& sec, const std::string& key) const {
    if (sec.empty()) return top.count(key) > 0;
    auto it = sections.find(sec);
    return it != sections.end() && it->second.count(key) > 0;
  }
  std::string get(const std::string& sec, const std::string& key) const {
    const auto& m = sec.empty() ? top : sections.at(sec);
    auto it = m.find(key);
    if (it == m.end())
      throw std::invalid_argument("kernel config: missing key '" + key +
                                  "' in section [" + sec + "]");
    return it->second;
  }
  double num(const std::string& sec, const std::string& key) const {
    return std::stod(get(sec, key));
  }
};

ConfigData read_config(std::istream& in) {
  ConfigData data;
  std::string line, section;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("kernel config: malformed section header");
      section = line.substr(1, line.size() - 2);
      data.sections[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("kernel config: expected key = value");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      data.top[key] = value;
    else
      data.sections[section][key] = value;
  }
  return data;
}

Profile parse_profile(const ConfigData& cfg, const std::string& sec,
                      double d, double w, double a, double W) {
  const std::string kind = cfg.get(sec, "profile");
  if (kind == "zero") return Profile::zero();
  if (kind == "constant") {
    if (cfg.has(sec, "value")) return Profile::constant(cfg.num(sec, "value"));
    if (sec == "well") return Profile::constant(-d);
    if (sec == "barrier") return Profile::constant(cfg.num(sec, "height"));
    return Profile::constant(0.0);
  }
  if (kind == "linear") {
    if (cfg.has(sec, "intercept"))
      return Profile::linear(cfg.num(sec, "intercept"), cfg.num(sec, "slope"));
    if (sec == "well") {
      if (!(w > 0.0))
        throw std::invalid_argument("linear well needs w > 0");
      return Profile::linear(-d, d / w);
    }
    if (sec == "barrier") {
      const double from = cfg.num(sec, "from"), to = cfg.num(sec, "to");
      const double slope = (to - from) / W;
      return Profile::linear(from - slope * a, slope);
    }
    throw std::invalid_argument("linear tail needs intercept/slope");
  }
  if (kind == "power") {
    if (cfg.has(sec, "offset"))
      return Profile::power(cfg.num(sec, "exponent"), cfg.num(sec, "offset"));
    if (sec == "well") return Profile::power(cfg.num(sec, "p"), -d);
    throw std::invalid_argument("power profile needs exponent/offset");
  }
  if (kind == "inverse-power")
    return Profile::inverse_power(cfg.num(sec, "c"), cfg.num(sec, "q"));
  throw std::invalid_argument("kernel config: unknown profile '" + kind + "'");
}

std::string profile_lines(const Profile& p) {
  std::ostringstream os;
  switch (p.kind) {
    case Profile::Kind::zero:
      os << "profile = zero\n";
      break;
    case Profile::Kind::constant:
      os << "profile = constant\nvalue = " << format17(p.a) << "\n";
      break;
    case Profile::Kind::linear:
      os << "profile = linear\nintercept = " << format17(p.a)
         << "\nslope = " << format17(p.b) << "\n";
      break;
    case Profile::Kind::power:
      os << "profile = power\nexponent = " << format17(p.a)
         << "\noffset = " << format17(p.b) << "\n";
      break;
    case Profile::Kind::inverse_power:
      os << "profile = inverse-power\nc = " << format17(p.a)
         << "\nq = " << format17(p.b) << "\n";
      break;
  }
  return os.str();
}

}  // namespace

std::string dump17(const nlohmann::json& j, int indent) {
  std::string out;
  dump17_impl(j, out, indent, 0);
  out += "\n";
  return out;
}

KernelPtr parse_kernel_config(std::istream& in) {
  ConfigData cfg = read_config(in);
  const std::string kind = cfg.get("", "kind");

  KernelPtr kernel;
  if (kind == "toy") {
    kernel = make_toy(cfg.num("", "w"));
  } else if (kind == "power-law") {
    const double p = cfg.num("", "p"), d = cfg.num("", "d"),
                 a = cfg.num("", "a");
    double height = 0.0, width = 0.0;
    if (cfg.sections.count("barrier")) {
      height = cfg.num("barrier", "height");
      width = cfg.num("barrier", "width");
    }
    Profile tail = Profile::zero();
    if (cfg.sections.count("tail"))
      tail = parse_profile(cfg, "tail", d, 0.0, a, width);
    kernel = make_power_law(p, d, a, height, width, tail);
  } else if (kind == "well-barrier") {
    const double d = cfg.num("", "d"), w = cfg.num("", "w"),
                 a = cfg.num("", "a");
    const double height = cfg.num("barrier", "height");
    const double width = cfg.num("barrier", "width");
    Profile well = parse_profile(cfg, "well", d, w, a, width);
    Profile barrier = parse_profile(cfg, "barrier", d, w, a, width);
    Profile tail = cfg.sections.count("tail")
                       ? parse_profile(cfg, "tail", d, w, a, width)
                       : Profile::zero();
    kernel = make_well_barrier(d, w, a, height, width, well, barrier, tail);
  } else {
    throw std::invalid_argument("kernel config: unknown kind '" + kind + "'");
  }

  if (cfg.has("", "truncate"))
    kernel = truncate_kernel(kernel, cfg.num("", "truncate"));
  return kernel;
}

KernelPtr load_kernel_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open kernel config: " + path);
  return parse_kernel_config(in);
}

std::string kernel_config_string(const Kernel& kernel) {
  std::ostringstream os;
  const Kernel* k = &kernel;
  std::string truncate_line;
  if (const auto* tr = dynamic_cast<const TruncatedKernel*>(k)) {
    truncate_line = "truncate = " + format17(tr->r_cut()) + "\n";
    k = &tr->base();
  }

  if (const auto* toy = dynamic_cast<const ToyKernel*>(k)) {
    os << "kind = toy\nw = " << format17(toy->band_width()) << "\n"
       << truncate_line;
    return os.str();
  }
  if (const auto* pl = dynamic_cast<const PowerLawKernel*>(k)) {
    auto s = *pl->shape();
    os << "kind = power-law\np = " << format17(pl->exponent())
       << "\nd = " << format17(pl->depth())
       << "\na = " << format17(pl->well_end()) << "\n"
       << truncate_line;
    if (s.W > 0.0)
      os << "\n[barrier]\nheight = " << format17(s.barrier_height)
         << "\nwidth = " << format17(s.W) << "\n";
    os << "\n[tail]\n" << profile_lines(pl->tail_profile());
    return os.str();
  }
  if (const auto* wbk = dynamic_cast<const WellBarrierKernel*>(k)) {
    auto s = *wbk->shape();
    os << "kind = well-barrier\nd = " << format17(s.d)
       << "\nw = " << format17(s.w) << "\na = " << format17(s.a) << "\n"
       << truncate_line << "\n[well]\n"
       << profile_lines(wbk->well_profile()) << "\n[barrier]\nheight = "
       << format17(s.barrier_height) << "\nwidth = " << format17(s.W) << "\n"
       << profile_lines(wbk->barrier_profile()) << "\n[tail]\n"
       << profile_lines(wbk->tail_profile());
    return os.str();
  }
  throw std::invalid_argument("cannot serialize this kernel type");
}

void save_grid_text(const GridDensity& density, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << density.dim() << " " << format17(density.origin()[0]);
  if (density.dim() == 2) out << " " << format17(density.origin()[1]);
  out << " " << format17(density.h()) << " " << density.counts()[0];
  if (density.dim() == 2) out << " " << density.counts()[1];
  out << "\n";
  const auto& v = density.values();
  for (std::size_t i = 0; i < v.size(); ++i)
    out << format17(v[i]) << ((i + 1) % 16 == 0 ? "\n" : " ");
  out << "\n";
}

GridDensity load_grid_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open density file: " + path);
  int dim;
  if (!(in >> dim)) throw std::invalid_argument("density file: bad header");
  std::array<double, 2> origin{0.0, 0.0};
  std::array<int, 2> counts{0, 1};
  double h;
  in >> origin[0];
  if (dim == 2) in >> origin[1];
  in >> h >> counts[0];
  if (dim == 2) in >> counts[1];
  if (!in) throw std::invalid_argument("density file: bad header");
  std::vector<double> values(static_cast<std::size_t>(counts[0]) *
                             std::max(counts[1], 1));
  for (auto& v : values)
    if (!(in >> v)) throw std::invalid_argument("density file: short data");
  return GridDensity(dim, origin, h, counts, std::move(values));
}

void save_grid_csv(const GridDensity& density, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (density.dim() == 1) {
    out << "i,x,value\n";
    for (int i = 0; i < density.size(); ++i)
      out << i << "," << format17(density.cell_center(i)[0]) << ","
          << format17(density.value(i)) << "\n";
  } else {
    out << "i,j,x,y,value\n";
    for (int idx = 0; idx < density.size(); ++idx) {
      auto c = density.cell_center(idx);
      out << idx % density.counts()[0] << "," << idx / density.counts()[0]
          << "," << format17(c[0]) << "," << format17(c[1]) << ","
          << format17(density.value(idx)) << "\n";
    }
  }
}

nlohmann::json to_json(const IntervalConfig& config) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& ab : config.intervals()) arr.push_back({ab[0], ab[1]});
  return arr;
}

IntervalConfig interval_config_from_json(const nlohmann::json& j) {
  const nlohmann::json& arr = j.is_object() && j.contains("intervals")
                                  ? j.at("intervals")
                                  : j;
  std::vector<std::array<double, 2>> iv;
  for (const auto& ab : arr)
    iv.push_back({ab.at(0).get<double>(), ab.at(1).get<double>()});
  return IntervalConfig(iv);
}

nlohmann::json to_json(const DropletConfig& config) {
  nlohmann::json balls = nlohmann::json::array();
  for (const auto& b : config.balls) {
    nlohmann::json center = nlohmann::json::array();
    center.push_back(b.center[0]);
    if (config.dim == 2) center.push_back(b.center[1]);
    balls.push_back({{"center", center}, {"radius", b.radius}});
  }
  return {{"dim", config.dim}, {"balls", balls}};
}

DropletConfig droplet_config_from_json(const nlohmann::json& j) {
  const int dim = j.at("dim").get<int>();
  std::vector<DropletConfig::Ball> balls;
  for (const auto& b : j.at("balls")) {
    DropletConfig::Ball ball;
    ball.center[0] = b.at("center").at(0).get<double>();
    if (dim == 2) ball.center[1] = b.at("center").at(1).get<double>();
    ball.radius = b.at("radius").get<double>();
    balls.push_back(ball);
  }
  return DropletConfig(dim, balls);
}

nlohmann::json to_json(const EnergyResult& result) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [i, j] : result.forbidden_pairs) pairs.push_back({i, j});
  nlohmann::json out = {
      {"method", result.method == EnergyMethod::grid_quadrature
                     ? "grid-quadrature"
                     : "exact-interval"},
      {"forbidden_pairs", pairs},
      {"h", result.h},
      {"mass", result.mass}};
  if (result.infinite())
    out["value"] = "+inf";
  else
    out["value"] = result.value;
  return out;
}

nlohmann::json to_json(const ELReport& report) {
  return {{"lambda", report.lambda},
          {"violations_on_zero_set", report.violations_on_zero_set},
          {"violations_on_one_set", report.violations_on_one_set},
          {"lambda_negative", report.lambda_negative},
          {"lambda_from_fallback", report.lambda_from_fallback}};
}

nlohmann::json to_json(const SeparationReport& report) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : report.offending_pairs)
    pairs.push_back({{"x1", {p.x1[0], p.x1[1]}},
                     {"x2", {p.x2[0], p.x2[1]}},
                     {"distance", p.distance},
                     {"pot1", p.pot1},
                     {"pot2", p.pot2}});
  return {{"offending_pairs", pairs}, {"empty", report.empty()}};
}

nlohmann::json to_json(const ToyMinimum& minimum) {
  const char* regime = minimum.regime == ToyRegime::wide
                           ? "wide"
                           : minimum.regime == ToyRegime::narrow ? "narrow"
                                                                 : "w-zero";
  nlohmann::json witness = nlohmann::json::array();
  if (minimum.interval_witness) witness = to_json(*minimum.interval_witness);
  nlohmann::json out = {{"m", minimum.m},
                        {"w", minimum.w},
                        {"dim", minimum.dim},
                        {"regime", regime},
                        {"value", minimum.value},
                        {"witness_intervals", witness},
                        {"conjecture_flag", minimum.conjecture}};
  if (minimum.droplet_witness)
    out["witness_droplets"] = to_json(*minimum.droplet_witness);
  return out;
}

nlohmann::json to_json(const ClusterSet& clusters) {
  return {{"clusters", clusters.clusters.size()},
          {"masses", clusters.masses},
          {"gap_threshold", clusters.gap_threshold}};
}

}  // namespace wb
