#include "hmimo/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hmimo/rng.hpp"

namespace hmimo {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string trials_csv(const std::vector<TrialResult>& trials, int num_users) {
  std::ostringstream out;
  out << "trial,seed,case,N,K,final_mse,iterations,degenerate,sum_rate_se,throughput";
  for (int i = 0; i < num_users; ++i) out << ",sinr_" << i;
  out << "\n";
  for (const auto& t : trials) {
    out << t.trial_index << ',' << t.seed << ',' << to_string(t.channel_case) << ','
        << t.elements_n << ',' << t.elements_k << ',' << format_double(t.final_mse) << ','
        << t.iterations << ',' << (t.degenerate ? 1 : 0) << ',' << format_double(t.sum_rate_se)
        << ',' << format_double(t.throughput);
    for (int i = 0; i < num_users; ++i)
      out << ',' << format_double(i < t.per_user_sinr.size() ? t.per_user_sinr(i) : 0.0);
    out << "\n";
  }
  return out.str();
}

namespace {

void append_cell_row(std::ostringstream& out, const SweepCell& cell) {
  out << to_string(cell.channel_case) << ',' << cell.elements << ',' << cell.elements << ','
      << cell.trial_count << ',' << format_double(cell.mean_sum_rate_se) << ','
      << format_double(cell.std_sum_rate_se) << ',' << format_double(cell.mean_throughput)
      << "\n";
}

}  // namespace

std::string summary_csv(const SweepCell& cell) {
  std::ostringstream out;
  out << "case,N,K,trials,mean_sum_rate_se,std_sum_rate_se,mean_throughput\n";
  append_cell_row(out, cell);
  return out.str();
}

std::string sweep_csv(const SweepResult& sweep) {
  std::ostringstream out;
  out << "case,N,K,trials,mean_sum_rate_se,std_sum_rate_se,mean_throughput\n";
  for (const auto& cell : sweep.cells) append_cell_row(out, cell);
  return out.str();
}

namespace {

const char* case_color(ChannelCase c) {
  switch (c) {
    case ChannelCase::I: return "#1f77b4";
    case ChannelCase::II: return "#d62728";
    case ChannelCase::III: return "#2ca02c";
    case ChannelCase::IV: return "#9467bd";
  }
  return "#000000";
}

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string render_sweep_svg(const SweepResult& sweep) {
  const double width = 760, height = 520;
  const double left = 80, right = 30, top = 40, bottom = 70;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  std::set<int> n_set;
  std::vector<ChannelCase> case_order;
  double y_max = 1e-9;
  for (const auto& cell : sweep.cells) {
    n_set.insert(cell.elements);
    if (std::find(case_order.begin(), case_order.end(), cell.channel_case) == case_order.end())
      case_order.push_back(cell.channel_case);
    y_max = std::max(y_max, cell.mean_sum_rate_se + cell.std_sum_rate_se);
  }
  std::vector<int> n_values(n_set.begin(), n_set.end());
  double x_min = n_values.front(), x_max = n_values.back();
  if (x_min == x_max) {
    x_min -= 1;
    x_max += 1;
  }
  y_max *= 1.05;

  auto sx = [&](double n) { return left + (n - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double v) { return top + plot_h - v / y_max * plot_h; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes.
  out << "<line x1=\"" << svg_num(left) << "\" y1=\"" << svg_num(top + plot_h) << "\" x2=\""
      << svg_num(left + plot_w) << "\" y2=\"" << svg_num(top + plot_h)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << svg_num(left) << "\" y1=\"" << svg_num(top) << "\" x2=\""
      << svg_num(left) << "\" y2=\"" << svg_num(top + plot_h) << "\" stroke=\"black\"/>\n";

  for (int n : n_values) {
    double x = sx(n);
    out << "<line x1=\"" << svg_num(x) << "\" y1=\"" << svg_num(top + plot_h) << "\" x2=\""
        << svg_num(x) << "\" y2=\"" << svg_num(top + plot_h + 6) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << svg_num(x) << "\" y=\"" << svg_num(top + plot_h + 22)
        << "\" text-anchor=\"middle\" font-size=\"13\">" << n << "</text>\n";
  }
  for (int t = 0; t <= 5; ++t) {
    double v = y_max * t / 5.0;
    double y = sy(v);
    out << "<line x1=\"" << svg_num(left - 6) << "\" y1=\"" << svg_num(y) << "\" x2=\""
        << svg_num(left) << "\" y2=\"" << svg_num(y) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << svg_num(left - 10) << "\" y=\"" << svg_num(y + 4)
        << "\" text-anchor=\"end\" font-size=\"13\">" << format_double(v) << "</text>\n";
  }
  out << "<text x=\"" << svg_num(left + plot_w / 2) << "\" y=\"" << svg_num(height - 18)
      << "\" text-anchor=\"middle\" font-size=\"15\">Number of elements (N = K)</text>\n";
  out << "<text x=\"22\" y=\"" << svg_num(top + plot_h / 2)
      << "\" text-anchor=\"middle\" font-size=\"15\" transform=\"rotate(-90 22 "
      << svg_num(top + plot_h / 2) << ")\">Mean sum-rate [bit/s/Hz]</text>\n";

  // Curves with std error bars, one polyline per case.
  for (ChannelCase c : case_order) {
    std::map<int, const SweepCell*> by_n;
    for (const auto& cell : sweep.cells)
      if (cell.channel_case == c) by_n[cell.elements] = &cell;
    std::ostringstream points;
    for (const auto& [n, cell] : by_n) {
      double x = sx(n), y = sy(cell->mean_sum_rate_se);
      points << svg_num(x) << ',' << svg_num(y) << ' ';
      double lo = sy(std::max(0.0, cell->mean_sum_rate_se - cell->std_sum_rate_se));
      double hi = sy(cell->mean_sum_rate_se + cell->std_sum_rate_se);
      out << "<line x1=\"" << svg_num(x) << "\" y1=\"" << svg_num(lo) << "\" x2=\"" << svg_num(x)
          << "\" y2=\"" << svg_num(hi) << "\" stroke=\"" << case_color(c) << "\"/>\n"
          << "<circle cx=\"" << svg_num(x) << "\" cy=\"" << svg_num(y) << "\" r=\"3\" fill=\""
          << case_color(c) << "\"/>\n";
    }
    out << "<polyline fill=\"none\" stroke=\"" << case_color(c) << "\" stroke-width=\"2\" points=\""
        << points.str() << "\"/>\n";
  }

  // Legend.
  double ly = top + 8;
  for (ChannelCase c : case_order) {
    out << "<line x1=\"" << svg_num(left + 14) << "\" y1=\"" << svg_num(ly + 4) << "\" x2=\""
        << svg_num(left + 44) << "\" y2=\"" << svg_num(ly + 4) << "\" stroke=\"" << case_color(c)
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << svg_num(left + 50) << "\" y=\"" << svg_num(ly + 8)
        << "\" font-size=\"13\">Case " << to_string(c) << "</text>\n";
    ly += 20;
  }

  out << "</svg>\n";
  return out.str();
}

std::string run_id(const ScenarioConfig& config) {
  std::string doc = dump_scenario(config);
  std::uint64_t h = splitmix64(config.master_seed);
  for (char ch : doc) h = hash_combine(h, static_cast<std::uint64_t>(static_cast<unsigned char>(ch)));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string manifest_json(const ScenarioConfig& config,
                          const std::vector<std::string>& output_names) {
  nlohmann::json j;
  j["tool"] = "hmimo-sim";
  j["tool_version"] = kToolVersion;
  j["run_id"] = run_id(config);
  j["master_seed"] = config.master_seed;

  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  j["created_utc"] = stamp;

  nlohmann::json cfg = nlohmann::json::object();
  std::istringstream doc(dump_scenario(config));
  std::string line;
  while (std::getline(doc, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq - 1);
    std::string value = line.substr(eq + 2);
    cfg[key] = value;
  }
  j["config"] = cfg;
  j["outputs"] = output_names;
  return j.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace hmimo
