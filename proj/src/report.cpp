// Copyright 2026 The fpa-regret Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "fpa/bench.hpp"

namespace fpa {

namespace {

constexpr double kRegretFloor = 1e-6;

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string file_stem(const GroupReport& g) {
  std::string s = g.env_name + "__" + g.feedback + "__" + g.policy;
  for (char& c : s) {
    const bool keep =
        std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    if (!keep) c = '_';
  }
  return s;
}

}  // namespace

std::vector<GroupReport> summarize(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::map<std::int64_t, std::vector<double>>> grouped;
  for (const ResultRow& r : rows) {
    grouped[{r.env_name, r.feedback, r.policy}][r.horizon].push_back(r.regret);
  }
  std::vector<GroupReport> out;
  for (const auto& [key, by_horizon] : grouped) {
    GroupReport g;
    std::tie(g.env_name, g.feedback, g.policy) = key;
    std::vector<double> hs;
    std::vector<double> means;
    for (const auto& [horizon, regrets] : by_horizon) {
      HorizonStats s;
      s.horizon = horizon;
      s.count = static_cast<int>(regrets.size());
      double sum = 0.0;
      for (double x : regrets) sum += x;
      s.mean = sum / s.count;
      double ss = 0.0;
      for (double x : regrets) ss += (x - s.mean) * (x - s.mean);
      s.stddev = s.count > 1 ? std::sqrt(ss / (s.count - 1)) : 0.0;
      g.horizons.push_back(s);
      hs.push_back(static_cast<double>(horizon));
      means.push_back(std::max(s.mean, kRegretFloor));
    }
    if (hs.size() >= 4) g.fit = slope_estimate(hs, means);
    out.push_back(std::move(g));
  }
  return out;
}

std::string render_svg(const GroupReport& g) {
  constexpr double kWidth = 640;
  constexpr double kHeight = 420;
  constexpr double kLeft = 70;
  constexpr double kRight = 20;
  constexpr double kTop = 40;
  constexpr double kBottom = 50;

  std::vector<double> xs;
  double ylo = 1e300;
  double yhi = -1e300;
  for (const HorizonStats& s : g.horizons) {
    xs.push_back(std::log2(static_cast<double>(s.horizon)));
    const double lo = std::max(s.mean - s.stddev, std::max(s.mean, kRegretFloor) / 4);
    const double hi = s.mean + s.stddev;
    ylo = std::min(ylo, std::log2(std::max(lo, kRegretFloor)));
    yhi = std::max(yhi, std::log2(std::max(hi, kRegretFloor)));
  }
  double xlo = *std::min_element(xs.begin(), xs.end());
  double xhi = *std::max_element(xs.begin(), xs.end());
  if (xhi - xlo < 1) xhi = xlo + 1;
  ylo = std::floor(ylo);
  yhi = std::ceil(yhi);
  if (yhi - ylo < 1) yhi = ylo + 1;
  xlo -= 0.25;
  xhi += 0.25;

  auto px = [&](double lx) {
    return kLeft + (lx - xlo) / (xhi - xlo) * (kWidth - kLeft - kRight);
  };
  auto py = [&](double ly) {
    return kHeight - kBottom - (ly - ylo) / (yhi - ylo) * (kHeight - kTop - kBottom);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"20\" font-size=\"14\">"
      << xml_escape(g.policy + " / " + g.env_name + " / " + g.feedback) << "</text>\n";
  // Axes and ticks at integer powers of two.
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
      << kWidth - kRight << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  for (int k = static_cast<int>(std::ceil(xlo)); k <= static_cast<int>(xhi); ++k) {
    svg << "<text x=\"" << fixed(px(k), 1) << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\">2^" << k << "</text>\n";
  }
  for (int k = static_cast<int>(ylo); k <= static_cast<int>(yhi); ++k) {
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << fixed(py(k) + 4, 1)
        << "\" text-anchor=\"end\">2^" << k << "</text>\n";
  }
  svg << "<text x=\"" << fixed((kLeft + kWidth - kRight) / 2, 1) << "\" y=\""
      << kHeight - 12 << "\" text-anchor=\"middle\">horizon T</text>\n";
  svg << "<text x=\"16\" y=\"" << fixed((kTop + kHeight - kBottom) / 2, 1)
      << "\" transform=\"rotate(-90 16 " << fixed((kTop + kHeight - kBottom) / 2, 1)
      << ")\" text-anchor=\"middle\">mean regret</text>\n";

  // Mean regret with +-1 std bars.
  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < g.horizons.size(); ++i) {
    const double y = std::log2(std::max(g.horizons[i].mean, kRegretFloor));
    svg << fixed(px(xs[i]), 2) << "," << fixed(py(y), 2) << " ";
  }
  svg << "\"/>\n";
  for (std::size_t i = 0; i < g.horizons.size(); ++i) {
    const HorizonStats& s = g.horizons[i];
    const double y = std::log2(std::max(s.mean, kRegretFloor));
    const double lo = std::log2(std::max(s.mean - s.stddev, kRegretFloor));
    const double hi = std::log2(std::max(s.mean + s.stddev, kRegretFloor));
    svg << "<line x1=\"" << fixed(px(xs[i]), 2) << "\" y1=\""
        << fixed(py(std::max(lo, ylo)), 2) << "\" x2=\"" << fixed(px(xs[i]), 2)
        << "\" y2=\"" << fixed(py(std::min(hi, yhi)), 2) << "\" stroke=\"#1f77b4\"/>\n";
    svg << "<circle cx=\"" << fixed(px(xs[i]), 2) << "\" cy=\"" << fixed(py(y), 2)
        << "\" r=\"3.5\" fill=\"#1f77b4\"/>\n";
  }
  if (g.fit) {
    const double x0 = xs.front();
    const double x1 = xs.back();
    svg << "<line x1=\"" << fixed(px(x0), 2) << "\" y1=\""
        << fixed(py(g.fit->intercept + g.fit->slope * x0), 2) << "\" x2=\""
        << fixed(px(x1), 2) << "\" y2=\""
        << fixed(py(g.fit->intercept + g.fit->slope * x1), 2)
        << "\" stroke=\"#d62728\" stroke-dasharray=\"6 4\"/>\n";
    svg << "<text x=\"" << kWidth - kRight - 4 << "\" y=\"" << kTop + 4
        << "\" text-anchor=\"end\" fill=\"#d62728\">slope " << fixed(g.fit->slope, 3)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_summary_table(const std::vector<GroupReport>& groups) {
  std::ostringstream out;
  out << "policy | environment | feedback | horizons | slope | intercept | "
         "residual_rms\n";
  for (const GroupReport& g : groups) {
    out << g.policy << " | " << g.env_name << " | " << g.feedback << " | "
        << g.horizons.size() << " | ";
    if (g.fit) {
      out << fixed(g.fit->slope, 3) << " | " << fixed(g.fit->intercept, 3) << " | "
          << fixed(g.fit->residual_rms, 4);
    } else {
      out << "- | - | -";
    }
    out << "\n";
    for (const HorizonStats& s : g.horizons) {
      out << "    T=" << s.horizon << "  n=" << s.count << "  mean=" << fixed(s.mean, 3)
          << "  std=" << fixed(s.stddev, 3) << "\n";
    }
  }
  return out.str();
}

std::string write_report(const std::vector<ResultRow>& rows, const std::string& out_dir,
                         std::ostream& warnings) {
  if (rows.empty()) throw std::runtime_error("report: no result rows");
  std::vector<GroupReport> groups = summarize(rows);
  std::filesystem::create_directories(out_dir);
  for (const GroupReport& g : groups) {
    if (!g.fit) {
      warnings << "warning: " << g.policy << " / " << g.env_name << " / " << g.feedback
               << " has " << g.horizons.size() << " horizons (need 4); skipped\n";
      continue;
    }
    const std::string path =
        (std::filesystem::path(out_dir) / (file_stem(g) + ".svg")).string();
    std::ofstream svg(path);
    if (!svg) throw std::runtime_error("cannot write " + path);
    svg << render_svg(g);
  }
  std::vector<GroupReport> fitted;
  std::copy_if(groups.begin(), groups.end(), std::back_inserter(fitted),
               [](const GroupReport& g) { return g.fit.has_value(); });
  const std::string table = render_summary_table(fitted);
  const std::string path = (std::filesystem::path(out_dir) / "summary.txt").string();
  std::ofstream summary(path);
  if (!summary) throw std::runtime_error("cannot write " + path);
  summary << table;
  return table;
}

}  // namespace fpa
