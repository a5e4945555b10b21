//------------------------------------------------------------------------------
//
//   Copyright 2025-2026 the semauction authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "semauction/io.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace semauction::io {

namespace {

constexpr char kParamsMagic[] = "semauction-params-v1";

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_metric(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

double parse_double_token(std::string_view token, const char* what) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw IoError(std::string("bad ") + what + " value '" + std::string(token) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path parent = path.parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    fs::create_directories(parent, ec);
    if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return buffer.str();
}

std::string dataset_to_csv(const auction::BidMatrix& bids) {
  std::string out;
  for (int c = 0; c < bids.cols; ++c) {
    if (c > 0) out += ',';
    out += "bid_" + std::to_string(c);
  }
  out += '\n';
  for (int r = 0; r < bids.rows; ++r) {
    for (int c = 0; c < bids.cols; ++c) {
      if (c > 0) out += ',';
      out += format_full(bids.at(r, c));
    }
    out += '\n';
  }
  return out;
}

auction::BidMatrix dataset_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("dataset CSV: missing header");
  const auto header = split(trim(line), ',');
  const int cols = static_cast<int>(header.size());
  for (int c = 0; c < cols; ++c) {
    if (trim(header[static_cast<std::size_t>(c)]) != "bid_" + std::to_string(c))
      throw IoError("dataset CSV: unexpected header column '" +
                    std::string(header[static_cast<std::size_t>(c)]) + "'");
  }

  std::vector<double> values;
  int rows = 0;
  while (std::getline(in, line)) {
    const std::string_view trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto fields = split(trimmed, ',');
    if (static_cast<int>(fields.size()) != cols)
      throw IoError("dataset CSV: row " + std::to_string(rows + 2) + " has " +
                    std::to_string(fields.size()) + " fields, expected " + std::to_string(cols));
    for (const auto field : fields) values.push_back(parse_double_token(trim(field), "bid"));
    ++rows;
  }
  if (rows == 0) throw IoError("dataset CSV: no data rows");

  auction::BidMatrix bids(rows, cols);
  bids.data = std::move(values);
  return bids;
}

void save_dataset_csv(const std::filesystem::path& path, const auction::BidMatrix& bids) {
  write_file_atomic(path, dataset_to_csv(bids));
}

auction::BidMatrix load_dataset_csv(const std::filesystem::path& path) {
  return dataset_from_csv(read_file(path));
}

std::string params_to_text(const auction::AuctionNetParams& params) {
  params.validate();
  std::string out = std::string(kParamsMagic) + " " + std::to_string(params.n_bidders) + " " +
                    std::to_string(params.groups) + " " + std::to_string(params.lines_per_group) + "\n";
  for (std::size_t i = 0; i < params.size(); ++i)
    out += format_full(params.log_w[i]) + " " + format_full(params.beta[i]) + "\n";
  return out;
}

auction::AuctionNetParams params_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string magic;
  int n = 0, q = 0, s = 0;
  if (!(in >> magic >> n >> q >> s) || magic != kParamsMagic)
    throw IoError("parameter file: bad header (expected '" + std::string(kParamsMagic) + " N Q S')");
  if (n < 1 || q < 1 || s < 1) throw IoError("parameter file: invalid shape");

  auction::AuctionNetParams params = auction::AuctionNetParams::identity(n, q, s);
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!(in >> params.log_w[i] >> params.beta[i]))
      throw IoError("parameter file: truncated at entry " + std::to_string(i));
  }
  double extra = 0.0;
  if (in >> extra) throw IoError("parameter file: trailing data");
  return params;
}

void save_params(const std::filesystem::path& path, const auction::AuctionNetParams& params) {
  write_file_atomic(path, params_to_text(params));
}

auction::AuctionNetParams load_params(const std::filesystem::path& path) {
  return params_from_text(read_file(path));
}

std::string history_to_csv(std::span<const double> dl_revenue, double spa_revenue) {
  std::string out = "iteration,dl_revenue,spa_revenue\n";
  for (std::size_t i = 0; i < dl_revenue.size(); ++i)
    out += std::to_string(i + 1) + "," + format_metric(dl_revenue[i]) + "," +
           format_metric(spa_revenue) + "\n";
  return out;
}

std::string revenue_experiment_to_csv(const experiments::RevenueExperimentResult& result) {
  if (result.dl_revenue_low_j.size() != result.dl_revenue_high_j.size())
    throw IoError("revenue experiment: preset histories differ in length");
  std::string out = "iteration,dl_rev_low_j,dl_rev_high_j,spa_low_j,spa_high_j\n";
  for (std::size_t i = 0; i < result.dl_revenue_low_j.size(); ++i)
    out += std::to_string(i + 1) + "," + format_metric(result.dl_revenue_low_j[i]) + "," +
           format_metric(result.dl_revenue_high_j[i]) + "," + format_metric(result.spa_revenue_low_j) +
           "," + format_metric(result.spa_revenue_high_j) + "\n";
  return out;
}

std::string sweep_to_csv(std::span<const experiments::MetricsRow> low_rows,
                         std::span<const experiments::MetricsRow> high_rows) {
  if (low_rows.size() != high_rows.size())
    throw IoError("sweep: preset tables differ in length");
  std::string out = "sweep_value,j_lo,j_hi,avg_bid,avg_highest_bid\n";
  auto emit = [&out](const experiments::MetricsRow& row, const double (&preset)[2]) {
    out += format_metric(row.sweep_value) + "," + format_metric(preset[0]) + "," +
           format_metric(preset[1]) + "," + format_metric(row.avg_bid) + "," +
           format_metric(row.avg_highest_bid) + "\n";
  };
  for (std::size_t i = 0; i < low_rows.size(); ++i) {
    emit(low_rows[i], experiments::kLowJPreset);
    emit(high_rows[i], experiments::kHighJPreset);
  }
  return out;
}

std::string render_line_chart_svg(std::string_view title, std::string_view x_label,
                                  std::string_view y_label, std::span<const ChartSeries> series) {
  constexpr double kWidth = 760, kHeight = 480;
  constexpr double kLeft = 70, kRight = 240, kTop = 40, kBottom = 55;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& s : series) {
    for (double v : s.x) {
      x_min = std::min(x_min, v);
      x_max = std::max(x_max, v);
    }
    for (double v : s.y) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  if (!(x_min <= x_max) || !(y_min <= y_max)) throw IoError("chart: no data points");
  if (x_max == x_min) x_max = x_min + 1.0;
  const double y_pad = (y_max == y_min) ? 0.5 : 0.08 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << title << "</text>\n";

  // axes + ticks
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    const double fx = x_min + (x_max - x_min) * t / kTicks;
    const double fy = y_min + (y_max - y_min) * t / kTicks;
    svg << "<line x1=\"" << px(fx) << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << px(fx) << "\" y2=\""
        << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px(fx) << "\" y=\"" << kTop + plot_h + 20 << "\" text-anchor=\"middle\">"
        << format_metric(std::round(fx * 1e4) / 1e4) << "</text>\n"
        << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << kLeft << "\" y2=\""
        << py(fy) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(fy) + 4 << "\" text-anchor=\"end\">"
        << format_metric(std::round(fy * 1e4) / 1e4) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n"
      << "<text x=\"18\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  double legend_y = kTop + 10;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw IoError("chart: series '" + s.label + "' has mismatched lengths");
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
    if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
    svg << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) svg << px(s.x[i]) << "," << py(s.y[i]) << " ";
    svg << "\"/>\n";

    const double lx = kLeft + plot_w + 14;
    svg << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 26 << "\" y2=\"" << legend_y
        << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
    if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
    svg << "/>\n<text x=\"" << lx + 32 << "\" y=\"" << legend_y + 4 << "\">" << s.label << "</text>\n";
    legend_y += 18;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string sweep_chart_svg(std::string_view parameter_name,
                            std::span<const experiments::MetricsRow> low_rows,
                            std::span<const experiments::MetricsRow> high_rows) {
  auto series_of = [](std::span<const experiments::MetricsRow> rows, bool highest) {
    ChartSeries s;
    for (const auto& row : rows) {
      s.x.push_back(row.sweep_value);
      s.y.push_back(highest ? row.avg_highest_bid : row.avg_bid);
    }
    return s;
  };
  std::vector<ChartSeries> series;
  series.push_back(series_of(low_rows, true));
  series.back().label = "avg highest bid, j in [0.1,0.4]";
  series.back().color = "crimson";
  series.push_back(series_of(low_rows, false));
  series.back().label = "avg bid, j in [0.1,0.4]";
  series.back().color = "crimson";
  series.back().dashed = true;
  series.push_back(series_of(high_rows, true));
  series.back().label = "avg highest bid, j in [0.6,0.9]";
  series.back().color = "royalblue";
  series.push_back(series_of(high_rows, false));
  series.back().label = "avg bid, j in [0.6,0.9]";
  series.back().color = "royalblue";
  series.back().dashed = true;

  const std::string title = "Bid statistics vs " + std::string(parameter_name);
  return render_line_chart_svg(title, parameter_name, "bid", series);
}

}  // namespace semauction::io
